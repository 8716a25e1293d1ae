//! Grids of winners over a `(d, e)` rectangle, fast-vs-oracle sweeps, step
//! measurement and figure rendering.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::fast::{winner_closed, TextMode};
use crate::model::{classify_family, Cash, Family, Player, RuleSet};
use crate::oracle::{Oracle, ORACLE_STONE_LIMIT};
use crate::verdict::{RegimeCase, Verdict};

/// Inclusive range of bankrolls; serialized as `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u64; 2]", into = "[u64; 2]")]
pub struct Span {
    lo: u64,
    hi: u64,
}

impl Span {
    pub fn new(lo: u64, hi: u64) -> Result<Span> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok(Span { lo, hi })
    }

    pub fn lo(self) -> u64 {
        self.lo
    }

    pub fn hi(self) -> u64 {
        self.hi
    }

    pub fn len(self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, x: u64) -> bool {
        (self.lo..=self.hi).contains(&x)
    }

    pub fn iter(self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl TryFrom<[u64; 2]> for Span {
    type Error = Error;

    fn try_from([lo, hi]: [u64; 2]) -> Result<Span> {
        Span::new(lo, hi)
    }
}

impl From<Span> for [u64; 2] {
    fn from(s: Span) -> [u64; 2] {
        [s.lo, s.hi]
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridSource {
    #[default]
    Oracle,
    /// Closed forms, figure-consistent reading.
    Fast,
    /// Closed forms, strict reading.
    FastStrict,
}

impl GridSource {
    fn text_mode(self) -> Option<TextMode> {
        match self {
            GridSource::Oracle => None,
            GridSource::Fast => Some(TextMode::FigureConsistent),
            GridSource::FastStrict => Some(TextMode::Strict),
        }
    }
}

impl fmt::Display for GridSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridSource::Oracle => "oracle",
            GridSource::Fast => "fast",
            GridSource::FastStrict => "fast-strict",
        })
    }
}

impl FromStr for GridSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<GridSource> {
        match s {
            "oracle" => Ok(GridSource::Oracle),
            "fast" => Ok(GridSource::Fast),
            "fast-strict" => Ok(GridSource::FastStrict),
            _ => Err(Error::Parse(format!("unknown grid source {s:?}"))),
        }
    }
}

/// Winners over `d_range × e_range` for fixed rules and pile size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridDoc", into = "GridDoc")]
pub struct StaircaseGrid {
    rules: RuleSet,
    n: u64,
    d_range: Span,
    e_range: Span,
    source: GridSource,
    // d-major
    cells: Vec<Player>,
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    d: u64,
    e: u64,
    w: Player,
}

#[derive(Serialize, Deserialize)]
struct GridDoc {
    rules: RuleSet,
    n: u64,
    d_range: Span,
    e_range: Span,
    source: GridSource,
    cells: Vec<CellDoc>,
}

impl From<StaircaseGrid> for GridDoc {
    fn from(g: StaircaseGrid) -> GridDoc {
        let cells = g.iter().map(|(d, e, w)| CellDoc { d, e, w }).collect();
        GridDoc {
            rules: g.rules,
            n: g.n,
            d_range: g.d_range,
            e_range: g.e_range,
            source: g.source,
            cells,
        }
    }
}

impl TryFrom<GridDoc> for StaircaseGrid {
    type Error = Error;

    fn try_from(doc: GridDoc) -> Result<StaircaseGrid> {
        let cells = doc.cells.into_iter().map(|c| ((c.d, c.e), c.w)).collect();
        StaircaseGrid::from_cells(
            doc.rules,
            doc.n,
            doc.d_range,
            doc.e_range,
            doc.source,
            cells,
        )
    }
}

impl StaircaseGrid {
    /// Builds a grid from explicit cells; every point of the rectangle must
    /// appear exactly once.
    pub fn from_cells(
        rules: RuleSet,
        n: u64,
        d_range: Span,
        e_range: Span,
        source: GridSource,
        cells: Vec<((u64, u64), Player)>,
    ) -> Result<StaircaseGrid> {
        let mut slots = vec![None; (d_range.len() * e_range.len()) as usize];
        let width = e_range.len();
        for ((d, e), w) in cells {
            if !d_range.contains(d) || !e_range.contains(e) {
                return Err(Error::Parse(format!(
                    "cell ({d},{e}) outside {d_range} x {e_range}"
                )));
            }
            let slot = &mut slots[((d - d_range.lo) * width + (e - e_range.lo)) as usize];
            if slot.replace(w).is_some() {
                return Err(Error::Parse(format!("duplicate cell ({d},{e})")));
            }
        }
        let cells = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("grid is missing cells".into()))?;
        Ok(StaircaseGrid {
            rules,
            n,
            d_range,
            e_range,
            source,
            cells,
        })
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d_range(&self) -> Span {
        self.d_range
    }

    pub fn e_range(&self) -> Span {
        self.e_range
    }

    pub fn source(&self) -> GridSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, d: u64, e: u64) -> Option<Player> {
        if !self.d_range.contains(d) || !self.e_range.contains(e) {
            return None;
        }
        Some(
            self.cells
                [((d - self.d_range.lo) * self.e_range.len() + (e - self.e_range.lo)) as usize],
        )
    }

    /// Cells as `(d, e, winner)` sorted by `(d, e)`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64, Player)> + '_ {
        let width = self.e_range.len();
        self.cells.iter().enumerate().map(move |(i, &w)| {
            let i = i as u64;
            (self.d_range.lo + i / width, self.e_range.lo + i % width, w)
        })
    }

    fn same_frame(&self, other: &StaircaseGrid) -> bool {
        self.rules == other.rules
            && self.n == other.n
            && self.d_range == other.d_range
            && self.e_range == other.e_range
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,e,winner\n");
        for (d, e, w) in self.iter() {
            let _ = writeln!(out, "{d},{e},{}", w.number());
        }
        out
    }

    /// Parses `d,e,winner` rows; the ranges are the bounding box of the rows.
    pub fn from_csv(
        rules: RuleSet,
        n: u64,
        source: GridSource,
        text: &str,
    ) -> Result<StaircaseGrid> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some("d,e,winner") {
            return Err(Error::Parse("missing d,e,winner header".into()));
        }
        let mut cells = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [d, e, w] = fields[..] else {
                return Err(Error::Parse(format!("bad row {line:?}")));
            };
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad number {s:?}")))
            };
            let w: Player = w.parse()?;
            cells.push(((num(d)?, num(e)?), w));
        }
        let bounds = |f: fn(&((u64, u64), Player)) -> u64| -> Result<Span> {
            let lo = cells
                .iter()
                .map(f)
                .min()
                .ok_or_else(|| Error::Parse("no rows".into()))?;
            Span::new(lo, cells.iter().map(f).max().unwrap_or(lo))
        };
        let d_range = bounds(|c| c.0 .0)?;
        let e_range = bounds(|c| c.0 .1)?;
        StaircaseGrid::from_cells(rules, n, d_range, e_range, source, cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }

    pub fn from_json(text: &str) -> Result<StaircaseGrid> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Self-contained SVG: one square per cell, `d` across and `e` upwards.
    pub fn to_svg(&self) -> String {
        const CELL: u64 = 24;
        const MARGIN: u64 = 48;
        let (cols, rows) = (self.d_range.len(), self.e_range.len());
        let width = 2 * MARGIN + cols * CELL;
        let height = 2 * MARGIN + rows * CELL;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(
            s,
            "<title>A={} n={} ({})</title>",
            self.rules, self.n, self.source
        );
        for (d, e, w) in self.iter() {
            let x = MARGIN + (d - self.d_range.lo) * CELL;
            let y = MARGIN + (self.e_range.hi - e) * CELL;
            let fill = match w {
                Player::P1 => "green",
                Player::P2 => "red",
            };
            let _ = writeln!(
                s,
                r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="white"><title>d={d} e={e} P{}</title></rect>"#,
                w.number()
            );
        }
        let base = MARGIN + rows * CELL;
        for d in self.d_range.iter() {
            let x = MARGIN + (d - self.d_range.lo) * CELL + CELL / 2;
            let _ = writeln!(
                s,
                r#"<text x="{x}" y="{}" text-anchor="middle">{d}</text>"#,
                base + 14
            );
        }
        for e in self.e_range.iter() {
            let y = MARGIN + (self.e_range.hi - e) * CELL + CELL / 2 + 4;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{y}" text-anchor="end">{e}</text>"#,
                MARGIN - 4
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">d</text>"#,
            MARGIN + cols * CELL / 2,
            base + 34
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">e</text>"#,
            MARGIN - 30,
            MARGIN + rows * CELL / 2
        );
        s.push_str("</svg>\n");
        s
    }

    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Csv => self.to_csv(),
            RenderFormat::Json => self.to_json(),
            RenderFormat::Svg => self.to_svg(),
        }
    }

    /// Cells `(d, e)` won by Player 1 whose right or lower neighbour is not,
    /// contradicting monotonicity in the bankrolls.
    pub fn monotonicity_violations(&self) -> Vec<(u64, u64)> {
        self.iter()
            .filter(|&(d, e, w)| {
                w == Player::P1
                    && (self.get(d + 1, e) == Some(Player::P2)
                        || e.checked_sub(1).and_then(|e1| self.get(d, e1)) == Some(Player::P2))
            })
            .map(|(d, e, _)| (d, e))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Csv,
    Json,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<RenderFormat> {
        match s {
            "csv" => Ok(RenderFormat::Csv),
            "json" => Ok(RenderFormat::Json),
            "svg" => Ok(RenderFormat::Svg),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render_grid(grid: &StaircaseGrid, format: RenderFormat) -> String {
    grid.render(format)
}

fn check_stones(n: u64) -> Result<()> {
    if n > ORACLE_STONE_LIMIT {
        return Err(Error::StoneLimit {
            n,
            limit: ORACLE_STONE_LIMIT,
        });
    }
    Ok(())
}

fn prepared_oracle(rules: &RuleSet, n_max: u64, exec: Execution) -> Result<Oracle> {
    check_stones(n_max)?;
    let mut oracle = Oracle::with_execution(rules.clone(), exec);
    oracle.prepare(n_max);
    Ok(oracle)
}

fn oracle_at(oracle: &Oracle, n: u64, d: Cash, e: Cash) -> Player {
    oracle.lookup(n, d, e).expect("oracle prepared up to n")
}

/// Fills a grid from the chosen source. The fast sources fall back to the
/// oracle for unsupported families.
pub fn build_grid(
    rules: &RuleSet,
    n: u64,
    d_range: Span,
    e_range: Span,
    source: GridSource,
    exec: Execution,
) -> Result<StaircaseGrid> {
    let family = classify_family(rules);
    match source.text_mode() {
        Some(mode) if family.is_supported() => {
            let cells = fill(exec, d_range, e_range, |d, e| {
                winner_closed(family, n, d, e, mode)
                    .expect("supported family")
                    .winner
            });
            Ok(StaircaseGrid {
                rules: rules.clone(),
                n,
                d_range,
                e_range,
                source,
                cells,
            })
        }
        _ => {
            check_stones(n)?;
            let mut oracle = Oracle::with_execution(rules.clone(), exec);
            let mut grid = build_oracle_grid(&mut oracle, n, d_range, e_range, exec)?;
            grid.source = source;
            Ok(grid)
        }
    }
}

/// Oracle grid reusing `oracle`'s table, which is extended to `n` stones if needed.
pub fn build_oracle_grid(
    oracle: &mut Oracle,
    n: u64,
    d_range: Span,
    e_range: Span,
    exec: Execution,
) -> Result<StaircaseGrid> {
    check_stones(n)?;
    oracle.prepare(n);
    let oracle = &*oracle;
    let cells = fill(exec, d_range, e_range, |d, e| oracle_at(oracle, n, d, e));
    Ok(StaircaseGrid {
        rules: oracle.rules().clone(),
        n,
        d_range,
        e_range,
        source: GridSource::Oracle,
        cells,
    })
}

fn fill<F>(exec: Execution, d_range: Span, e_range: Span, f: F) -> Vec<Player>
where
    F: Fn(Cash, Cash) -> Player + Sync + Send,
{
    let width = e_range.len();
    exec::map_range(exec, 0..d_range.len() * width, |i| {
        f(
            Cash::Finite(d_range.lo + i / width),
            Cash::Finite(e_range.lo + i % width),
        )
    })
}

/// The both-middle rectangle `[M₁, U₁) × [M₂, U₂)`, widened to at least two
/// cells per axis.
pub fn middle_window(rules: &RuleSet, n: u64) -> Result<(Span, Span)> {
    let p = crate::classes::classify(rules, n, Cash::Finite(0), Cash::Finite(0))?;
    let span = |lo: u64, hi: u64| Span::new(lo, hi.max(lo + 1));
    Ok((
        span(p.m.m1, p.u.u1.saturating_sub(1))?,
        span(p.m.m2, p.u.u2.saturating_sub(1))?,
    ))
}

/// A point where the closed forms and the oracle disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: u64,
    pub d: Cash,
    pub e: Cash,
    pub fast: Verdict,
    pub oracle: Player,
}

/// Points checked and points disagreeing, per regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub checked: u64,
    pub mismatched: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub rules: RuleSet,
    /// Set when nothing was compared because the family has no closed form.
    pub skipped: bool,
    /// Sorted by `(n, d, e)`.
    pub entries: Vec<Discrepancy>,
    /// Keyed by [`RegimeCase::kind`].
    pub summary: BTreeMap<String, Tally>,
}

impl DiscrepancyReport {
    fn new(rules: &RuleSet) -> DiscrepancyReport {
        DiscrepancyReport {
            rules: rules.clone(),
            skipped: false,
            entries: Vec::new(),
            summary: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn checked(&self) -> u64 {
        self.summary.values().map(|t| t.checked).sum()
    }

    fn record(&mut self, n: u64, d: Cash, e: Cash, fast: Verdict, oracle: Player) {
        let tally = self
            .summary
            .entry(fast.case.kind().to_string())
            .or_default();
        tally.checked += 1;
        if fast.winner != oracle {
            tally.mismatched += 1;
            self.entries.push(Discrepancy {
                n,
                d,
                e,
                fast,
                oracle,
            });
        }
    }

    fn merge(&mut self, other: DiscrepancyReport) {
        self.entries.extend(other.entries);
        for (kind, t) in other.summary {
            let tally = self.summary.entry(kind).or_default();
            tally.checked += t.checked;
            tally.mismatched += t.mismatched;
        }
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.skipped {
            return writeln!(f, "A={}: no closed form, nothing compared", self.rules);
        }
        writeln!(
            f,
            "A={}: {} points, {} discrepancies",
            self.rules,
            self.checked(),
            self.entries.len()
        )?;
        for (kind, t) in &self.summary {
            writeln!(
                f,
                "  {kind:<10} checked {:>10}  mismatched {}",
                t.checked, t.mismatched
            )?;
        }
        for x in &self.entries {
            writeln!(
                f,
                "  n={} d={} e={}: fast {} vs oracle {}",
                x.n, x.d, x.e, x.fast, x.oracle
            )?;
        }
        Ok(())
    }
}

/// Compares `candidate` against `reference` cell by cell. When the candidate
/// came from the closed forms each cell's regime case is re-derived.
pub fn diff_grids(
    candidate: &StaircaseGrid,
    reference: &StaircaseGrid,
) -> Result<DiscrepancyReport> {
    if !candidate.same_frame(reference) {
        return Err(Error::RangeMismatch);
    }
    let family = classify_family(&candidate.rules);
    let mut report = DiscrepancyReport::new(&candidate.rules);
    for ((d, e, a), (_, _, b)) in candidate.iter().zip(reference.iter()) {
        let (d, e) = (Cash::Finite(d), Cash::Finite(e));
        let case = match candidate.source.text_mode() {
            Some(mode) if family.is_supported() => winner_closed(family, candidate.n, d, e, mode)
                .map_or(RegimeCase::OracleFallback, |v| v.case),
            Some(_) => RegimeCase::OracleFallback,
            None => RegimeCase::Oracle,
        };
        report.record(candidate.n, d, e, Verdict::new(a, case), b);
    }
    Ok(report)
}

/// Which bankrolls a sweep covers, besides the unlimited one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CashAxis {
    /// `0..=max` for every pile.
    UpTo(u64),
    /// `0..=n + extra` for a pile of `n`.
    PilePlus(u64),
}

impl CashAxis {
    fn max_for(self, n: u64) -> u64 {
        match self {
            CashAxis::UpTo(c) => c,
            CashAxis::PilePlus(x) => n + x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_max: u64,
    pub cash: CashAxis,
    pub mode: TextMode,
    pub exec: Execution,
}

impl SweepConfig {
    pub fn new(n_max: u64, cash: CashAxis) -> SweepConfig {
        SweepConfig {
            n_max,
            cash,
            mode: TextMode::default(),
            exec: Execution::default(),
        }
    }
}

/// Fast-vs-oracle over `n ≤ n_max` and `0 ≤ d, e ≤ cash_max` plus unlimited cash.
pub fn sweep(rules: &RuleSet, n_max: u64, cash_max: u64) -> Result<DiscrepancyReport> {
    sweep_with(rules, &SweepConfig::new(n_max, CashAxis::UpTo(cash_max)))
}

pub fn sweep_with(rules: &RuleSet, config: &SweepConfig) -> Result<DiscrepancyReport> {
    let family = classify_family(rules);
    let mut report = DiscrepancyReport::new(rules);
    if !family.is_supported() {
        report.skipped = true;
        return Ok(report);
    }
    let oracle = prepared_oracle(rules, config.n_max, config.exec)?;
    let parts = exec::map_range(config.exec, 0..config.n_max + 1, |n| {
        sweep_pile(
            rules,
            family,
            &oracle,
            n,
            config.cash.max_for(n),
            config.mode,
        )
    });
    for part in parts {
        report.merge(part);
    }
    Ok(report)
}

fn sweep_pile(
    rules: &RuleSet,
    family: Family,
    oracle: &Oracle,
    n: u64,
    cash_max: u64,
    mode: TextMode,
) -> DiscrepancyReport {
    let mut report = DiscrepancyReport::new(rules);
    let axis: Vec<Cash> = (0..=cash_max)
        .map(Cash::Finite)
        .chain([Cash::Infinite])
        .collect();
    for &d in &axis {
        for &e in &axis {
            let fast = winner_closed(family, n, d, e, mode).expect("supported family");
            report.record(n, d, e, fast, oracle_at(oracle, n, d, e));
        }
    }
    report
}

/// Measured staircase: `frontier` lists the first column of each run as
/// `(d, least e that Player 2 wins)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepGeometry {
    pub step_width: u64,
    pub step_height: u64,
    pub frontier: Vec<(u64, u64)>,
}

// most common value, smallest on ties
fn mode(values: impl IntoIterator<Item = u64>) -> Option<u64> {
    let mut counts = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_insert(0u64) += 1;
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(v, _)| v)
}

/// Reads the step size off a grid lying in the both-middle region.
pub fn measure_steps(grid: &StaircaseGrid) -> Result<StepGeometry> {
    let mut columns: Vec<(u64, u64)> = Vec::new();
    let mut ended = false;
    for d in grid.d_range.iter() {
        let first_p2 = grid
            .e_range
            .iter()
            .find(|&e| grid.get(d, e) == Some(Player::P2));
        let Some(t) = first_p2 else {
            ended = true;
            continue;
        };
        if ended {
            return Err(Error::NotAStaircase(format!(
                "column d={d} has a Player 2 cell after an all-Player-1 column"
            )));
        }
        if let Some(e) = (t..=grid.e_range.hi).find(|&e| grid.get(d, e) != Some(Player::P2)) {
            return Err(Error::NotAStaircase(format!(
                "column d={d} returns to Player 1 at e={e}"
            )));
        }
        if let Some(&(_, prev)) = columns.last() {
            if t < prev {
                return Err(Error::NotAStaircase(format!(
                    "frontier drops from {prev} to {t} at d={d}"
                )));
            }
        }
        columns.push((d, t));
    }

    // runs of equal frontier height: (first d, length, height)
    let mut runs: Vec<(u64, u64, u64)> = Vec::new();
    for &(d, t) in &columns {
        match runs.last_mut() {
            Some(run) if run.2 == t && run.0 + run.1 == d => run.1 += 1,
            _ => runs.push((d, 1, t)),
        }
    }
    if runs.len() < 2 {
        return Err(Error::NotAStaircase("fewer than two steps".into()));
    }
    let interior = if runs.len() > 2 {
        &runs[1..runs.len() - 1]
    } else {
        &runs[..]
    };
    let step_width = mode(interior.iter().map(|r| r.1)).expect("nonempty");
    let step_height = mode(runs.windows(2).map(|w| w[1].2 - w[0].2)).expect("two runs");
    Ok(StepGeometry {
        step_width,
        step_height,
        frontier: runs.iter().map(|r| (r.0, r.2)).collect(),
    })
}
