//! Constant-time winner prediction from the class thresholds.
//!
//! If either player is upper class, or either is lower class, a short case
//! list decides the game. When both are middle class the answer is a
//! staircase: bands of `d` of fixed width, each with its own `e` cutoff,
//! closed off near `U₁` by a top rule. The band layout depends on the family
//! and on `n` modulo a family-specific period.

use serde::{Deserialize, Serialize};

use crate::classes::{classify_closed, ClassBand, ClassProfile};
use crate::error::{Error, Result};
use crate::model::{classify_family, Cash, Family, Player, RuleSet};
use crate::oracle::{Oracle, ORACLE_STONE_LIMIT};
use crate::verdict::{RegimeCase, StairPart, Verdict};

/// How to read the first band of the `{1,L}` staircase in cases 2 and 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TextMode {
    /// First band split at its `e` cutoff, matching exhaustive search.
    #[default]
    FigureConsistent,
    /// First band handed to Player 2 entirely.
    Strict,
}

/// Band layout of one staircase case, as offsets from `M` and `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StairRule {
    pub case: u8,
    /// Player 2 wins outright when `d < M₁ + p2_below`.
    pub p2_below: u64,
    /// Band `k` starts at `d = M₁ + origin + k·stride`.
    pub origin: u64,
    pub stride: u64,
    /// In band `k` Player 1 wins iff `e < M₂ + e_offset + k·stride`.
    pub e_offset: u64,
    /// The top rule applies once `d ≥ U₁ - top_d`.
    pub top_d: u64,
    /// Under the top rule Player 1 wins iff `e < U₂ - top_e`; always when `None`.
    pub top_e: Option<u64>,
}

impl StairRule {
    const fn new(
        case: u8,
        bottom: u64,
        stride: u64,
        e_offset: u64,
        top_d: u64,
        top_e: Option<u64>,
    ) -> Self {
        StairRule {
            case,
            p2_below: bottom,
            origin: bottom,
            stride,
            e_offset,
            top_d,
            top_e,
        }
    }

    /// First `d` handled by the top rule.
    pub fn top_start(&self, u1: u64) -> u64 {
        u1.saturating_sub(self.top_d)
    }
}

/// One band `d_low ≤ d < d_high` of a staircase; Player 1 wins iff `e < e_threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StaircaseBand {
    pub k: u64,
    pub d_low: u64,
    pub d_high: u64,
    pub e_threshold: u64,
}

/// The staircase case that governs `n` stones.
pub fn stair_rule(family: Family, n: u64, mode: TextMode) -> Result<StairRule> {
    use Family::*;
    let rule = match family {
        OneTwo => match n % 6 {
            0 => StairRule::new(1, 0, 1, 1, 1, Some(1)),
            1 | 5 => StairRule::new(2, 1, 1, 1, 1, None),
            2 | 4 => StairRule::new(3, 0, 1, 1, 1, None),
            _ => StairRule::new(4, 1, 1, 1, 1, Some(1)),
        },
        OneLEven(l) => {
            let h = l / 2;
            let r = n % (2 * l + 2);
            let mut rule = match (r.is_multiple_of(2), r) {
                (true, r) if r < l => StairRule::new(1, h - 1, l - 1, l - 1, l - 1, Some(l - 1)),
                (true, _) => StairRule::new(3, h - 1, l - 1, l - 1, l - 1, None),
                (false, r) if r < l || r == 2 * l + 1 => {
                    StairRule::new(2, 0, l - 1, h - 1, l - 1, None)
                }
                (false, _) => StairRule::new(4, 0, l - 1, h - 1, l - 1, Some(l - 1)),
            };
            if mode == TextMode::Strict && rule.case % 2 == 0 {
                rule.p2_below = l - 1;
            }
            rule
        }
        OneTwoThree => match n % 4 {
            0 => StairRule::new(1, 0, 1, 1, 1, Some(1)),
            2 => StairRule::new(3, 0, 1, 1, 1, None),
            _ => StairRule::new(2, 1, 1, 1, 1, None),
        },
        OneLL1Even(l) => {
            let h = l / 2;
            let r = n % (2 * l);
            if r % 2 == 1 {
                StairRule::new(2, 0, h, h - 1, h, None)
            } else if r == l {
                StairRule::new(3, h - 1, h, h, h, None)
            } else {
                StairRule::new(1, h - 1, h, h, h, Some(h))
            }
        }
        OneLL1Odd(l) => {
            let h = (l - 1) / 2;
            let r = n % (4 * l + 2);
            let even = r.is_multiple_of(2);
            if r == l + 1 {
                StairRule::new(3, h, l, l, l, None)
            } else if r == 3 * l + 2 {
                StairRule::new(6, 0, l, h, l, None)
            } else if r <= l || r > 3 * l + 2 {
                if even {
                    StairRule::new(1, h, l, l, h, None)
                } else {
                    StairRule::new(2, 0, l, h, l, Some(h))
                }
            } else if even {
                StairRule::new(5, h, l, l, l, Some(h))
            } else {
                StairRule::new(4, 0, l, h, h, None)
            }
        }
        Unsupported => return Err(Error::UnsupportedFamily),
    };
    Ok(rule)
}

/// Bands between the first band and the top rule, in increasing `d`.
pub fn staircase_bands(profile: &ClassProfile, mode: TextMode) -> Result<Vec<StaircaseBand>> {
    let rule = stair_rule(profile.family, profile.stones, mode)?;
    let top = rule.top_start(profile.u.u1);
    let mut bands = Vec::new();
    let mut d_low = profile.m.m1 + rule.origin;
    let mut k = 0;
    while d_low < top {
        let d_high = (d_low + rule.stride).min(top);
        bands.push(StaircaseBand {
            k,
            d_low,
            d_high,
            e_threshold: profile.m.m2 + rule.e_offset + k * rule.stride,
        });
        d_low = d_high;
        k += 1;
    }
    Ok(bands)
}

/// Whether `(d, e)` is where the strict and figure-consistent readings of the
/// `{1,L}` staircase disagree: the lower part of the first band for residue
/// cases 2 and 4.
pub fn in_strict_text_region(family: Family, n: u64, d: u64, e: u64) -> bool {
    let Family::OneLEven(l) = family else {
        return false;
    };
    let Ok(rule) = stair_rule(family, n, TextMode::Strict) else {
        return false;
    };
    let m = crate::classes::middle_thresholds(n);
    rule.case % 2 == 0 && (m.m1..m.m1 + l - 1).contains(&d) && (m.m2..m.m2 + l / 2 - 1).contains(&e)
}

fn require_finite(cash: Cash, what: &str) -> Result<u64> {
    cash.finite()
        .ok_or_else(|| Error::RegimeMismatch(format!("{what} has unlimited cash")))
}

/// Winner when at least one player is upper class.
pub fn winner_upper_regime(profile: &ClassProfile, d: Cash, e: Cash) -> Result<Verdict> {
    let (d_up, e_up) = (d >= profile.u.u1, e >= profile.u.u2);
    let (winner, case) = match (d_up, e_up) {
        (true, false) => (Player::P1, 1),
        (false, true) => (Player::P2, 2),
        (true, true) => (profile.classic_winner, 3),
        (false, false) => {
            return Err(Error::RegimeMismatch(
                "neither player is upper class".into(),
            ));
        }
    };
    Ok(Verdict::new(winner, RegimeCase::Upper { case }))
}

/// Winner when neither player is upper class and at least one is lower class.
pub fn winner_lower_regime(profile: &ClassProfile, d: Cash, e: Cash) -> Result<Verdict> {
    if profile.any(ClassBand::Upper) || !profile.any(ClassBand::Lower) {
        return Err(Error::RegimeMismatch(
            "lower regime needs a lower-class player and no upper-class one".into(),
        ));
    }
    let d = require_finite(d, "Player 1")?;
    let e = require_finite(e, "Player 2")?;
    let (m1, m2) = (profile.m.m1, profile.m.m2);
    let (winner, case) = if d >= m1 && e < m2 {
        (Player::P1, 1)
    } else if d < m1 && e >= m2 {
        (Player::P2, 2)
    } else if d == e && d < m1 {
        (Player::P2, 3)
    } else if e < d && d < m1 {
        (Player::P1, 4)
    } else if d < e && e < m2 {
        (Player::P2, 5)
    } else {
        return Err(Error::UncoveredPoint {
            n: profile.stones,
            d,
            e,
        });
    };
    Ok(Verdict::new(winner, RegimeCase::Lower { case }))
}

/// Winner when both players are middle class.
pub fn winner_staircase(
    profile: &ClassProfile,
    d: Cash,
    e: Cash,
    mode: TextMode,
) -> Result<Verdict> {
    if profile.band1 != ClassBand::Middle || profile.band2 != ClassBand::Middle {
        return Err(Error::RegimeMismatch(
            "staircase needs both players middle class".into(),
        ));
    }
    let d = require_finite(d, "Player 1")?;
    let e = require_finite(e, "Player 2")?;
    let family = profile.family;
    let rule = stair_rule(family, profile.stones, mode)?;
    let (m1, m2, u1, u2) = (profile.m.m1, profile.m.m2, profile.u.u1, profile.u.u2);
    let verdict = |winner, part| {
        Verdict::new(
            winner,
            RegimeCase::Staircase {
                family,
                case: rule.case,
                part,
            },
        )
    };

    if d + rule.top_d >= u1 {
        let p1 = match rule.top_e {
            None => true,
            Some(y) => e + y < u2,
        };
        return Ok(verdict(
            if p1 { Player::P1 } else { Player::P2 },
            StairPart::Top,
        ));
    }
    if d < m1 + rule.p2_below {
        return Ok(verdict(Player::P2, StairPart::Bottom));
    }
    let k = (d - m1 - rule.origin) / rule.stride;
    let p1 = e < m2 + rule.e_offset + k * rule.stride;
    Ok(verdict(
        if p1 { Player::P1 } else { Player::P2 },
        StairPart::Band { k },
    ))
}

/// Closed-form winner for a supported family; no search.
pub fn winner_closed(family: Family, n: u64, d: Cash, e: Cash, mode: TextMode) -> Result<Verdict> {
    let profile = classify_closed(family, n, d, e)?;
    if profile.any(ClassBand::Upper) {
        winner_upper_regime(&profile, d, e)
    } else if profile.any(ClassBand::Lower) {
        winner_lower_regime(&profile, d, e)
    } else {
        winner_staircase(&profile, d, e, mode)
    }
}

/// Closed forms where they apply, the oracle everywhere else.
#[derive(Debug)]
pub struct FastWinner {
    family: Family,
    mode: TextMode,
    oracle: Oracle,
    fallbacks: u64,
}

impl FastWinner {
    pub fn new(rules: RuleSet) -> FastWinner {
        FastWinner::with_mode(rules, TextMode::default())
    }

    pub fn with_mode(rules: RuleSet, mode: TextMode) -> FastWinner {
        FastWinner {
            family: classify_family(&rules),
            mode,
            oracle: Oracle::new(rules),
            fallbacks: 0,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn mode(&self) -> TextMode {
        self.mode
    }

    pub fn rules(&self) -> &RuleSet {
        self.oracle.rules()
    }

    /// Number of queries the oracle had to answer.
    pub fn fallbacks(&self) -> u64 {
        self.fallbacks
    }

    pub fn winner(&mut self, n: u64, d: Cash, e: Cash) -> Result<Verdict> {
        let err = match winner_closed(self.family, n, d, e, self.mode) {
            Ok(v) => return Ok(v),
            Err(err) => err,
        };
        if n > ORACLE_STONE_LIMIT {
            return Err(Error::StoneLimit {
                n,
                limit: ORACLE_STONE_LIMIT,
            });
        }
        log::debug!(
            "oracle fallback for {} n={n} d={d} e={e}: {err}",
            self.family
        );
        self.fallbacks += 1;
        let winner = self.oracle.solve_cash(n, d, e).winner;
        Ok(Verdict::new(winner, RegimeCase::OracleFallback))
    }
}

/// One-shot [`FastWinner::winner`] with figure-consistent reading.
pub fn winner_fast(rules: &RuleSet, n: u64, d: Cash, e: Cash) -> Result<Verdict> {
    FastWinner::new(rules.clone()).winner(n, d, e)
}
