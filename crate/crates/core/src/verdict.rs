use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{Family, Player};

/// Which part of a staircase theorem produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum StairPart {
    /// Below the first band, where Player 2 wins outright.
    Bottom,
    Band {
        k: u64,
    },
    /// At or beyond the closing threshold measured down from `U₁`.
    Top,
}

/// The rule that decided a verdict. Exactly one per verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegimeCase {
    /// Exhaustive search.
    Oracle,
    /// Residue rule for the cash-free game.
    ClassicFormula,
    /// At least one player upper class; `case` is 1..=3.
    Upper { case: u8 },
    /// At least one player lower class; `case` is 1..=5.
    Lower { case: u8 },
    /// Both players middle class; `case` numbers the residue class list of
    /// the family's staircase theorem.
    Staircase {
        family: Family,
        case: u8,
        part: StairPart,
    },
    /// No closed form applied, so the oracle answered.
    OracleFallback,
}

impl RegimeCase {
    /// Coarse label used for report summaries.
    pub fn kind(&self) -> &'static str {
        match self {
            RegimeCase::Oracle => "oracle",
            RegimeCase::ClassicFormula => "classic",
            RegimeCase::Upper { .. } => "upper",
            RegimeCase::Lower { .. } => "lower",
            RegimeCase::Staircase { .. } => "staircase",
            RegimeCase::OracleFallback => "fallback",
        }
    }
}

impl fmt::Display for RegimeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeCase::Oracle => f.write_str("oracle"),
            RegimeCase::ClassicFormula => f.write_str("classic formula"),
            RegimeCase::Upper { case } => write!(f, "upper class, case {case}"),
            RegimeCase::Lower { case } => write!(f, "lower class, case {case}"),
            RegimeCase::Staircase { family, case, part } => {
                write!(f, "staircase {family}, case {case}, ")?;
                match part {
                    StairPart::Bottom => f.write_str("bottom"),
                    StairPart::Band { k } => write!(f, "band {k}"),
                    StairPart::Top => f.write_str("top"),
                }
            }
            RegimeCase::OracleFallback => f.write_str("oracle fallback"),
        }
    }
}

/// The winner of a position together with the rule that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub winner: Player,
    pub case: RegimeCase,
}

impl Verdict {
    pub fn new(winner: Player, case: RegimeCase) -> Verdict {
        Verdict { winner, case }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.winner, self.case)
    }
}
