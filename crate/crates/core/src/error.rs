use thiserror::Error;

use crate::model::Cash;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid move set: {0}")]
    InvalidRules(String),

    #[error("illegal move: cannot take {take} with {stones} stones and {cash} dollars")]
    IllegalMove { take: u64, stones: u64, cash: Cash },

    #[error("no closed form for this move set")]
    UnsupportedFamily,

    /// A halved coefficient came out odd; the wrong theorem branch was taken.
    #[error("non-integral closed-form value at n={n}")]
    NonIntegralValue { n: u64 },

    /// The recursive upper-class definition offered no admissible move.
    #[error("upper-class recursion has no admissible move at n={n}")]
    DefinitionUnsatisfiable { n: u64 },

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("no theorem case covers n={n} d={d} e={e}")]
    UncoveredPoint { n: u64, d: u64, e: u64 },

    #[error("empty range {lo}..={hi}")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("grids do not share the same rules, pile size and ranges")]
    RangeMismatch,

    #[error("frontier is not a monotone staircase: {0}")]
    NotAStaircase(String),

    #[error("pile of {n} stones exceeds the oracle limit of {limit}")]
    StoneLimit { n: u64, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
