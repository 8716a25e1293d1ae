//! NIM with Cash: an exhaustive oracle, closed-form class thresholds and
//! win conditions, and a harness that checks one against the other.

pub mod classes;
pub mod classic;
pub mod error;
pub mod exec;
pub mod fast;
pub mod lab;
pub mod model;
pub mod oracle;
pub mod verdict;

pub use error::{Error, Result};
pub use exec::Execution;
pub use fast::{winner_fast, FastWinner, TextMode};
pub use lab::{
    build_grid, diff_grids, measure_steps, render_grid, sweep, DiscrepancyReport, GridSource,
    RenderFormat, Span, StaircaseGrid, StepGeometry,
};
pub use model::{classify_family, Cash, Family, GameState, Player, RuleSet};
pub use oracle::{best_move, min_winning_cash, solve_cash, solve_classic, MemoKey, Oracle};
pub use verdict::{RegimeCase, StairPart, Verdict};
