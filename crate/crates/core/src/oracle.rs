//! Exhaustive memoized minimax for NIM with Cash.
//!
//! Every closed form in this crate is checked against this module. Positions
//! are memoized after capping finite cash at the pile size (nobody can spend
//! more than the pile holds); infinite cash stays symbolic so `d = ∞` is exact.
//!
//! The memo is a dense table grouped by pile size. Single queries fill it
//! lazily along the reachable positions only; [`Oracle::prepare`] fills whole
//! layers bottom-up so that grids and sweeps can read it concurrently.

use crate::exec::{self, Execution};
use crate::model::{Cash, GameState, Player, RuleSet};
use crate::verdict::{RegimeCase, Verdict};

/// Largest pile the dense memo will allocate for (about 0.6 GB of cells).
pub const ORACLE_STONE_LIMIT: u64 = 1200;

const UNKNOWN: u8 = 0;
const WIN: u8 = 1;
const LOSE: u8 = 2;

/// A capped position seen from the side of the player to move.
///
/// Positions that differ only by who is called Player 1 share one entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MemoKey {
    pub stones: u64,
    pub mover_cash: Cash,
    pub other_cash: Cash,
}

impl MemoKey {
    pub fn new(state: &GameState) -> MemoKey {
        let other = state.cash_of(state.to_move.opponent());
        MemoKey {
            stones: state.stones,
            mover_cash: state.mover_cash().cap(state.stones),
            other_cash: other.cap(state.stones),
        }
    }
}

// sum_{t < s} (t + 2)^2
fn layer_offset(s: u64) -> usize {
    let s = s as u128;
    ((s + 1) * (s + 2) * (2 * s + 3) / 6 - 1) as usize
}

fn cash_slot(c: Cash, stones: u64) -> usize {
    match c {
        Cash::Finite(c) => c.min(stones) as usize,
        Cash::Infinite => stones as usize + 1,
    }
}

#[derive(Debug, Clone)]
pub struct Oracle {
    rules: RuleSet,
    exec: Execution,
    table: Vec<u8>,
    // layers 0..layers are allocated; 0..filled are complete
    layers: u64,
    filled: u64,
}

impl Oracle {
    pub fn new(rules: RuleSet) -> Oracle {
        Oracle::with_execution(rules, Execution::default())
    }

    pub fn with_execution(rules: RuleSet, exec: Execution) -> Oracle {
        Oracle {
            rules,
            exec,
            table: Vec::new(),
            layers: 0,
            filled: 0,
        }
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    fn reserve(&mut self, stones: u64) {
        assert!(
            stones <= ORACLE_STONE_LIMIT,
            "oracle supports piles up to {ORACLE_STONE_LIMIT} stones, got {stones}"
        );
        if stones < self.layers {
            return;
        }
        self.layers = stones + 1;
        self.table.resize(layer_offset(self.layers), UNKNOWN);
    }

    #[inline]
    fn slot(s: u64, mover: usize, other: usize) -> usize {
        layer_offset(s) + mover * (s as usize + 2) + other
    }

    /// The position reached by taking `a`, as (stones, mover slot, other slot),
    /// or `None` when `a` is not legal.
    #[inline]
    fn child(s: u64, mover: usize, other: usize, a: u64) -> Option<(u64, usize, usize)> {
        let inf = s as usize + 1;
        if a > s || (mover != inf && (a as usize) > mover) {
            return None;
        }
        let t = s - a;
        let t_inf = t as usize + 1;
        let next_mover = if other == inf {
            t_inf
        } else {
            other.min(t as usize)
        };
        let next_other = if mover == inf {
            t_inf
        } else {
            (mover - a as usize).min(t as usize)
        };
        Some((t, next_mover, next_other))
    }

    fn mover_wins_slot(&mut self, s: u64, mover: usize, other: usize) -> bool {
        self.reserve(s);
        let root = Self::slot(s, mover, other);
        if self.table[root] != UNKNOWN {
            return self.table[root] == WIN;
        }
        let moves = self.rules.moves().to_vec();
        // (stones, mover slot, other slot, next move index)
        let mut stack = vec![(s, mover, other, 0usize)];
        while let Some(&(s, m, o, next)) = stack.last() {
            let mut i = next;
            let mut outcome = LOSE;
            let mut descend = None;
            while i < moves.len() {
                let Some((t, cm, co)) = Self::child(s, m, o, moves[i]) else {
                    // moves are ascending, so nothing further is legal
                    break;
                };
                match self.table[Self::slot(t, cm, co)] {
                    UNKNOWN => {
                        descend = Some((t, cm, co));
                        break;
                    }
                    LOSE => {
                        outcome = WIN;
                        break;
                    }
                    _ => i += 1,
                }
            }
            if let Some(c) = descend {
                stack.last_mut().expect("non-empty").3 = i;
                stack.push((c.0, c.1, c.2, 0));
                continue;
            }
            self.table[Self::slot(s, m, o)] = outcome;
            stack.pop();
        }
        self.table[root] == WIN
    }

    /// Evaluates every position with at most `n_max` stones.
    pub fn prepare(&mut self, n_max: u64) {
        self.reserve(n_max);
        let moves = self.rules.moves().to_vec();
        for s in self.filled..=n_max {
            let start = layer_offset(s);
            let width = s as usize + 2;
            let (lower, rest) = self.table.split_at_mut(start);
            let layer = &mut rest[..width * width];
            let lower: &[u8] = lower;
            let exec = if width >= 64 {
                self.exec
            } else {
                Execution::Sequential
            };
            exec::for_each_row(exec, layer, width, |m, row| {
                for (o, cell) in row.iter_mut().enumerate() {
                    let wins = moves
                        .iter()
                        .map_while(|&a| Self::child(s, m, o, a))
                        .any(|(t, cm, co)| lower[Self::slot(t, cm, co)] == LOSE);
                    *cell = if wins { WIN } else { LOSE };
                }
            });
        }
        self.filled = self.filled.max(n_max + 1);
    }

    /// Whether the player to move in `state` can force a win.
    pub fn mover_wins(&mut self, state: &GameState) -> bool {
        let s = state.stones;
        let other = state.cash_of(state.to_move.opponent());
        self.mover_wins_slot(s, cash_slot(state.mover_cash(), s), cash_slot(other, s))
    }

    pub fn winner(&mut self, state: &GameState) -> Player {
        if self.mover_wins(state) {
            state.to_move
        } else {
            state.to_move.opponent()
        }
    }

    /// Winner with Player 1 to move, `d` and `e` dollars.
    pub fn solve_cash(&mut self, n: u64, d: Cash, e: Cash) -> Verdict {
        Verdict::new(self.winner(&GameState::new(n, d, e)), RegimeCase::Oracle)
    }

    /// Winner of the cash-free game.
    pub fn solve_classic(&mut self, n: u64) -> Verdict {
        self.solve_cash(n, Cash::Infinite, Cash::Infinite)
    }

    /// Read-only lookup; `None` unless the position has been evaluated.
    pub fn lookup(&self, n: u64, d: Cash, e: Cash) -> Option<Player> {
        if n >= self.layers {
            return None;
        }
        match self.table[Self::slot(n, cash_slot(d, n), cash_slot(e, n))] {
            WIN => Some(Player::P1),
            LOSE => Some(Player::P2),
            _ => None,
        }
    }

    /// Engine policy: the smallest winning move, else the smallest legal move.
    pub fn best_move(&mut self, state: &GameState) -> Option<u64> {
        let legal = state.legal_moves(&self.rules);
        let first = *legal.first()?;
        for a in legal {
            let next = state.apply_move(a, &self.rules).expect("move is legal");
            if !self.mover_wins(&next) {
                return Some(a);
            }
        }
        Some(first)
    }

    /// Least `c` with `W(n; c, ∞) = 1`, found by scanning. `None` when
    /// Player 2 wins the cash-free game.
    pub fn min_winning_cash(&mut self, n: u64) -> Option<u64> {
        match self.winner_min_cash(n) {
            (Player::P1, c) => Some(c),
            (Player::P2, _) => None,
        }
    }

    /// The cash-free winner and the least cash that still lets them win
    /// against an opponent with unlimited money.
    pub fn winner_min_cash(&mut self, n: u64) -> (Player, u64) {
        let winner = self.solve_classic(n).winner;
        let c = (0..=n)
            .find(|&c| {
                let (d, e) = match winner {
                    Player::P1 => (Cash::Finite(c), Cash::Infinite),
                    Player::P2 => (Cash::Infinite, Cash::Finite(c)),
                };
                self.solve_cash(n, d, e).winner == winner
            })
            .expect("cash equal to the pile size is never binding");
        (winner, c)
    }
}

pub fn solve_cash(rules: &RuleSet, n: u64, d: Cash, e: Cash) -> Verdict {
    Oracle::new(rules.clone()).solve_cash(n, d, e)
}

pub fn solve_classic(rules: &RuleSet, n: u64) -> Verdict {
    Oracle::new(rules.clone()).solve_classic(n)
}

pub fn best_move(rules: &RuleSet, state: &GameState) -> Option<u64> {
    Oracle::new(rules.clone()).best_move(state)
}

pub fn min_winning_cash(rules: &RuleSet, n: u64) -> Option<u64> {
    Oracle::new(rules.clone()).min_winning_cash(n)
}
