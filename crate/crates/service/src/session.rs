//! One human against the engine.

use serde::{Deserialize, Serialize};

use nimcash_core::{Cash, FastWinner, GameState, Player, RegimeCase, RuleSet};

use crate::error::ServiceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Status {
    InProgress,
    Won { winner: Player },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ply {
    pub player: Player,
    pub take: u64,
}

/// Verdict for the current position from the mover's side of the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub winner: Player,
    /// Rule that decided it, evaluated with the player to move in the first seat.
    pub regime: RegimeCase,
    /// The engine's choice for the player to move.
    pub best: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSession {
    pub id: String,
    pub rules: RuleSet,
    pub initial: GameState,
    pub state: GameState,
    pub human: Player,
    pub history: Vec<Ply>,
    pub status: Status,
}

/// Winner of `state` with the roles relabelled so the mover sits first.
fn judge(solver: &mut FastWinner, state: &GameState) -> Result<(Player, RegimeCase), ServiceError> {
    let other = state.cash_of(state.to_move.opponent());
    let v = solver.winner(state.stones, state.mover_cash(), other)?;
    let winner = if v.winner == Player::P1 {
        state.to_move
    } else {
        state.to_move.opponent()
    };
    Ok((winner, v.case))
}

/// Smallest move that leaves the opponent lost, else the smallest legal move.
pub fn engine_move(
    solver: &mut FastWinner,
    state: &GameState,
) -> Result<Option<u64>, ServiceError> {
    let rules = solver.rules().clone();
    let legal = state.legal_moves(&rules);
    for &a in &legal {
        let next = state.apply_move(a, &rules)?;
        if judge(solver, &next)?.0 == state.to_move {
            return Ok(Some(a));
        }
    }
    Ok(legal.first().copied())
}

impl GameSession {
    /// Opens a game with Player 1 to move; if that is the engine it moves at once.
    pub fn create(
        id: String,
        rules: RuleSet,
        n: u64,
        d: Cash,
        e: Cash,
        human: Player,
    ) -> Result<GameSession, ServiceError> {
        let initial = GameState::new(n, d, e);
        let mut solver = FastWinner::new(rules.clone());
        // surfaces an oversized pile for families without closed forms now rather than mid-game
        judge(&mut solver, &initial)?;
        let mut session = GameSession {
            id,
            rules,
            initial,
            state: initial,
            human,
            history: Vec::new(),
            status: Status::InProgress,
        };
        session.settle(&mut solver)?;
        Ok(session)
    }

    pub fn is_over(&self) -> bool {
        matches!(self.status, Status::Won { .. })
    }

    fn apply(&mut self, a: u64) -> Result<(), ServiceError> {
        let player = self.state.to_move;
        self.state = self.state.apply_move(a, &self.rules)?;
        self.history.push(Ply { player, take: a });
        if self.state.is_terminal(&self.rules) {
            self.status = Status::Won { winner: player };
        }
        Ok(())
    }

    // engine replies until the human is to move or the game ends
    fn settle(&mut self, solver: &mut FastWinner) -> Result<(), ServiceError> {
        if self.state.is_terminal(&self.rules) {
            self.status = Status::Won {
                winner: self.state.to_move.opponent(),
            };
        }
        while !self.is_over() && self.state.to_move != self.human {
            let a =
                engine_move(solver, &self.state)?.expect("nonterminal position has a legal move");
            self.apply(a)?;
        }
        Ok(())
    }

    /// Applies the human's move and the engine's reply.
    pub fn play_move(&mut self, a: u64) -> Result<(), ServiceError> {
        if self.is_over() {
            return Err(ServiceError::GameOver);
        }
        if self.state.to_move != self.human {
            return Err(ServiceError::NotYourTurn);
        }
        if !self.state.is_legal(&self.rules, a) {
            return Err(ServiceError::IllegalMove {
                take: a,
                state: self.state,
            });
        }
        self.apply(a)?;
        self.settle(&mut FastWinner::new(self.rules.clone()))
    }

    pub fn hint(&self) -> Result<Hint, ServiceError> {
        let mut solver = FastWinner::new(self.rules.clone());
        let (winner, regime) = judge(&mut solver, &self.state)?;
        let best = if self.is_over() {
            None
        } else {
            engine_move(&mut solver, &self.state)?
        };
        Ok(Hint {
            winner,
            regime,
            best,
        })
    }

    /// The position reached by replaying the history from the start.
    pub fn replay(&self) -> Result<GameState, ServiceError> {
        let mut state = self.initial;
        for ply in &self.history {
            if ply.player != state.to_move {
                return Err(ServiceError::Corrupt(format!(
                    "{} moved out of turn",
                    ply.player
                )));
            }
            state = state.apply_move(ply.take, &self.rules)?;
        }
        Ok(state)
    }
}
