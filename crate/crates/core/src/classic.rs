//! Cash-free single-pile NIM: the linear win/lose table and the residue
//! characterizations for the supported families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Family, Player, RuleSet};

/// `W(n) = 2` exactly when `n mod modulus` is one of `losing_residues`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRule {
    pub modulus: u64,
    pub losing_residues: Vec<u64>,
}

impl ResidueRule {
    pub fn winner(&self, n: u64) -> Player {
        if self.losing_residues.contains(&(n % self.modulus)) {
            Player::P2
        } else {
            Player::P1
        }
    }
}

/// Winners of `NIM(A; n)` for every `n` up to a bound, with Player 1 to move.
#[derive(Debug, Clone)]
pub struct ClassicTable {
    winners: Vec<Player>,
}

impl ClassicTable {
    pub fn new(rules: &RuleSet, n_max: u64) -> ClassicTable {
        let mut winners: Vec<Player> = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            // the mover wins iff some move reaches a position lost for the next mover
            let wins = rules
                .moves()
                .iter()
                .take_while(|&&a| a <= n)
                .any(|&a| winners[(n - a) as usize] == Player::P2);
            winners.push(if wins { Player::P1 } else { Player::P2 });
        }
        ClassicTable { winners }
    }

    pub fn winner(&self, n: u64) -> Player {
        self.winners[n as usize]
    }

    pub fn len(&self) -> usize {
        self.winners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.winners.is_empty()
    }
}

pub fn win_classic_dp(rules: &RuleSet, n: u64) -> Player {
    ClassicTable::new(rules, n).winner(n)
}

// (modulus, largest losing residue); the losing residues are the even
// numbers from 0 up to that bound
fn residue_params(family: Family) -> Result<(u64, u64)> {
    Ok(match family {
        Family::OneTwo => (3, 0),
        Family::OneLEven(l) => (l + 1, l - 2),
        Family::OneTwoThree => (4, 0),
        Family::OneLL1Even(l) => (2 * l, l - 2),
        Family::OneLL1Odd(l) => (2 * l + 1, l - 1),
        Family::Unsupported => return Err(Error::UnsupportedFamily),
    })
}

pub fn residue_rule(family: Family) -> Result<ResidueRule> {
    let (modulus, top) = residue_params(family)?;
    Ok(ResidueRule {
        modulus,
        losing_residues: (0..=top).step_by(2).collect(),
    })
}

pub fn win_classic_closed(family: Family, n: u64) -> Result<Player> {
    let (modulus, top) = residue_params(family)?;
    let r = n % modulus;
    Ok(if r <= top && r.is_multiple_of(2) {
        Player::P2
    } else {
        Player::P1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;

    fn rules(s: &str) -> RuleSet {
        s.parse().unwrap()
    }

    #[test]
    fn dp_examples() {
        assert_eq!(win_classic_dp(&rules("1,2"), 6), Player::P2);
        assert_eq!(win_classic_dp(&rules("1,4,5"), 2), Player::P2);
        assert_eq!(win_classic_dp(&rules("2,3"), 1), Player::P2);
        assert_eq!(win_classic_dp(&rules("2,3"), 2), Player::P1);
    }

    #[test]
    fn residue_rule_examples() {
        assert_eq!(
            residue_rule(Family::OneLEven(6)).unwrap(),
            ResidueRule {
                modulus: 7,
                losing_residues: vec![0, 2, 4]
            }
        );
        assert_eq!(
            residue_rule(Family::OneLL1Odd(3)).unwrap(),
            ResidueRule {
                modulus: 7,
                losing_residues: vec![0, 2]
            }
        );
        assert_eq!(
            residue_rule(Family::OneLL1Even(4)).unwrap(),
            ResidueRule {
                modulus: 8,
                losing_residues: vec![0, 2]
            }
        );
        assert_eq!(residue_rule(Family::OneTwo).unwrap().modulus, 3);
        assert_eq!(residue_rule(Family::OneTwoThree).unwrap().modulus, 4);
        assert_eq!(
            residue_rule(Family::Unsupported),
            Err(Error::UnsupportedFamily)
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            win_classic_closed(Family::OneLEven(6), 43).unwrap(),
            Player::P1
        );
        assert_eq!(
            win_classic_closed(Family::OneLL1Odd(3), 42).unwrap(),
            Player::P2
        );
        assert_eq!(
            win_classic_closed(Family::OneTwoThree, 0).unwrap(),
            Player::P2
        );
        assert!(win_classic_closed(Family::Unsupported, 3).is_err());
    }

    #[test]
    fn closed_form_dp_and_oracle_agree() {
        let mut families = vec![Family::OneTwo, Family::OneTwoThree];
        for l in (4..=10).step_by(2) {
            families.push(Family::OneLEven(l));
            families.push(Family::OneLL1Even(l));
        }
        for l in (3..=9).step_by(2) {
            families.push(Family::OneLL1Odd(l));
        }
        for family in families {
            let rules = family.rules().unwrap();
            let table = ClassicTable::new(&rules, 300);
            let mut oracle = Oracle::new(rules);
            for n in 0..=300 {
                let closed = win_classic_closed(family, n).unwrap();
                assert_eq!(closed, table.winner(n), "{family} n={n}");
                assert_eq!(closed, oracle.solve_classic(n).winner, "{family} n={n}");
            }
        }
    }
}
