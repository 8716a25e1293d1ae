//! Upper, middle and lower class thresholds.
//!
//! `U₁(n)`/`U₂(n)` are the least bankrolls that let each player keep playing
//! the cash-free strategy; `M₁(n)`/`M₂(n)` the least that let a player take
//! one stone every turn to the end. Below `M` a player is lower class.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classic::{win_classic_closed, ClassicTable};
use crate::error::{Error, Result};
use crate::model::{classify_family, Cash, Family, Player, RuleSet};

/// Upper-class thresholds for Player 1 and Player 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct UPair {
    pub u1: u64,
    pub u2: u64,
}

impl UPair {
    pub fn of(&self, player: Player) -> u64 {
        match player {
            Player::P1 => self.u1,
            Player::P2 => self.u2,
        }
    }
}

/// Upper-class thresholds of the cash-free winner and loser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WinLose {
    pub u_win: u64,
    pub u_lose: u64,
}

impl WinLose {
    /// Assigns the winner's value to the player who wins the cash-free game.
    pub fn to_pair(self, classic_winner: Player) -> UPair {
        match classic_winner {
            Player::P1 => UPair {
                u1: self.u_win,
                u2: self.u_lose,
            },
            Player::P2 => UPair {
                u1: self.u_lose,
                u2: self.u_win,
            },
        }
    }
}

/// `n = k·modulus + i` with `0 ≤ i < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueDecomposition {
    pub k: u64,
    pub i: u64,
    pub modulus: u64,
}

impl ResidueDecomposition {
    pub fn new(n: u64, modulus: u64) -> ResidueDecomposition {
        ResidueDecomposition {
            k: n / modulus,
            i: n % modulus,
            modulus,
        }
    }
}

/// Middle-class thresholds; `m1 - m2` is 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MiddlePair {
    pub m1: u64,
    pub m2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassBand {
    Lower,
    Middle,
    Upper,
}

impl ClassBand {
    /// Upper takes precedence, so small piles where `M > U` still classify.
    pub fn of(cash: Cash, upper: u64, middle: u64) -> ClassBand {
        match cash {
            Cash::Infinite => ClassBand::Upper,
            Cash::Finite(c) if c >= upper => ClassBand::Upper,
            Cash::Finite(c) if c >= middle => ClassBand::Middle,
            Cash::Finite(_) => ClassBand::Lower,
        }
    }
}

impl fmt::Display for ClassBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassBand::Lower => "lower",
            ClassBand::Middle => "middle",
            ClassBand::Upper => "upper",
        })
    }
}

/// Thresholds for one pile size plus the band each bankroll falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassProfile {
    pub stones: u64,
    pub family: Family,
    pub u: UPair,
    pub m: MiddlePair,
    pub band1: ClassBand,
    pub band2: ClassBand,
    pub classic_winner: Player,
}

impl ClassProfile {
    pub fn any(&self, band: ClassBand) -> bool {
        self.band1 == band || self.band2 == band
    }
}

/// One step of the recursive upper-class definition.
///
/// `winner(m)` gives the cash-free winner at `m` stones and `pairs[m]` the
/// already computed thresholds for every `m < n`. When Player 2 wins at `n`,
/// `U₁(n)` ranges over moves `a` with `U₁(n-a) = U₂(n)`.
pub fn upper_step(
    n: u64,
    moves: &[u64],
    winner: impl Fn(u64) -> Player,
    pairs: &[UPair],
) -> Result<UPair> {
    let min_move = moves[0];
    if n < min_move {
        return Ok(UPair::default());
    }
    let available: Vec<u64> = moves.iter().copied().take_while(|&a| a <= n).collect();
    let after = |a: u64| pairs[(n - a) as usize];
    let greatest_u1 = available
        .iter()
        .map(|&a| after(a).u1)
        .max()
        .expect("n >= min(A)");
    let u2 = greatest_u1;
    let u1 = match winner(n) {
        Player::P1 => available
            .iter()
            .filter(|&&a| winner(n - a) == Player::P2)
            .map(|&a| after(a).u2 + a)
            .min(),
        Player::P2 => available
            .iter()
            .filter(|&&a| after(a).u1 == u2)
            .map(|&a| after(a).u2 + a)
            .min(),
    };
    let u1 = u1.ok_or(Error::DefinitionUnsatisfiable { n })?;
    Ok(UPair { u1, u2 })
}

/// Recursive thresholds for every pile size up to a bound.
#[derive(Debug, Clone)]
pub struct UpperTable {
    classic: ClassicTable,
    pairs: Vec<UPair>,
}

impl UpperTable {
    pub fn new(rules: &RuleSet, n_max: u64) -> Result<UpperTable> {
        let classic = ClassicTable::new(rules, n_max);
        let mut pairs = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            let pair = upper_step(n, rules.moves(), |m| classic.winner(m), &pairs)?;
            pairs.push(pair);
        }
        Ok(UpperTable { classic, pairs })
    }

    pub fn pair(&self, n: u64) -> UPair {
        self.pairs[n as usize]
    }

    pub fn classic_winner(&self, n: u64) -> Player {
        self.classic.winner(n)
    }
}

pub fn upper_recursive(rules: &RuleSet, n: u64) -> Result<UPair> {
    Ok(UpperTable::new(rules, n)?.pair(n))
}

fn half_exact(twice: u64, n: u64) -> Result<u64> {
    if twice.is_multiple_of(2) {
        Ok(twice / 2)
    } else {
        Err(Error::NonIntegralValue { n })
    }
}

fn ceil_half(x: u64) -> u64 {
    x.div_ceil(2)
}

/// Closed-form `U_win(n)` and `U_lose(n)` for the supported families.
///
/// `{1,2}` is `{1,L}` with L = 2 and `{1,2,3}` is `{1,L,L+1}` with L = 2.
pub fn upper_closed(family: Family, n: u64) -> Result<WinLose> {
    let (u_win, u_lose) = match family {
        Family::OneTwo | Family::OneLEven(_) => {
            let l = family.param().expect("supported");
            let ResidueDecomposition { k, i, .. } = ResidueDecomposition::new(n, l + 1);
            let u_win = if i < l {
                l * k + ceil_half(i)
            } else {
                l * (k + 1)
            };
            let u_lose = if n < l {
                n / 2
            } else if i < l {
                // L(k - 1/2): here n >= L and i < L force k >= 1, and L is even
                half_exact(2 * l * k - l, n)? + i / 2 + 1
            } else {
                half_exact(2 * l * k + l, n)?
            };
            (u_win, u_lose)
        }
        Family::OneTwoThree | Family::OneLL1Even(_) => {
            let l = family.param().expect("supported");
            let ResidueDecomposition { k, i, .. } = ResidueDecomposition::new(n, 2 * l);
            // 3Lk/2 is whole because L is even
            let base = half_exact(3 * l * k, n)?;
            let u_win = if i < l {
                base + ceil_half(i)
            } else {
                base + l + ceil_half(i - l)
            };
            let u_lose = if i < l + 1 {
                base + i / 2
            } else {
                base + l + (i - l) / 2
            };
            (u_win, u_lose)
        }
        Family::OneLL1Odd(l) => {
            let ResidueDecomposition { k, i, .. } = ResidueDecomposition::new(n, 2 * l + 1);
            // (3L+1)k/2 is whole because L is odd
            let base = half_exact((3 * l + 1) * k, n)?;
            let u_win = if i < l + 1 {
                base + ceil_half(i)
            } else {
                base + l + ceil_half(i - l)
            };
            let u_lose = if i < l + 2 {
                base + i / 2
            } else {
                base + l + (i - l) / 2
            };
            (u_win, u_lose)
        }
        Family::Unsupported => return Err(Error::UnsupportedFamily),
    };
    Ok(WinLose { u_win, u_lose })
}

/// `M₁(n)`, `M₂(n)` for `{1,L}` and `{1,L,L+1}`.
pub fn middle_thresholds(n: u64) -> MiddlePair {
    if n.is_multiple_of(2) {
        MiddlePair {
            m1: n / 2 + 1,
            m2: n / 2,
        }
    } else {
        MiddlePair {
            m1: n.div_ceil(2),
            m2: n.div_ceil(2),
        }
    }
}

/// Thresholds for `n` stones, without placing any bankroll.
pub fn thresholds(rules: &RuleSet, n: u64) -> Result<(Family, Player, UPair, MiddlePair)> {
    let family = classify_family(rules);
    if family.is_supported() {
        return closed_thresholds(family, n);
    }
    let table = UpperTable::new(rules, n)?;
    Ok((
        family,
        table.classic_winner(n),
        table.pair(n),
        middle_thresholds(n),
    ))
}

fn closed_thresholds(family: Family, n: u64) -> Result<(Family, Player, UPair, MiddlePair)> {
    let winner = win_classic_closed(family, n)?;
    let u = upper_closed(family, n)?.to_pair(winner);
    Ok((family, winner, u, middle_thresholds(n)))
}

fn profile(parts: (Family, Player, UPair, MiddlePair), n: u64, d: Cash, e: Cash) -> ClassProfile {
    let (family, classic_winner, u, m) = parts;
    ClassProfile {
        stones: n,
        family,
        u,
        m,
        band1: ClassBand::of(d, u.u1, m.m1),
        band2: ClassBand::of(e, u.u2, m.m2),
        classic_winner,
    }
}

/// Class profile for `n` stones and bankrolls `d`, `e`. Supported families use
/// the closed forms; anything else goes through the recursive definition.
pub fn classify(rules: &RuleSet, n: u64, d: Cash, e: Cash) -> Result<ClassProfile> {
    Ok(profile(thresholds(rules, n)?, n, d, e))
}

/// Closed-form-only profile; constant time.
pub fn classify_closed(family: Family, n: u64, d: Cash, e: Cash) -> Result<ClassProfile> {
    Ok(profile(closed_thresholds(family, n)?, n, d, e))
}

/// Pile sizes `n ≤ n_max` where a middle threshold exceeds the matching
/// upper threshold (`M₁ > U₁` or `M₂ > U₂`).
pub fn middle_above_upper(rules: &RuleSet, n_max: u64) -> Result<Vec<u64>> {
    let table = UpperTable::new(rules, n_max)?;
    Ok((0..=n_max)
        .filter(|&n| {
            let m = middle_thresholds(n);
            let u = table.pair(n);
            m.m1 > u.u1 || m.m2 > u.u2
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;

    fn rules(s: &str) -> RuleSet {
        s.parse().unwrap()
    }

    fn supported_families() -> Vec<Family> {
        let mut v = vec![Family::OneTwo, Family::OneTwoThree];
        for l in [4, 6, 8] {
            v.push(Family::OneLEven(l));
            v.push(Family::OneLL1Even(l));
        }
        for l in [3, 5, 7] {
            v.push(Family::OneLL1Odd(l));
        }
        v
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(upper_recursive(&rules("1,3,4"), 9).unwrap().u1, 6);
        assert_eq!(
            upper_recursive(&rules("1,6"), 0).unwrap(),
            UPair { u1: 0, u2: 0 }
        );
        let p = upper_recursive(&rules("1,6"), 43).unwrap();
        assert_eq!(p.u1, 37);
        assert_eq!(p.u2, 34);
    }

    #[test]
    fn unsatisfiable_side_condition_is_reported() {
        // When Player 2 wins, U2(n) is the max of U1(n-a), so the maximizing
        // move always meets the side condition. The only way to run dry is a
        // winner table claiming W(n) = 1 with no losing successor.
        let pairs = [UPair { u1: 0, u2: 0 }, UPair { u1: 5, u2: 0 }];
        let winner = |_: u64| Player::P1;
        let err = upper_step(2, &[1, 2], winner, &pairs).unwrap_err();
        assert_eq!(err, Error::DefinitionUnsatisfiable { n: 2 });
        // a consistent table at the same n succeeds
        let pairs = [UPair { u1: 0, u2: 0 }, UPair { u1: 1, u2: 0 }];
        let classic = |m: u64| {
            if m.is_multiple_of(3) {
                Player::P2
            } else {
                Player::P1
            }
        };
        assert_eq!(
            upper_step(2, &[1, 2], classic, &pairs).unwrap(),
            UPair { u1: 2, u2: 1 }
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(upper_closed(Family::OneLEven(6), 43).unwrap().u_win, 37);
        assert_eq!(
            upper_closed(Family::OneLL1Odd(3), 42).unwrap(),
            WinLose {
                u_win: 30,
                u_lose: 30
            }
        );
        for f in supported_families() {
            assert_eq!(
                upper_closed(f, 0).unwrap(),
                WinLose {
                    u_win: 0,
                    u_lose: 0
                },
                "{f}"
            );
        }
        assert_eq!(
            upper_closed(Family::Unsupported, 5),
            Err(Error::UnsupportedFamily)
        );
    }

    #[test]
    fn closed_form_matches_oracle_scan() {
        let mut o = Oracle::new(rules("1,6"));
        assert_eq!(o.min_winning_cash(43), Some(37));
        let mut o = Oracle::new(rules("1,3,4"));
        assert_eq!(o.winner_min_cash(42), (Player::P2, 30));
    }

    #[test]
    fn closed_and_recursive_agree() {
        for f in supported_families() {
            let rules = f.rules().unwrap();
            let table = UpperTable::new(&rules, 300).unwrap();
            for n in 0..=300 {
                let winner = table.classic_winner(n);
                let closed = upper_closed(f, n).unwrap().to_pair(winner);
                assert_eq!(closed, table.pair(n), "{f} n={n}");
            }
        }
    }

    #[test]
    fn upper_class_lemma_and_minimality() {
        for f in supported_families() {
            let rules = f.rules().unwrap();
            let table = UpperTable::new(&rules, 120).unwrap();
            let mut o = Oracle::new(rules);
            o.prepare(120);
            for n in 0..=120 {
                let UPair { u1, u2 } = table.pair(n);
                match table.classic_winner(n) {
                    Player::P1 => {
                        assert_eq!(
                            o.lookup(n, u1.into(), Cash::Infinite),
                            Some(Player::P1),
                            "{f} n={n}"
                        );
                        if u1 >= 1 {
                            assert_eq!(
                                o.lookup(n, (u1 - 1).into(), Cash::Infinite),
                                Some(Player::P2)
                            );
                        }
                    }
                    Player::P2 => {
                        assert_eq!(
                            o.lookup(n, Cash::Infinite, u2.into()),
                            Some(Player::P2),
                            "{f} n={n}"
                        );
                        if u2 >= 1 {
                            assert_eq!(
                                o.lookup(n, Cash::Infinite, (u2 - 1).into()),
                                Some(Player::P1)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn middle_examples() {
        assert_eq!(middle_thresholds(43), MiddlePair { m1: 22, m2: 22 });
        assert_eq!(middle_thresholds(48), MiddlePair { m1: 25, m2: 24 });
        assert_eq!(middle_thresholds(0), MiddlePair { m1: 1, m2: 0 });
        for n in 0..200 {
            let m = middle_thresholds(n);
            assert!(m.m1 >= m.m2 && m.m1 - m.m2 <= 1);
        }
    }

    #[test]
    fn classify_examples() {
        let a16 = rules("1,6");
        let p = classify(&a16, 43, 37.into(), 22.into()).unwrap();
        assert_eq!((p.band1, p.band2), (ClassBand::Upper, ClassBand::Middle));
        let p = classify(&a16, 43, 21.into(), 22.into()).unwrap();
        assert_eq!((p.band1, p.band2), (ClassBand::Lower, ClassBand::Middle));
        let p = classify(&rules("1,3,4"), 42, Cash::Infinite, 0.into()).unwrap();
        assert_eq!((p.band1, p.band2), (ClassBand::Upper, ClassBand::Lower));
        assert_eq!(p.classic_winner, Player::P2);
        assert_eq!(p.u, UPair { u1: 30, u2: 30 });
    }

    #[test]
    fn classify_unsupported_uses_recursion() {
        let a = rules("2,5");
        let p = classify(&a, 17, 9.into(), 9.into()).unwrap();
        assert_eq!(p.family, Family::Unsupported);
        assert_eq!(p.u, upper_recursive(&a, 17).unwrap());
    }

    #[test]
    fn middle_sits_below_upper_once_the_big_move_fits() {
        // M ≤ U holds once the pile exceeds L; up to there the big move is
        // (almost) unavailable and the upper thresholds are tiny
        for f in supported_families() {
            let rules = f.rules().unwrap();
            let l = rules.moves()[1];
            let bad = middle_above_upper(&rules, 300).unwrap();
            assert!(bad.iter().all(|&n| n <= l), "{f}: {bad:?}");
        }
        assert_eq!(
            middle_above_upper(&rules("1,6"), 300).unwrap(),
            vec![0, 1, 2, 3, 4, 5]
        );
    }
}
