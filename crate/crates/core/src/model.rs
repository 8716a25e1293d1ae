//! Positions, move sets and the single-pile move rules.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One of the two players. Player 1 always moves first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    /// `1` or `2`, as used in the win-function notation.
    pub fn number(self) -> u8 {
        match self {
            Player::P1 => 1,
            Player::P2 => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Player> {
        match n {
            1 => Some(Player::P1),
            2 => Some(Player::P2),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.number())
    }
}

impl FromStr for Player {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "p1" => Ok(Player::P1),
            "2" | "p2" => Ok(Player::P2),
            other => Err(Error::Parse(format!("invalid player `{other}`"))),
        }
    }
}

impl Serialize for Player {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Player {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u8::deserialize(d)?;
        Player::from_number(n)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid player {n}")))
    }
}

/// A player's bankroll: a whole number of dollars, or unlimited.
///
/// `Infinite` orders above every finite amount.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cash {
    Finite(u64),
    Infinite,
}

impl Cash {
    pub fn is_infinite(self) -> bool {
        matches!(self, Cash::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cash::Finite(c) => Some(c),
            Cash::Infinite => None,
        }
    }

    pub fn can_afford(self, cost: u64) -> bool {
        match self {
            Cash::Finite(c) => c >= cost,
            Cash::Infinite => true,
        }
    }

    /// Pays `cost`; `None` if the bankroll is too small.
    pub fn spend(self, cost: u64) -> Option<Cash> {
        match self {
            Cash::Finite(c) => c.checked_sub(cost).map(Cash::Finite),
            Cash::Infinite => Some(Cash::Infinite),
        }
    }

    /// Replaces a finite amount above `stones` by `stones`. Nobody can spend
    /// more than the pile holds, so the game value is unchanged.
    pub fn cap(self, stones: u64) -> Cash {
        match self {
            Cash::Finite(c) => Cash::Finite(c.min(stones)),
            Cash::Infinite => Cash::Infinite,
        }
    }
}

impl From<u64> for Cash {
    fn from(c: u64) -> Self {
        Cash::Finite(c)
    }
}

impl Ord for Cash {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cash::Finite(a), Cash::Finite(b)) => a.cmp(b),
            (Cash::Finite(_), Cash::Infinite) => Ordering::Less,
            (Cash::Infinite, Cash::Finite(_)) => Ordering::Greater,
            (Cash::Infinite, Cash::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Cash {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<u64> for Cash {
    fn eq(&self, other: &u64) -> bool {
        *self == Cash::Finite(*other)
    }
}

impl PartialOrd<u64> for Cash {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Cash::Finite(*other)))
    }
}

impl fmt::Display for Cash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cash::Finite(c) => write!(f, "{c}"),
            Cash::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Cash {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Cash::Infinite),
            _ => s.parse::<u64>().map(Cash::Finite).map_err(|_| {
                Error::Parse(format!(
                    "invalid cash amount `{s}` (expected an integer or `inf`)"
                ))
            }),
        }
    }
}

// Cash travels over the wire as a number, or the string "inf".
impl Serialize for Cash {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cash::Finite(c) => s.serialize_u64(*c),
            Cash::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Cash {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(c) => Ok(Cash::Finite(c)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// The finite move set `A`: distinct positive integers, kept ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleSet {
    moves: Vec<u64>,
}

impl RuleSet {
    /// Builds a rule set from moves in any order. Rejects empty sets, zero,
    /// and repeated values.
    pub fn new(mut moves: Vec<u64>) -> Result<RuleSet> {
        if moves.is_empty() {
            return Err(Error::InvalidRules("the move set is empty".into()));
        }
        if moves.contains(&0) {
            return Err(Error::InvalidRules("moves must be positive".into()));
        }
        moves.sort_unstable();
        if let Some(w) = moves.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidRules(format!("move {} is repeated", w[0])));
        }
        Ok(RuleSet { moves })
    }

    pub fn moves(&self) -> &[u64] {
        &self.moves
    }

    pub fn min_move(&self) -> u64 {
        self.moves[0]
    }

    pub fn max_move(&self) -> u64 {
        self.moves[self.moves.len() - 1]
    }

    pub fn contains(&self, a: u64) -> bool {
        self.moves.binary_search(&a).is_ok()
    }

    pub fn family(&self) -> Family {
        classify_family(self)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for RuleSet {
    type Err = Error;

    /// Parses a comma-separated list such as `1,3,4` (braces optional).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        if body.trim().is_empty() {
            return Err(Error::InvalidRules("the move set is empty".into()));
        }
        let moves = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid move `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        RuleSet::new(moves)
    }
}

impl Serialize for RuleSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.moves.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RuleSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let moves = Vec::<u64>::deserialize(d)?;
        RuleSet::new(moves).map_err(serde::de::Error::custom)
    }
}

/// The move-set families that have closed-form win conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `{1,2}`
    OneTwo,
    /// `{1,L}`, L even and at least 4
    OneLEven(u64),
    /// `{1,2,3}`
    OneTwoThree,
    /// `{1,L,L+1}`, L even and at least 4
    OneLL1Even(u64),
    /// `{1,L,L+1}`, L odd and at least 3
    OneLL1Odd(u64),
    Unsupported,
}

impl Family {
    pub fn is_supported(self) -> bool {
        self != Family::Unsupported
    }

    /// The family parameter `L` (2 for `{1,2}` and `{1,2,3}`).
    pub fn param(self) -> Option<u64> {
        match self {
            Family::OneTwo | Family::OneTwoThree => Some(2),
            Family::OneLEven(l) | Family::OneLL1Even(l) | Family::OneLL1Odd(l) => Some(l),
            Family::Unsupported => None,
        }
    }

    /// The move set this family instance stands for.
    pub fn rules(self) -> Option<RuleSet> {
        let moves = match self {
            Family::OneTwo => vec![1, 2],
            Family::OneTwoThree => vec![1, 2, 3],
            Family::OneLEven(l) => vec![1, l],
            Family::OneLL1Even(l) | Family::OneLL1Odd(l) => vec![1, l, l + 1],
            Family::Unsupported => return None,
        };
        RuleSet::new(moves).ok()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::OneTwo => f.write_str("{1,2}"),
            Family::OneTwoThree => f.write_str("{1,2,3}"),
            Family::OneLEven(l) => write!(f, "{{1,L}} L={l}"),
            Family::OneLL1Even(l) | Family::OneLL1Odd(l) => write!(f, "{{1,L,L+1}} L={l}"),
            Family::Unsupported => f.write_str("unsupported"),
        }
    }
}

/// Routes a rule set to the family whose theorems apply to it.
///
/// `{1,L}` with L odd is deliberately `Unsupported`; it is left to the oracle.
pub fn classify_family(rules: &RuleSet) -> Family {
    match *rules.moves() {
        [1, 2] => Family::OneTwo,
        [1, 2, 3] => Family::OneTwoThree,
        [1, l] if l >= 4 && l % 2 == 0 => Family::OneLEven(l),
        [1, l, m] if m == l + 1 && l >= 4 && l % 2 == 0 => Family::OneLL1Even(l),
        [1, l, m] if m == l + 1 && l >= 3 && l % 2 == 1 => Family::OneLL1Odd(l),
        _ => Family::Unsupported,
    }
}

/// A full position: pile size, both bankrolls, and whose turn it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameState {
    pub stones: u64,
    pub cash1: Cash,
    pub cash2: Cash,
    pub to_move: Player,
}

impl GameState {
    /// Opening position: Player 1 to move.
    pub fn new(stones: u64, cash1: Cash, cash2: Cash) -> GameState {
        GameState {
            stones,
            cash1,
            cash2,
            to_move: Player::P1,
        }
    }

    pub fn cash_of(&self, player: Player) -> Cash {
        match player {
            Player::P1 => self.cash1,
            Player::P2 => self.cash2,
        }
    }

    pub fn mover_cash(&self) -> Cash {
        self.cash_of(self.to_move)
    }

    /// Moves that fit both the pile and the mover's bankroll, ascending.
    /// Empty means the mover has lost.
    pub fn legal_moves(&self, rules: &RuleSet) -> Vec<u64> {
        let cash = self.mover_cash();
        rules
            .moves()
            .iter()
            .copied()
            .take_while(|&a| a <= self.stones && cash.can_afford(a))
            .collect()
    }

    pub fn is_legal(&self, rules: &RuleSet, a: u64) -> bool {
        rules.contains(a) && a <= self.stones && self.mover_cash().can_afford(a)
    }

    pub fn is_terminal(&self, rules: &RuleSet) -> bool {
        let m = rules.min_move();
        m > self.stones || !self.mover_cash().can_afford(m)
    }

    pub fn apply_move(&self, a: u64, rules: &RuleSet) -> Result<GameState> {
        if !self.is_legal(rules, a) {
            return Err(Error::IllegalMove {
                take: a,
                stones: self.stones,
                cash: self.mover_cash(),
            });
        }
        let mut next = *self;
        next.stones -= a;
        let paid = self.mover_cash().spend(a).expect("legality checked above");
        match self.to_move {
            Player::P1 => next.cash1 = paid,
            Player::P2 => next.cash2 = paid,
        }
        next.to_move = self.to_move.opponent();
        Ok(next)
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} d={} e={} ({} to move)",
            self.stones, self.cash1, self.cash2, self.to_move
        )
    }
}
