use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Sub};
use std::str::FromStr;

/// A natural number or `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymCard {
    Fin(u64),
    Omega,
}

impl SymCard {
    pub fn is_omega(self) -> bool {
        self == SymCard::Omega
    }

    pub fn is_finite(self) -> bool {
        !self.is_omega()
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            SymCard::Fin(n) => Some(n),
            SymCard::Omega => None,
        }
    }
}

impl From<u64> for SymCard {
    fn from(n: u64) -> Self {
        SymCard::Fin(n)
    }
}

impl Add for SymCard {
    type Output = SymCard;

    fn add(self, rhs: SymCard) -> SymCard {
        match (self, rhs) {
            (SymCard::Fin(a), SymCard::Fin(b)) => SymCard::Fin(a + b),
            _ => SymCard::Omega,
        }
    }
}

impl Sub<u64> for SymCard {
    type Output = SymCard;

    /// `ω − n = ω`; finite subtraction saturates at zero.
    fn sub(self, rhs: u64) -> SymCard {
        match self {
            SymCard::Fin(a) => SymCard::Fin(a.saturating_sub(rhs)),
            SymCard::Omega => SymCard::Omega,
        }
    }
}

impl Sum for SymCard {
    fn sum<I: Iterator<Item = SymCard>>(iter: I) -> SymCard {
        iter.fold(SymCard::Fin(0), Add::add)
    }
}

impl fmt::Display for SymCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymCard::Fin(n) => write!(f, "{n}"),
            SymCard::Omega => f.write_str("w"),
        }
    }
}

impl FromStr for SymCard {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "w" | "ω" | "omega" => Ok(SymCard::Omega),
            _ => s.parse().map(SymCard::Fin).map_err(|_| format!("bad cardinality `{s}`")),
        }
    }
}
