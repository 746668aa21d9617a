use std::fmt;
use std::str::FromStr;

use super::{Dyadic, ParseNumberError, Rational};

/// Closed interval `[lo, hi]` with dyadic endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyInterval {
    /// Returns `None` when `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Option<Self> {
        (lo <= hi).then_some(DyInterval { lo, hi })
    }

    pub fn unit() -> Self {
        DyInterval {
            lo: Dyadic::zero(),
            hi: Dyadic::one(),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn length(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.midpoint(&self.hi)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        &self.lo.to_rational() <= x && x <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &DyInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_disjoint(&self, other: &DyInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Image of `inner ⊆ [0,1]` under the affine map `[0,1] → self`.
    pub fn affine_image(&self, inner: &DyInterval) -> DyInterval {
        let len = self.length();
        DyInterval {
            lo: &self.lo + &(&len * &inner.lo),
            hi: &self.lo + &(&len * &inner.hi),
        }
    }

    /// Image of a point `t ∈ [0,1]` under the affine map `[0,1] → self`.
    pub fn affine_point(&self, t: &Dyadic) -> Dyadic {
        &self.lo + &(&self.length() * t)
    }
}

impl fmt::Display for DyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Debug for DyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DyInterval {
    type Err = ParseNumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ParseNumberError::new(s, "expected [lo,hi]"))?;
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| ParseNumberError::new(s, "expected [lo,hi]"))?;
        DyInterval::new(lo.parse()?, hi.parse()?)
            .ok_or_else(|| ParseNumberError::new(s, "lo exceeds hi"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip_and_affine() {
        let i: DyInterval = "[1/2^2,1/2^1]".parse().unwrap();
        assert_eq!(i.to_string(), "[1/2^2,1/2^1]");
        assert_eq!(i.length(), Dyadic::pow2_neg(2));
        let inner: DyInterval = "[1/2,1]".parse().unwrap();
        assert_eq!(i.affine_image(&inner).to_string(), "[3/2^3,1/2^1]");
        assert!("[1,0]".parse::<DyInterval>().is_err());
    }
}
