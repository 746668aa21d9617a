use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ParseNumberError, Rational};

/// An exact binary rational `num / 2^exp`.
///
/// Values are kept in canonical form: either `exp == 0`, or `num` is odd.
/// Zero is always `0 / 2^0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(n, 0)
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Dyadic::new(1, k)
    }

    pub fn half() -> Self {
        Dyadic::pow2_neg(1)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(u64::from(self.exp)) as u32;
        if shift > 0 {
            self.num >>= shift;
            self.exp -= shift;
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let exp = self.exp.max(other.exp);
        let a = &self.num << (exp - self.exp);
        let b = &other.num << (exp - other.exp);
        (a, b, exp)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Multiplies by `2^-k`.
    pub fn shr(&self, k: u32) -> Dyadic {
        Dyadic::new(self.num.clone(), self.exp + k)
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: u32) -> Dyadic {
        if k <= self.exp {
            Dyadic::new(self.num.clone(), self.exp - k)
        } else {
            Dyadic::new(&self.num << (k - self.exp), 0)
        }
    }

    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        (self + other).shr(1)
    }

    pub fn min(self, other: Dyadic) -> Dyadic {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Dyadic) -> Dyadic {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    /// Exact conversion back from a rational whose denominator is a power of two.
    pub fn from_rational(q: &Rational) -> Option<Dyadic> {
        let denom = q.denom();
        if denom.is_negative() {
            return None;
        }
        let tz = denom.trailing_zeros()?;
        if denom != &(BigInt::one() << tz) {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), u32::try_from(tz).ok()?))
    }

    /// Lossy conversion for plotting and float-based oracles only.
    pub fn to_f64(&self) -> f64 {
        super::rational_to_f64(&self.to_rational())
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a + b, exp)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, exp) = self.aligned(rhs);
        Dyadic::new(a - b, exp)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

/// Text form `a/2^k`, e.g. `13/2^4`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = ParseNumberError;

    /// Accepts `a/2^k`, a plain integer, or `p/q` with `q` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((a, k)) = s.split_once("/2^") {
            let num: BigInt = a
                .parse()
                .map_err(|_| ParseNumberError::new(s, "bad numerator"))?;
            let exp: u32 = k
                .parse()
                .map_err(|_| ParseNumberError::new(s, "bad exponent"))?;
            return Ok(Dyadic::new(num, exp));
        }
        let q = super::parse_rational(s)?;
        Dyadic::from_rational(&q).ok_or_else(|| ParseNumberError::new(s, "not a dyadic rational"))
    }
}

/// `true` iff `n` is a positive power of two.
pub(crate) fn is_pow2(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Dyadic::new(4, 3), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 9).exp(), 0);
        assert_eq!(Dyadic::new(6, 0).to_string(), "6/2^0");
        assert_eq!(Dyadic::new(12, 4).to_string(), "3/2^2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(d("13/2^4"), Dyadic::new(13, 4));
        assert_eq!(d("1/4"), Dyadic::new(1, 2));
        assert_eq!(d("-3"), Dyadic::from_int(-3));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("x/2^3".parse::<Dyadic>().is_err());
    }

    #[test]
    fn ring_ops_and_order() {
        let a = d("3/2^3");
        let b = d("5/2^2");
        assert_eq!(&a + &b, d("13/2^3"));
        assert_eq!(&b - &a, d("7/2^3"));
        assert_eq!(&a * &b, d("15/2^5"));
        assert!(a < b);
        assert_eq!(a.midpoint(&b), d("13/2^4"));
        assert_eq!(d("1/2^1").shl(3), d("4"));
    }

    #[test]
    fn rational_roundtrip() {
        let a = d("-7/2^5");
        assert_eq!(Dyadic::from_rational(&a.to_rational()), Some(a));
        assert_eq!(Dyadic::from_rational(&Rational::new(1.into(), 3.into())), None);
    }
}
