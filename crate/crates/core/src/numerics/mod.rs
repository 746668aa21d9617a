//! Exact dyadic arithmetic and the nested interval addressing scheme.
//!
//! Every node `σ` of `ω^<ω` owns a closed interval `I_σ ⊆ [0,1]`. The
//! children `I_{σ⌢m}` are affine copies of the base pattern `I_m`, which
//! accumulates at the midpoint of the parent from both sides: even indices
//! ascend from the left, odd indices descend from the right.

mod address;
mod dyadic;
mod interval;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use address::{base_interval, concentration_point, interval_of, Address};
pub use dyadic::Dyadic;
pub(crate) use dyadic::is_pow2;
pub use interval::DyInterval;

/// Exact rational numbers. Cantor-set points are triadic, so general
/// rationals appear alongside dyadics.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse number `{input}`: {reason}")]
pub struct ParseNumberError {
    pub input: String,
    pub reason: &'static str,
}

impl ParseNumberError {
    pub(crate) fn new(input: &str, reason: &'static str) -> Self {
        ParseNumberError {
            input: input.to_owned(),
            reason,
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a/2^k`, `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational, ParseNumberError> {
    let s = s.trim();
    if let Some((a, k)) = s.split_once("/2^") {
        let num: BigInt = a
            .parse()
            .map_err(|_| ParseNumberError::new(s, "bad numerator"))?;
        let exp: u32 = k
            .parse()
            .map_err(|_| ParseNumberError::new(s, "bad exponent"))?;
        return Ok(Rational::new(num, BigInt::one() << exp));
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .parse()
                .map_err(|_| ParseNumberError::new(s, "bad numerator"))?;
            let q: BigInt = q
                .parse()
                .map_err(|_| ParseNumberError::new(s, "bad denominator"))?;
            if q.is_zero() {
                return Err(ParseNumberError::new(s, "zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| ParseNumberError::new(s, "bad integer"))?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Display adapter: dyadic values print as `a/2^k`, the rest as `p/q`.
pub struct RatText<'a>(pub &'a Rational);

impl fmt::Display for RatText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match Dyadic::from_rational(self.0) {
            Some(d) => write!(f, "{d}"),
            None => write!(f, "{}/{}", self.0.numer(), self.0.denom()),
        }
    }
}

pub fn rational_text(q: &Rational) -> String {
    RatText(q).to_string()
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    // Scale down both sides so huge denominators don't overflow to inf/inf.
    let (n, d) = (q.numer(), q.denom());
    let shift = d.bits().saturating_sub(60).min(n.bits().saturating_sub(60));
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn rat_abs(q: &Rational) -> Rational {
    if q.is_negative() {
        -q.clone()
    } else {
        q.clone()
    }
}

pub fn rat_min(a: Rational, b: Rational) -> Rational {
    if b < a {
        b
    } else {
        a
    }
}

pub fn rat_max(a: Rational, b: Rational) -> Rational {
    if b > a {
        b
    } else {
        a
    }
}
