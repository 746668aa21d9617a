use std::fmt;
use std::str::FromStr;

use super::{Dyadic, DyInterval, ParseNumberError};

/// A node of `ω^<ω`: a finite sequence of naturals. The empty sequence is the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(Vec<u32>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn from_slice(seq: &[u32]) -> Self {
        Address(seq.to_vec())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, m: u32) -> Address {
        let mut seq = self.0.clone();
        seq.push(m);
        Address(seq)
    }

    pub fn parent(&self) -> Option<Address> {
        let (_, init) = self.0.split_last()?;
        Some(Address(init.to_vec()))
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `self ⌢ other`.
    pub fn concat(&self, other: &Address) -> Address {
        let mut seq = self.0.clone();
        seq.extend_from_slice(&other.0);
        Address(seq)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("<>");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromStr for Address {
    type Err = ParseNumberError;

    /// Dot-separated naturals; `<>` (or `.`) is the root.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "<>" || s == "." {
            return Ok(Address::root());
        }
        s.split('.')
            .map(|part| {
                part.parse::<u32>()
                    .map_err(|_| ParseNumberError::new(s, "bad address component"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Address)
    }
}

/// The `m`-th interval of the base pattern in `[0,1]`; its length is `2^{-m-2}`.
///
/// `m = 2n` is centred in the block `[½(1−2^{-n}), ½(1−2^{-n-1})]` left of `½`;
/// `m = 2n+1` is centred in the mirrored block `[½(1+2^{-n-1}), ½(1+2^{-n})]`.
pub fn base_interval(m: u32) -> DyInterval {
    let n = m / 2;
    let half = Dyadic::half();
    let (block_lo, block_hi) = if m.is_multiple_of(2) {
        (
            &half - &Dyadic::pow2_neg(n + 1),
            &half - &Dyadic::pow2_neg(n + 2),
        )
    } else {
        (
            &half + &Dyadic::pow2_neg(n + 2),
            &half + &Dyadic::pow2_neg(n + 1),
        )
    };
    let center = block_lo.midpoint(&block_hi);
    let half_len = Dyadic::pow2_neg(m + 3);
    DyInterval::new(&center - &half_len, &center + &half_len).expect("positive length")
}

/// `I_σ`: the root owns `[0,1]`, and `I_{σ⌢m}` is `base_interval(m)` copied affinely into `I_σ`.
pub fn interval_of(addr: &Address) -> DyInterval {
    addr.as_slice()
        .iter()
        .fold(DyInterval::unit(), |acc, &m| acc.affine_image(&base_interval(m)))
}

/// Midpoint of `I_σ`, the unique accumulation point of the family `I_{σ⌢m}`.
pub fn concentration_point(addr: &Address) -> Dyadic {
    interval_of(addr).midpoint()
}
