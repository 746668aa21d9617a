//! Exact queries on the standard middle-thirds set `C ⊆ [0,1]`.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::numerics::{rat, rat_int, Rational};

/// Where a point of `[0,1]` sits relative to `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CantorPos {
    Member,
    /// Inside the removed open interval `(lo, hi)`; both ends lie in `C`.
    Gap { lo: Rational, hi: Rational },
}

/// Follows the ternary expansion of `t ∈ [0,1]` until it enters a removed
/// middle third or revisits a state. Rational inputs have eventually periodic
/// expansions, so this always terminates.
pub fn locate(t: &Rational) -> CantorPos {
    assert!(
        !(t < &Rational::zero() || t > &Rational::one()),
        "cantor query outside [0,1]"
    );
    let third = rat(1, 3);
    let two_thirds = rat(2, 3);
    let mut x = t.clone();
    let mut offset = Rational::zero();
    let mut scale = Rational::one();
    let mut seen = HashSet::new();
    loop {
        if x.is_zero() || x.is_one() {
            return CantorPos::Member;
        }
        if x > third && x < two_thirds {
            return CantorPos::Gap {
                lo: &offset + &scale * &third,
                hi: &offset + &scale * &two_thirds,
            };
        }
        if !seen.insert(x.clone()) {
            return CantorPos::Member;
        }
        scale *= &third;
        if x <= third {
            x *= rat_int(3);
        } else {
            offset += &scale * rat_int(2);
            x = x * rat_int(3) - rat_int(2);
        }
    }
}

pub fn contains(t: &Rational) -> bool {
    !(t < &Rational::zero() || t > &Rational::one()) && locate(t) == CantorPos::Member
}

/// Largest point of `C` that is `<= t`, for `t ∈ [0,1]`.
pub fn floor(t: &Rational) -> Rational {
    match locate(t) {
        CantorPos::Member => t.clone(),
        CantorPos::Gap { lo, .. } => lo,
    }
}

/// Smallest point of `C` that is `>= t`, for `t ∈ [0,1]`.
pub fn ceil(t: &Rational) -> Rational {
    match locate(t) {
        CantorPos::Member => t.clone(),
        CantorPos::Gap { hi, .. } => hi,
    }
}

/// Left endpoints of the `2^level` closed intervals of the level-`level` stage.
pub fn level_left_endpoints(level: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    let mut width = Rational::one();
    for _ in 0..level {
        width *= rat(1, 3);
        let shift = &width * rat_int(2);
        let right: Vec<Rational> = out.iter().map(|a| a + &shift).collect();
        out.extend(right);
    }
    out
}

/// Length of each level-`level` interval, `3^{-level}`.
pub fn level_width(level: u32) -> Rational {
    Rational::new(One::one(), num_bigint::BigInt::from(3u32).pow(level))
}

/// All `2^{level+1}` endpoints of the level-`level` stage, sorted.
pub fn level_endpoints(level: u32) -> Vec<Rational> {
    let w = level_width(level);
    let mut out = Vec::with_capacity(2usize << level);
    for a in level_left_endpoints(level) {
        let b = &a + &w;
        out.push(a);
        out.push(b);
    }
    out.sort();
    out
}
