use std::fmt;

use crate::numerics::Dyadic;

/// A finite union of half-open dyadic intervals `[a, b) ⊆ [0, 1)`.
///
/// These are exactly the clopen subsets of the Cantor space `2^ω` seen
/// through binary expansions. Stored sorted, disjoint and with touching
/// pieces merged, so equality is set equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DyadicSet {
    pieces: Vec<(Dyadic, Dyadic)>,
}

impl DyadicSet {
    pub fn empty() -> Self {
        DyadicSet::default()
    }

    pub fn full() -> Self {
        DyadicSet {
            pieces: vec![(Dyadic::zero(), Dyadic::one())],
        }
    }

    /// Normalizes arbitrary pieces, clipping them to `[0, 1)`.
    pub fn from_pieces(pieces: impl IntoIterator<Item = (Dyadic, Dyadic)>) -> Self {
        let mut v: Vec<(Dyadic, Dyadic)> = pieces
            .into_iter()
            .map(|(a, b)| (a.max(Dyadic::zero()), b.min(Dyadic::one())))
            .filter(|(a, b)| a < b)
            .collect();
        v.sort();
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                Some((_, hi)) if a <= *hi => {
                    if b > *hi {
                        *hi = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        DyadicSet { pieces: out }
    }

    pub fn pieces(&self) -> &[(Dyadic, Dyadic)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == DyadicSet::full()
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor = Dyadic::zero();
        for (a, b) in &self.pieces {
            if &cursor < a {
                out.push((cursor.clone(), a.clone()));
            }
            cursor = b.clone();
        }
        if cursor < Dyadic::one() {
            out.push((cursor, Dyadic::one()));
        }
        DyadicSet { pieces: out }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.pieces.len() && j < other.pieces.len() {
            let (a0, b0) = &self.pieces[i];
            let (a1, b1) = &other.pieces[j];
            let lo = a0.clone().max(a1.clone());
            let hi = b0.clone().min(b1.clone());
            if lo < hi {
                out.push((lo, hi));
            }
            if b0 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        DyadicSet::from_pieces(out)
    }

    pub fn union(&self, other: &Self) -> Self {
        DyadicSet::from_pieces(self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.minus(other).is_empty()
    }

    /// Affine image of `self ∩ [a, a+len_a)` onto `[b, b+len_b)`.
    pub fn transport(&self, from: (&Dyadic, &Dyadic), to: (&Dyadic, &Dyadic)) -> Self {
        let window = DyadicSet::from_pieces([(from.0.clone(), from.1.clone())]);
        let part = self.intersect(&window);
        let (len_a, len_b) = (from.1 - from.0, to.1 - to.0);
        let map = |x: &Dyadic| -> Dyadic {
            // Both lengths are powers of two, so the ratio is an exact shift.
            let scaled = &(x - from.0) * &len_b;
            to.0 + &divide_by_pow2(&scaled, &len_a)
        };
        DyadicSet::from_pieces(part.pieces.iter().map(|(a, b)| (map(a), map(b))))
    }
}

/// `x / d` where `d = 2^{-k}`.
fn divide_by_pow2(x: &Dyadic, d: &Dyadic) -> Dyadic {
    debug_assert!(d.num() == &num_bigint::BigInt::from(1));
    x.shl(d.exp())
}

impl fmt::Display for DyadicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pieces.iter().map(|(a, b)| format!("[{a},{b})")).collect();
        if parts.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&parts.join("∪"))
        }
    }
}
