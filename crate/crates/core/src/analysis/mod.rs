//! Symbolic compacta and the Cantor–Bendixson style operators on them.
//!
//! A [`SymbolicCompactum`] is a finite union of points, intervals, affine
//! Cantor copies and geometric point sequences. Components are kept sorted
//! by their left end and separated by positive gaps, with one exception: a
//! sequence may converge to an endpoint of an interval. Such a pair is
//! *glued* and no clopen set can separate the two.

pub mod cantor;
mod canonical;
mod ops;
pub mod text;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::numerics::{is_pow2, rational_text, Rational};

pub use canonical::{compactum_form, CompactumForm};
pub use ops::{
    cb_derivative, cb_derivative_with_map, cb_equiv, check_property_in, is_atomless_after_derivative,
    is_intom, reduce, reduction_r, satisfies_inf, satisfies_inf_derived,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Point(Rational),
    /// Closed interval with `lo < hi`.
    Interval(Rational, Rational),
    /// The middle-thirds set mapped affinely onto `[lo, hi]`.
    Cantor(Rational, Rational),
    /// `limit ∓ d·2^{-k}` for `k ≥ 0` on each side of positive length, plus `limit`.
    PointSeq {
        limit: Rational,
        lo: Rational,
        hi: Rational,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Point,
    Interval,
    Cantor,
    PointSeq,
}

/// Largest `k` with `2^{-k} >= v`, for `0 < v <= 1`.
fn halvings_above(v: &Rational) -> u32 {
    debug_assert!(v.is_positive() && v <= &Rational::one());
    let q = v.recip();
    // floor(log2 q), corrected from the bit-length estimate.
    let mut k = (q.numer().bits() as i64 - q.denom().bits() as i64).max(0) as u32;
    let pow = |k: u32| Rational::from_integer(BigInt::one() << k);
    while k > 0 && pow(k) > q {
        k -= 1;
    }
    while pow(k + 1) <= q {
        k += 1;
    }
    k
}

fn pow2_neg(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

impl Component {
    pub fn kind(&self) -> Kind {
        match self {
            Component::Point(_) => Kind::Point,
            Component::Interval(..) => Kind::Interval,
            Component::Cantor(..) => Kind::Cantor,
            Component::PointSeq { .. } => Kind::PointSeq,
        }
    }

    pub fn lo(&self) -> &Rational {
        match self {
            Component::Point(p) => p,
            Component::Interval(lo, _) | Component::Cantor(lo, _) => lo,
            Component::PointSeq { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            Component::Point(p) => p,
            Component::Interval(_, hi) | Component::Cantor(_, hi) => hi,
            Component::PointSeq { hi, .. } => hi,
        }
    }

    fn check(&self) -> Result<(), AnalysisError> {
        let ok = match self {
            Component::Point(_) => true,
            Component::Interval(lo, hi) | Component::Cantor(lo, hi) => lo < hi,
            Component::PointSeq { limit, lo, hi } => lo <= limit && limit <= hi && lo < hi,
        };
        if ok {
            Ok(())
        } else {
            Err(AnalysisError::Degenerate(self.to_string()))
        }
    }

    fn unit_coord(lo: &Rational, hi: &Rational, x: &Rational) -> Rational {
        (x - lo) / (hi - lo)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if x < self.lo() || x > self.hi() {
            return false;
        }
        match self {
            Component::Point(p) => p == x,
            Component::Interval(..) => true,
            Component::Cantor(lo, hi) => cantor::contains(&Self::unit_coord(lo, hi, x)),
            Component::PointSeq { limit, lo, hi } => {
                if x == limit {
                    return true;
                }
                let v = if x < limit {
                    (limit - x) / (limit - lo)
                } else {
                    (x - limit) / (hi - limit)
                };
                // v must be exactly 2^{-k}.
                v.numer().is_one() && is_pow2(v.denom())
            }
        }
    }

    /// Largest point of the component that is `<= x`.
    pub fn floor(&self, x: &Rational) -> Option<Rational> {
        if x < self.lo() {
            return None;
        }
        if x >= self.hi() {
            return Some(self.hi().clone());
        }
        Some(match self {
            Component::Point(p) => p.clone(),
            Component::Interval(..) => x.clone(),
            Component::Cantor(lo, hi) => {
                lo + cantor::floor(&Self::unit_coord(lo, hi, x)) * (hi - lo)
            }
            Component::PointSeq { limit, lo, hi } => {
                if x < limit {
                    let d = limit - lo;
                    let k = halvings_above(&((limit - x) / &d));
                    limit - d * pow2_neg(k)
                } else if x == limit {
                    limit.clone()
                } else {
                    let e = hi - limit;
                    let v = (x - limit) / &e;
                    let k = halvings_above(&v);
                    let cand = limit + &e * pow2_neg(k);
                    if &cand <= x {
                        cand
                    } else {
                        limit + e * pow2_neg(k + 1)
                    }
                }
            }
        })
    }

    /// Smallest point of the component that is `>= x`.
    pub fn ceil(&self, x: &Rational) -> Option<Rational> {
        let neg = |q: &Rational| -q.clone();
        self.mirror().floor(&neg(x)).map(|q| neg(&q))
    }

    /// Reflection `x ↦ −x`.
    fn mirror(&self) -> Component {
        let n = |q: &Rational| -q.clone();
        match self {
            Component::Point(p) => Component::Point(n(p)),
            Component::Interval(lo, hi) => Component::Interval(n(hi), n(lo)),
            // The middle-thirds set is symmetric, so mirroring is affine.
            Component::Cantor(lo, hi) => Component::Cantor(n(hi), n(lo)),
            Component::PointSeq { limit, lo, hi } => Component::PointSeq {
                limit: n(limit),
                lo: n(hi),
                hi: n(lo),
            },
        }
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo() + self.hi()) / Rational::from_integer(BigInt::from(2))
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = rational_text;
        match self {
            Component::Point(p) => write!(f, "point {}", t(p)),
            Component::Interval(lo, hi) => write!(f, "interval {} {}", t(lo), t(hi)),
            Component::Cantor(lo, hi) => write!(f, "cantor {} {}", t(lo), t(hi)),
            Component::PointSeq { limit, lo, hi } => {
                write!(f, "seq {} {} {}", t(limit), t(lo), t(hi))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("degenerate component `{0}`")]
    Degenerate(String),
    #[error("components `{0}` and `{1}` overlap or touch")]
    Overlap(String, String),
    #[error("selector index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("selector is not clopen: component {0} is glued to an unselected component")]
    NotClopen(usize),
}

/// A closed subset of `[0,1]` given by finitely many exact components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymbolicCompactum {
    components: Vec<Component>,
}

fn gluable(a: &Component, b: &Component) -> bool {
    // `a` lies left of `b` and they share exactly one point.
    match (a, b) {
        (Component::PointSeq { limit, hi, .. }, Component::Interval(lo, _)) => limit == hi && hi == lo,
        (Component::Interval(_, hi), Component::PointSeq { limit, lo, .. }) => limit == lo && hi == lo,
        _ => false,
    }
}

impl SymbolicCompactum {
    /// Sorts and validates the components.
    pub fn new(mut components: Vec<Component>) -> Result<Self, AnalysisError> {
        for c in &components {
            c.check()?;
        }
        components.sort_by(|a, b| a.lo().cmp(b.lo()).then(a.hi().cmp(b.hi())));
        for w in components.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.hi() < b.lo() || (a.hi() == b.lo() && gluable(a, b)) {
                continue;
            }
            return Err(AnalysisError::Overlap(a.to_string(), b.to_string()));
        }
        Ok(SymbolicCompactum { components })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.components.first().map(Component::lo)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.components.last().map(Component::hi)
    }

    /// Index of the component whose hull could hold `x`.
    fn locate(&self, x: &Rational) -> Option<usize> {
        let i = self.components.partition_point(|c| c.lo() <= x);
        (i > 0).then(|| i - 1)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let Some(i) = self.locate(x) else {
            return false;
        };
        // A glued pair shares its contact point; either side decides.
        self.components[i].contains(x) || (i > 0 && self.components[i - 1].contains(x))
    }

    /// Largest point of the set `<= x`.
    pub fn floor(&self, x: &Rational) -> Option<Rational> {
        let i = self.locate(x)?;
        self.components[i].floor(x)
    }

    /// Smallest point of the set `>= x`.
    pub fn ceil(&self, x: &Rational) -> Option<Rational> {
        let i = self.components.partition_point(|c| c.hi() < x);
        self.components.get(i)?.ceil(x)
    }

    /// Pairs `(i, i+1)` of glued neighbours.
    pub fn glued_pairs(&self) -> Vec<(usize, usize)> {
        (1..self.components.len())
            .filter(|&i| self.components[i - 1].hi() == self.components[i].lo())
            .map(|i| (i - 1, i))
            .collect()
    }

    /// Maximal runs of glued components; every clopen set is a union of units.
    pub fn units(&self) -> Vec<Vec<usize>> {
        let mut units: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.components.len() {
            let glued = i > 0 && self.components[i - 1].hi() == self.components[i].lo();
            match units.last_mut() {
                Some(u) if glued => u.push(i),
                _ => units.push(vec![i]),
            }
        }
        units
    }

    pub fn is_glued(&self, i: usize) -> bool {
        let c = &self.components;
        (i > 0 && c[i - 1].hi() == c[i].lo()) || (i + 1 < c.len() && c[i].hi() == c[i + 1].lo())
    }

    /// Checks index range and clopen-ness of a selector.
    pub fn check_selector(&self, sel: &ClopenSelector) -> Result<(), AnalysisError> {
        if let Some(&i) = sel.0.iter().find(|&&i| i >= self.len()) {
            return Err(AnalysisError::IndexOutOfRange(i));
        }
        for (a, b) in self.glued_pairs() {
            if sel.contains(a) != sel.contains(b) {
                return Err(AnalysisError::NotClopen(if sel.contains(a) { a } else { b }));
            }
        }
        Ok(())
    }

    /// Every clopen selector, in lexicographic order of the unit bitmask.
    pub fn clopen_selectors(&self) -> Vec<ClopenSelector> {
        let units = self.units();
        assert!(units.len() < 30, "too many units to enumerate");
        (0u32..1 << units.len())
            .map(|mask| {
                ClopenSelector(
                    units
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .flat_map(|(_, u)| u.iter().copied())
                        .collect(),
                )
            })
            .collect()
    }

    pub fn all(&self) -> ClopenSelector {
        ClopenSelector((0..self.len()).collect())
    }

    pub fn restrict(&self, sel: &ClopenSelector) -> SymbolicCompactum {
        SymbolicCompactum {
            components: sel.0.iter().map(|&i| self.components[i].clone()).collect(),
        }
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.components.iter().filter(|c| c.kind() == kind).count()
    }
}

impl fmt::Display for SymbolicCompactum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print_compactum(self))
    }
}

/// A set of component indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ClopenSelector(pub BTreeSet<usize>);

impl ClopenSelector {
    pub fn of(indices: impl IntoIterator<Item = usize>) -> Self {
        ClopenSelector(indices.into_iter().collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for ClopenSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
