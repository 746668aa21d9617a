//! Finite covers, ball intersection decisions and clopen partitions.

mod partitions;
pub mod text;

use num_traits::{One, Zero};

use crate::analysis::{cantor, Component, SymbolicCompactum};
use crate::numerics::{rat, rat_max, rat_min, Dyadic, Rational};

pub use partitions::{clopen_partitions, parts_intersect, ClopenPart, Partitions, Piece};

/// The open ball `B(center, radius)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicBall {
    pub center: Rational,
    pub radius: Dyadic,
}

impl BasicBall {
    pub fn new(center: Rational, radius: Dyadic) -> Self {
        BasicBall { center, radius }
    }

    fn bounds(&self) -> (Rational, Rational) {
        let r = self.radius.to_rational();
        (&self.center - &r, &self.center + r)
    }
}

/// A finite open `2^{-n}`-cover.
///
/// `excluded` lists index pairs whose open and closed balls disagree about
/// meeting the set. Such pairs cannot always be avoided with radius exactly
/// `2^{-n}`, for instance two isolated points `2^{1-n}` apart with a third
/// point in the middle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverCertificate {
    pub n: u32,
    pub balls: Vec<BasicBall>,
    pub excluded: Vec<(usize, usize)>,
}

impl CoverCertificate {
    /// `h(n)`: the number of balls.
    pub fn h(&self) -> usize {
        self.balls.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("ball {0} has radius other than 2^-n")]
    Radius(usize),
    #[error("ball {0} is centred off the set")]
    Center(usize),
    #[error("the balls miss a point of the set near {0}")]
    Uncovered(String),
}

/// Cell widths tried for intervals, as multiples of the radius; each is
/// below 2 so a cell lies inside the ball at its midpoint.
const CELL_FACTORS: [(i64, i64); 6] = [(3, 2), (5, 4), (1, 1), (7, 4), (9, 8), (3, 4)];

fn interval_centers(lo: &Rational, hi: &Rational, cell: &Rational) -> Vec<Rational> {
    let two = rat(2, 1);
    let mut out = Vec::new();
    let mut a = lo.clone();
    while &a < hi {
        let b = rat_min(&a + cell, hi.clone());
        out.push((&a + &b) / &two);
        a = b;
    }
    out
}

/// Smallest level whose Cantor intervals are shorter than `r`.
fn cantor_level(len: &Rational, r: &Rational) -> u32 {
    let mut level = 0;
    let mut w = len.clone();
    while &w >= r {
        w /= rat(3, 1);
        level += 1;
    }
    level
}

fn cantor_centers(lo: &Rational, hi: &Rational, r: &Rational, variant: usize) -> Vec<Rational> {
    let len = hi - lo;
    let level = cantor_level(&len, r) + (variant / 2) as u32;
    let width = cantor::level_width(level);
    cantor::level_left_endpoints(level)
        .into_iter()
        .map(|t| if variant.is_multiple_of(2) { t } else { t + &width })
        .map(|t| lo + t * &len)
        .collect()
}

fn seq_centers(limit: &Rational, lo: &Rational, hi: &Rational, r: &Rational) -> Vec<Rational> {
    let mut out = vec![limit.clone()];
    for (d, sign) in [(limit - lo, -1), (hi - limit, 1)] {
        let mut step = d;
        while !step.is_zero() && &step >= r {
            out.push(limit + &step * rat(sign, 1));
            step /= rat(2, 1);
        }
    }
    out
}

/// How far past the first uncovered point a greedy sweep looks for the
/// next centre, as a fraction of the radius.
const SWEEP_FACTORS: [(i64, i64); 6] = [(1, 2), (3, 4), (7, 8), (5, 8), (1, 4), (15, 16)];

/// Left-to-right sweep: centre each ball at the last point of `s` within
/// `δ` of the first uncovered point, then resume at the first point the
/// ball misses. Each ball advances the sweep by at least `r`.
fn sweep_centers(s: &SymbolicCompactum, r: &Rational, delta: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut next = s.min().cloned();
    while let Some(x) = next {
        let c = s.floor(&(&x + delta)).expect("x lies in s");
        next = s.ceil(&(&c + r));
        out.push(c);
    }
    out
}

/// Centres of one candidate cover, sorted.
fn candidate_centers(s: &SymbolicCompactum, r: &Rational, variant: usize) -> Vec<Rational> {
    if variant < SWEEP_FACTORS.len() {
        let (fa, fb) = SWEEP_FACTORS[variant];
        return sweep_centers(s, r, &(r * rat(fa, fb)));
    }
    let variant = variant - SWEEP_FACTORS.len();
    let (fa, fb) = CELL_FACTORS[variant % CELL_FACTORS.len()];
    let cell = r * rat(fa, fb);
    let mut centers = Vec::new();
    for c in s.components() {
        match c {
            Component::Point(p) => centers.push(p.clone()),
            Component::Interval(lo, hi) => centers.extend(interval_centers(lo, hi, &cell)),
            Component::Cantor(lo, hi) => centers.extend(cantor_centers(lo, hi, r, variant % 4)),
            Component::PointSeq { limit, lo, hi } => centers.extend(seq_centers(limit, lo, hi, r)),
        }
    }
    centers.sort();
    centers.dedup();
    centers
}

fn disagreements(s: &SymbolicCompactum, balls: &[BasicBall]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..balls.len() {
        // Balls further apart than the sum of radii agree trivially.
        let reach = balls[i].center.clone() + balls[i].radius.to_rational() * rat(2, 1);
        for j in i + 1..balls.len() {
            if balls[j].center > reach {
                break;
            }
            let (open, closed) = balls_intersect(s, &balls[i], &balls[j]);
            if open != closed {
                out.push((i, j));
            }
        }
    }
    out
}

const VARIANTS: usize = SWEEP_FACTORS.len() + 8;

/// An exact open `2^{-n}`-cover by balls centred on points of `s`.
///
/// Candidates come from greedy sweeps with several look-ahead distances
/// and from per-component grids: cell midpoints on intervals, endpoints of
/// a fine enough level on Cantor sets, and for sequences a ball at the
/// limit plus one per far point. The winner has the fewest open/closed
/// disagreements, listed in the certificate, and then the fewest balls.
pub fn cover(s: &SymbolicCompactum, n: u32) -> CoverCertificate {
    if s.is_empty() {
        return CoverCertificate {
            n,
            ..Default::default()
        };
    }
    let radius = Dyadic::pow2_neg(n);
    let r = radius.to_rational();
    let mut best: Option<CoverCertificate> = None;
    for v in 0..VARIANTS {
        let centers = candidate_centers(s, &r, v);
        // Disagreements only add to the key, so a cover already too large
        // cannot win and is not checked.
        if best.as_ref().is_some_and(|b| (b.excluded.len(), b.h()) <= (0, centers.len())) {
            continue;
        }
        let balls: Vec<BasicBall> = centers.into_iter().map(|c| BasicBall::new(c, radius.clone())).collect();
        let excluded = disagreements(s, &balls);
        let cert = CoverCertificate { n, balls, excluded };
        if best.as_ref().is_none_or(|b| (cert.excluded.len(), cert.h()) < (b.excluded.len(), b.h())) {
            best = Some(cert);
        }
    }
    best.expect("at least one variant")
}

/// Whether `s` meets the open interval `(lo, hi)`.
fn meets_open(s: &SymbolicCompactum, lo: &Rational, hi: &Rational) -> bool {
    if lo >= hi {
        return false;
    }
    let mid = (lo + hi) / rat(2, 1);
    s.ceil(&mid).is_some_and(|c| &c < hi) || s.floor(&mid).is_some_and(|f| &f > lo)
}

/// Whether `s` meets the closed interval `[lo, hi]`.
fn meets_closed(s: &SymbolicCompactum, lo: &Rational, hi: &Rational) -> bool {
    lo <= hi && s.ceil(lo).is_some_and(|c| &c <= hi)
}

/// Decides whether `b₁ ∩ b₂ ∩ s` is non-empty, for the open balls and for
/// the closed balls, in that order.
pub fn balls_intersect(s: &SymbolicCompactum, b1: &BasicBall, b2: &BasicBall) -> (bool, bool) {
    let (l1, h1) = b1.bounds();
    let (l2, h2) = b2.bounds();
    let (lo, hi) = (rat_max(l1, l2), rat_min(h1, h2));
    (meets_open(s, &lo, &hi), meets_closed(s, &lo, &hi))
}

/// Checks a certificate exactly: radii, centres, and that no point of `s`
/// lies outside every ball.
pub fn verify_cover(s: &SymbolicCompactum, cert: &CoverCertificate) -> Result<(), CoverError> {
    let radius = Dyadic::pow2_neg(cert.n);
    for (i, b) in cert.balls.iter().enumerate() {
        if b.radius != radius {
            return Err(CoverError::Radius(i));
        }
        if !s.contains(&b.center) {
            return Err(CoverError::Center(i));
        }
    }
    let mut spans: Vec<(Rational, Rational)> = cert.balls.iter().map(BasicBall::bounds).collect();
    spans.sort();
    // Walk the closed gaps between merged open spans.
    let (Some(min), Some(max)) = (s.min(), s.max()) else {
        return Ok(());
    };
    let mut gap_lo = min - Rational::one();
    for (lo, hi) in spans {
        if lo >= gap_lo {
            if meets_closed(s, &gap_lo, &lo) {
                let p = s.ceil(&gap_lo).expect("met");
                return Err(CoverError::Uncovered(crate::numerics::rational_text(&p)));
            }
            gap_lo = hi;
        } else if hi > gap_lo {
            gap_lo = hi;
        }
    }
    let end = max + Rational::one();
    if meets_closed(s, &gap_lo, &end) {
        let p = s.ceil(&gap_lo).expect("met");
        return Err(CoverError::Uncovered(crate::numerics::rational_text(&p)));
    }
    Ok(())
}
