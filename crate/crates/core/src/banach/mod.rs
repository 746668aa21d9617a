//! Piecewise-linear functions on `[0,1]` restricted to a compactum, with
//! exact sup norms.

mod family;
pub mod text;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::analysis::{Component, SymbolicCompactum};
use crate::numerics::{rat, rat_abs, rat_max, rational_text, Dyadic, Rational};

pub use family::{dense_points, separating, DenseFamily, dense_family};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BanachError {
    #[error("breakpoints must increase strictly from 0 to 1")]
    Breakpoints,
    #[error("functions live on different hosts")]
    HostMismatch,
    #[error("host is empty")]
    EmptyHost,
    #[error("tooth needs two distinct points")]
    EqualPoints,
    #[error("{0} is not a point of the host")]
    NotInHost(String),
    #[error("radius must be positive")]
    Radius,
}

/// A continuous piecewise-linear function on `[0,1]`, given by its
/// breakpoints; the first is at 0 and the last at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLFunction {
    points: Vec<(Rational, Rational)>,
}

impl PLFunction {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, BanachError> {
        let ok = points.len() >= 2
            && points[0].0.is_zero()
            && points.last().is_some_and(|p| p.0 == rat(1, 1))
            && points.windows(2).all(|w| w[0].0 < w[1].0);
        if ok {
            Ok(PLFunction { points })
        } else {
            Err(BanachError::Breakpoints)
        }
    }

    pub fn constant(c: Rational) -> Self {
        PLFunction {
            points: vec![(rat(0, 1), c.clone()), (rat(1, 1), c)],
        }
    }

    pub fn zero() -> Self {
        PLFunction::constant(rat(0, 1))
    }

    /// Interpolates inner breakpoints and extends flat to `[0,1]`.
    pub fn through(inner: Vec<(Rational, Rational)>) -> Result<Self, BanachError> {
        let (Some(first), Some(last)) = (inner.first().cloned(), inner.last().cloned()) else {
            return Ok(PLFunction::zero());
        };
        let mut pts = Vec::with_capacity(inner.len() + 2);
        if !first.0.is_zero() {
            pts.push((rat(0, 1), first.1));
        }
        pts.extend(inner);
        if last.0 != rat(1, 1) {
            pts.push((rat(1, 1), last.1));
        }
        PLFunction::new(pts)
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Value at `x`, clamped to `[0,1]`.
    pub fn eval(&self, x: &Rational) -> Rational {
        let i = self.points.partition_point(|p| &p.0 <= x);
        if i == 0 {
            return self.points[0].1.clone();
        }
        if i == self.points.len() {
            return self.points[i - 1].1.clone();
        }
        let ((x0, y0), (x1, y1)) = (&self.points[i - 1], &self.points[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    fn combine(&self, other: &Self, op: impl Fn(Rational, Rational) -> Rational) -> Self {
        let mut xs: Vec<Rational> = self.points.iter().chain(&other.points).map(|p| p.0.clone()).collect();
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = op(self.eval(&x), other.eval(&x));
                (x, y)
            })
            .collect();
        PLFunction { points }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        PLFunction {
            points: self.points.iter().map(|(x, y)| (x.clone(), y * q)).collect(),
        }
    }

    /// `sup |f|` over `[0,1]`, attained at a breakpoint.
    pub fn interval_sup(&self) -> Rational {
        self.points.iter().map(|p| rat_abs(&p.1)).fold(Rational::zero(), rat_max)
    }

    /// Exact `sup |f|` over a closed set. On each linear piece `|f|` is
    /// convex, so the extreme points of the set inside the piece suffice.
    pub fn sup_over(&self, s: &SymbolicCompactum) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for w in self.points.windows(2) {
            let (a, b) = (&w[0].0, &w[1].0);
            let lo = s.ceil(a).filter(|p| p <= b);
            let hi = s.floor(b).filter(|p| p >= a);
            for x in lo.into_iter().chain(hi) {
                let v = rat_abs(&self.eval(&x));
                best = Some(best.map_or(v.clone(), |m| rat_max(m, v)));
            }
        }
        best
    }

    /// Maximum of `|f|` over the breakpoints that lie in `s`.
    pub fn breakpoint_sup(&self, s: &SymbolicCompactum) -> Option<Rational> {
        self.points
            .iter()
            .filter(|p| s.contains(&p.0))
            .map(|p| rat_abs(&p.1))
            .reduce(rat_max)
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("plf")?;
        for (x, y) in &self.points {
            write!(f, " ({},{})", rational_text(x), rational_text(y))?;
        }
        Ok(())
    }
}

/// An element of `C[host; ℝ]` represented by a function on `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostedFunction {
    pub f: PLFunction,
    pub host: SymbolicCompactum,
}

impl HostedFunction {
    pub fn new(f: PLFunction, host: SymbolicCompactum) -> Result<Self, BanachError> {
        if host.is_empty() {
            return Err(BanachError::EmptyHost);
        }
        Ok(HostedFunction { f, host })
    }

    fn same_host(&self, other: &Self) -> Result<(), BanachError> {
        if self.host == other.host {
            Ok(())
        } else {
            Err(BanachError::HostMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, BanachError> {
        self.same_host(other)?;
        Ok(HostedFunction {
            f: self.f.add(&other.f),
            host: self.host.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BanachError> {
        self.same_host(other)?;
        Ok(HostedFunction {
            f: self.f.sub(&other.f),
            host: self.host.clone(),
        })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        HostedFunction {
            f: self.f.scale(q),
            host: self.host.clone(),
        }
    }

    /// `sup_{x ∈ host} |f(x)|`, exactly.
    pub fn sup_norm(&self) -> Rational {
        self.f.sup_over(&self.host).expect("host is non-empty")
    }

    /// Largest `|f|` over breakpoints in the host; zero when none lies there.
    pub fn breakpoint_sup(&self) -> Rational {
        self.f.breakpoint_sup(&self.host).unwrap_or_else(Rational::zero)
    }

    pub fn interval_sup(&self) -> Rational {
        self.f.interval_sup()
    }

    /// Whether every breakpoint lies in the host, so that the sup over the
    /// host is the sup over `[0,1]`.
    pub fn breaks_in_host(&self) -> bool {
        self.f.points.iter().all(|p| self.host.contains(&p.0))
    }

    pub fn dist(&self, other: &Self) -> Result<Rational, BanachError> {
        Ok(self.sub(other)?.sup_norm())
    }
}

/// A function of the host that vanishes at `x` and equals 1 at `y`.
///
/// It is a hat of half-width `|x−y|/2` centred at `y`, clipped to `[0,1]`.
pub fn tooth(host: &SymbolicCompactum, x: &Rational, y: &Rational) -> Result<HostedFunction, BanachError> {
    for p in [x, y] {
        if !host.contains(p) {
            return Err(BanachError::NotInHost(rational_text(p)));
        }
    }
    if x == y {
        return Err(BanachError::EqualPoints);
    }
    let h = rat_abs(&(x - y)) / rat(2, 1);
    HostedFunction::new(hat(y, &h), host.clone())
}

/// `max(0, r − |x−c|)/r` on `[0,1]`.
fn hat(c: &Rational, r: &Rational) -> PLFunction {
    let value = |x: &Rational| rat_max(Rational::zero(), (r - rat_abs(&(x - c))) / r);
    let mut xs = vec![rat(0, 1), rat(1, 1)];
    xs.extend([c - r, c.clone(), c + r].into_iter().filter(|x| !x.is_negative() && x <= &rat(1, 1)));
    xs.sort();
    xs.dedup();
    PLFunction {
        points: xs
            .into_iter()
            .map(|x| {
                let v = value(&x);
                (x, v)
            })
            .collect(),
    }
}

/// The generalised tooth `f_B(x) = max(0, r − d(x,c))/r` of the ball `B(c,r)`.
pub fn generalized_tooth(c: &Dyadic, r: &Dyadic) -> Result<PLFunction, BanachError> {
    if r.is_zero() || r.is_negative() {
        return Err(BanachError::Radius);
    }
    Ok(hat(&c.to_rational(), &r.to_rational()))
}

/// `f_{B(c,r)} − f_{B(c,r/2)}` on a host holding `c` and the points 0 and 1.
///
/// The difference vanishes at the centre and outside the outer ball, so the
/// host sup is 0 while the sup over `[0,1]` is 1/2.
pub fn equicentric_difference(c: &Dyadic, r: &Dyadic) -> Result<HostedFunction, BanachError> {
    let f = generalized_tooth(c, r)?.sub(&generalized_tooth(c, &r.shr(1))?);
    let mut pts = vec![rat(0, 1), c.to_rational(), rat(1, 1)];
    pts.dedup();
    let host = SymbolicCompactum::new(pts.into_iter().map(Component::Point).collect())
        .expect("distinct points");
    HostedFunction::new(f, host)
}
