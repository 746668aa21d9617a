use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::Rng;

use super::{HostedFunction, PLFunction};
use crate::analysis::{cantor, Component, SymbolicCompactum};
use crate::numerics::{rat, Rational};

/// Stage-`n` dense points of the host: the points, `2^n`-grids of the
/// intervals, level-`n` endpoints of the Cantor sets, and the first `n+1`
/// terms on each side of every sequence together with its limit.
pub fn dense_points(host: &SymbolicCompactum, n: u32) -> Vec<Rational> {
    let mut out = Vec::new();
    let steps = 1i64 << n;
    for c in host.components() {
        match c {
            Component::Point(p) => out.push(p.clone()),
            Component::Interval(lo, hi) => {
                let len = hi - lo;
                out.extend((0..=steps).map(|k| lo + &len * rat(k, steps)));
            }
            Component::Cantor(lo, hi) => {
                let len = hi - lo;
                out.extend(cantor::level_endpoints(n).into_iter().map(|t| lo + t * &len));
            }
            Component::PointSeq { limit, lo, hi } => {
                out.push(limit.clone());
                for (d, sign) in [(limit - lo, -1), (hi - limit, 1)] {
                    if d.is_zero() {
                        continue;
                    }
                    out.extend((0..=n).map(|k| limit + &d * rat(sign, 1i64 << k)));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The function through `(x,0)` and `(y,1)`, flat outside them.
pub fn separating(x: &Rational, y: &Rational) -> PLFunction {
    let mut inner = vec![(x.clone(), rat(0, 1)), (y.clone(), rat(1, 1))];
    inner.sort();
    PLFunction::through(inner).expect("distinct points")
}

/// Enumeration of the stage-`n` dense family, see [`dense_family`].
#[derive(Clone, Debug)]
pub struct DenseFamily {
    host: SymbolicCompactum,
    n: u32,
    points: Vec<Rational>,
    /// Inner breakpoint count; 0 stands for the constants.
    m: usize,
    /// Exponent of the exact value denominator.
    k: u32,
    combo: Vec<usize>,
    nums: Vec<i64>,
    done: bool,
}

/// Every function through at most `n` stage-`n` dense points of the host,
/// flat outside them, with values `j/2^k` for `k ≤ n` and `|j/2^k| ≤ n+1`.
///
/// Ordered by breakpoint count, then by denominator, then by the chosen
/// points and values. Breakpoints lie in the host, so each member attains
/// its sup over `[0,1]` on the host.
pub fn dense_family(host: &SymbolicCompactum, n: u32) -> DenseFamily {
    let points = dense_points(host, n);
    let mut fam = DenseFamily {
        host: host.clone(),
        n,
        points,
        m: 0,
        k: 0,
        combo: Vec::new(),
        nums: Vec::new(),
        done: host.is_empty(),
    };
    fam.reset_values();
    fam
}

impl DenseFamily {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    fn bound(&self) -> i64 {
        (i64::from(self.n) + 1) << self.k
    }

    fn reset_values(&mut self) {
        let slots = self.m.max(1);
        self.nums = vec![-self.bound(); slots];
    }

    fn values_fit(&self) -> bool {
        self.k == 0 || self.nums.iter().any(|j| j % 2 != 0)
    }

    fn advance_values(&mut self) -> bool {
        let b = self.bound();
        for j in self.nums.iter_mut().rev() {
            if *j < b {
                *j += 1;
                return true;
            }
            *j = -b;
        }
        false
    }

    fn advance_combo(&mut self) -> bool {
        let (m, total) = (self.m, self.points.len());
        for i in (0..m).rev() {
            if self.combo[i] < total - (m - i) {
                self.combo[i] += 1;
                for j in i + 1..m {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance(&mut self) {
        if self.advance_values() {
            return;
        }
        self.reset_values();
        if self.advance_combo() {
            return;
        }
        if self.k < self.n {
            self.k += 1;
        } else {
            self.k = 0;
            self.m += 1;
            if self.m > self.n as usize || self.m > self.points.len() {
                self.done = true;
                return;
            }
        }
        self.combo = (0..self.m).collect();
        self.reset_values();
    }

    fn current(&self) -> PLFunction {
        let value = |j: i64| Rational::new(BigInt::from(j), BigInt::one() << self.k);
        if self.m == 0 {
            return PLFunction::constant(value(self.nums[0]));
        }
        let inner = self
            .combo
            .iter()
            .zip(&self.nums)
            .map(|(&i, &j)| (self.points[i].clone(), value(j)))
            .collect();
        PLFunction::through(inner).expect("increasing points")
    }

    fn value_ok(&self, y: &Rational) -> bool {
        let den = y.denom();
        let pow = BigInt::one() << self.n;
        let b = Rational::from_integer(BigInt::from(self.n) + 1);
        (&pow % den).is_zero() && y <= &b && y >= &-b
    }

    /// Whether `f` coincides on `[0,1]` with some member of the family.
    pub fn contains(&self, f: &PLFunction) -> bool {
        let mut pts: Vec<(Rational, Rational)> = f.breakpoints().to_vec();
        // Drop breakpoints where the slope does not change.
        let mut i = 1;
        while i + 1 < pts.len() {
            let (a, b, c) = (&pts[i - 1], &pts[i], &pts[i + 1]);
            if (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0) {
                pts.remove(i);
            } else {
                i += 1;
            }
        }
        if pts.len() == 2 && pts[0].1 == pts[1].1 {
            return self.value_ok(&pts[0].1);
        }
        if pts[0].1 == pts[1].1 {
            pts.remove(0);
        }
        let last = pts.len() - 1;
        if pts[last].1 == pts[last - 1].1 {
            pts.pop();
        }
        pts.len() <= self.n as usize
            && pts
                .iter()
                .all(|(x, y)| self.points.binary_search(x).is_ok() && self.value_ok(y))
    }

    /// `count` members drawn at random, each with at least one breakpoint.
    pub fn sample<R: Rng>(&self, rng: &mut R, count: usize) -> Vec<HostedFunction> {
        let max_m = (self.n as usize).min(self.points.len());
        (0..count)
            .map(|_| {
                let f = if max_m == 0 {
                    PLFunction::constant(rat(rng.random_range(-1..=1), 1))
                } else {
                    let m = rng.random_range(1..=max_m);
                    let mut idx = sample(rng, self.points.len(), m).into_vec();
                    idx.sort_unstable();
                    let k = rng.random_range(0..=self.n);
                    let b = (i64::from(self.n) + 1) << k;
                    let inner = idx
                        .into_iter()
                        .map(|i| (self.points[i].clone(), rat(rng.random_range(-b..=b), 1i64 << k)))
                        .collect();
                    PLFunction::through(inner).expect("increasing points")
                };
                HostedFunction {
                    f,
                    host: self.host.clone(),
                }
            })
            .collect()
    }
}

impl Iterator for DenseFamily {
    type Item = HostedFunction;

    fn next(&mut self) -> Option<HostedFunction> {
        while !self.done {
            let fits = self.values_fit();
            let f = fits.then(|| self.current());
            self.advance();
            if let Some(f) = f {
                return Some(HostedFunction {
                    f,
                    host: self.host.clone(),
                });
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::banach::generalized_tooth;
    use crate::numerics::Dyadic;
    use rand::SeedableRng;

    fn unit() -> SymbolicCompactum {
        SymbolicCompactum::new(vec![Component::Interval(rat(0, 1), rat(1, 1))]).unwrap()
    }

    #[test]
    fn stage_zero_is_integer_constants() {
        let fam: Vec<_> = dense_family(&unit(), 0).collect();
        let values: Vec<Rational> = fam.iter().map(|h| h.f.eval(&rat(0, 1))).collect();
        assert_eq!(values, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert!(fam.iter().all(|h| h.f.breakpoints().len() == 2));
    }

    #[test]
    fn ordering_and_membership() {
        let fam = dense_family(&unit(), 2);
        let members: Vec<_> = fam.clone().take(5000).collect();
        let counts: Vec<usize> = members.iter().map(|h| h.f.breakpoints().len()).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1] + 2));
        assert!(members.iter().all(|h| fam.contains(&h.f)));
        assert!(!fam.contains(&PLFunction::constant(rat(1, 8))));
    }

    #[test]
    fn separates_dense_points() {
        let host = SymbolicCompactum::new(vec![Component::Cantor(rat(0, 1), rat(1, 1))]).unwrap();
        let fam = dense_family(&host, 3);
        let pts = fam.points().to_vec();
        for (x, y) in pts.iter().zip(pts.iter().skip(1)) {
            let f = separating(x, y);
            assert!(fam.contains(&f));
            assert_eq!(f.eval(x), rat(0, 1));
            assert_eq!(f.eval(y), rat(1, 1));
        }
    }

    #[test]
    fn unclipped_teeth_appear() {
        let n = 2;
        let fam = dense_family(&unit(), n.max(3));
        for c in 0..=4 {
            for r in 1..=4 {
                let (c, r) = (Dyadic::new(c, n), Dyadic::new(r, n));
                let (lo, hi) = ((&c - &r).to_rational(), (&c + &r).to_rational());
                if lo < rat(0, 1) || hi > rat(1, 1) {
                    continue;
                }
                assert!(fam.contains(&generalized_tooth(&c, &r).unwrap()));
            }
        }
    }

    #[test]
    fn samples_are_members() {
        let fam = dense_family(&unit(), 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for h in fam.sample(&mut rng, 50) {
            assert!(fam.contains(&h.f));
            assert_eq!(h.sup_norm(), h.interval_sup());
        }
    }
}
