use num_traits::Zero;

use super::{ConstructError, EnumerationState};
use crate::analysis::SymbolicCompactum;
use crate::numerics::{rat_max, rational_text, Rational};

/// Exact Hausdorff distance between the enumerated points and the limit set.
///
/// Every listed point must belong to the limit, so only the distance from
/// the limit to the points matters. Inside a gap `(p, q)` between
/// consecutive points the worst limit point is the one nearest the middle,
/// found from the set's floor and ceiling at the midpoint.
pub fn hausdorff_gap(state: &EnumerationState, limit: &SymbolicCompactum) -> Result<Rational, ConstructError> {
    let pts = &state.points;
    let (Some(first), Some(last)) = (pts.first(), pts.last()) else {
        return if limit.is_empty() {
            Ok(Rational::zero())
        } else {
            Err(ConstructError::EmptyEnumeration)
        };
    };
    if let Some(p) = pts.iter().find(|p| !limit.contains(p)) {
        return Err(ConstructError::MismatchedLimit(rational_text(p)));
    }
    let two = Rational::from_integer(2.into());
    let mut gap = rat_max(
        first - limit.min().expect("limit holds a point"),
        limit.max().expect("limit holds a point") - last,
    );
    let mut iter = pts.iter();
    let mut prev = iter.next().expect("non-empty");
    for q in iter {
        let mid = (prev + q) / &two;
        let f = limit.floor(&mid).expect("p is below mid");
        let c = limit.ceil(&mid).expect("q is above mid");
        gap = rat_max(gap, rat_max(f - prev, q - c));
        prev = q;
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Component;
    use crate::numerics::{rat, rat_int};
    use std::collections::BTreeSet;

    fn state(points: impl IntoIterator<Item = Rational>) -> EnumerationState {
        EnumerationState {
            stage: 0,
            points: points.into_iter().collect::<BTreeSet<_>>(),
        }
    }

    #[test]
    fn grid_on_unit_interval() {
        let unit = SymbolicCompactum::new(vec![Component::Interval(rat(0, 1), rat(1, 1))]).unwrap();
        for k in 0..6 {
            let n = 1i64 << k;
            let s = state((0..=n).map(|i| rat(i, n)));
            let gap = hausdorff_gap(&s, &unit).unwrap();
            assert_eq!(gap, rat(1, 2 * n));
            assert!(gap <= rat(1, n));
        }
    }

    #[test]
    fn exact_hit_and_errors() {
        let p = SymbolicCompactum::new(vec![Component::Point(rat(1, 8))]).unwrap();
        assert_eq!(hausdorff_gap(&state([rat(1, 8)]), &p).unwrap(), rat_int(0));
        assert!(matches!(
            hausdorff_gap(&state([rat(1, 4)]), &p),
            Err(ConstructError::MismatchedLimit(_))
        ));
        assert_eq!(hausdorff_gap(&state([]), &p), Err(ConstructError::EmptyEnumeration));
    }

    #[test]
    fn cantor_endpoints() {
        let c = SymbolicCompactum::new(vec![Component::Cantor(rat(0, 1), rat(1, 1))]).unwrap();
        // The worst limit points for level-1 endpoints are 1/9 and 2/9.
        let gap = hausdorff_gap(&state([rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)]), &c).unwrap();
        assert_eq!(gap, rat(1, 9));
    }
}
