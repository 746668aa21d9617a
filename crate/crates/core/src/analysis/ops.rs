use super::{AnalysisError, ClopenSelector, Component, Kind, SymbolicCompactum};

/// The derived set, together with where each old component went.
///
/// A sequence glued to an interval has its limit inside that interval, so
/// it disappears instead of leaving a point behind.
pub fn cb_derivative_with_map(s: &SymbolicCompactum) -> (SymbolicCompactum, Vec<Option<usize>>) {
    let mut components = Vec::new();
    let mut map = Vec::with_capacity(s.len());
    for (i, c) in s.components.iter().enumerate() {
        let kept = match c {
            Component::Point(_) => None,
            Component::PointSeq { limit, .. } => {
                (!s.is_glued(i)).then(|| Component::Point(limit.clone()))
            }
            Component::Interval(..) | Component::Cantor(..) => Some(c.clone()),
        };
        map.push(kept.map(|k| {
            components.push(k);
            components.len() - 1
        }));
    }
    (SymbolicCompactum { components }, map)
}

pub fn cb_derivative(s: &SymbolicCompactum) -> SymbolicCompactum {
    cb_derivative_with_map(s).0
}

fn map_selector(map: &[Option<usize>], x: &ClopenSelector) -> ClopenSelector {
    ClopenSelector::of(x.iter().filter_map(|i| map[i]))
}

/// An intom is a clopen piece homeomorphic to `[0,1]`.
pub fn is_intom(s: &SymbolicCompactum, x: &ClopenSelector) -> Result<bool, AnalysisError> {
    s.check_selector(x)?;
    Ok(x.len() == 1 && s.components[*x.0.first().unwrap()].kind() == Kind::Interval)
}

/// `X ∼ Y`: the two selections differ by isolated points only.
pub fn cb_equiv(s: &SymbolicCompactum, x: &ClopenSelector, y: &ClopenSelector) -> Result<bool, AnalysisError> {
    s.check_selector(x)?;
    s.check_selector(y)?;
    let non_points = |sel: &ClopenSelector| -> Vec<usize> {
        sel.iter()
            .filter(|&i| s.components[i].kind() != Kind::Point)
            .collect()
    };
    Ok(non_points(x) == non_points(y))
}

/// Collapses every clopen interval to its midpoint.
pub fn reduce(s: &SymbolicCompactum) -> SymbolicCompactum {
    let components = s
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Component::Interval(..) if !s.is_glued(i) => Component::Point(c.midpoint()),
            _ => c.clone(),
        })
        .collect();
    SymbolicCompactum { components }
}

/// `R(S)`: derivative, then reduct.
pub fn reduction_r(s: &SymbolicCompactum) -> SymbolicCompactum {
    reduce(&cb_derivative(s))
}

/// Whether `X` has infinitely many distinct non-trivial clopen splits.
pub fn satisfies_inf(s: &SymbolicCompactum, x: &ClopenSelector) -> Result<bool, AnalysisError> {
    s.check_selector(x)?;
    Ok(x
        .iter()
        .any(|i| matches!(s.components[i].kind(), Kind::Cantor | Kind::PointSeq)))
}

/// `X ∩ S′` is non-empty and consists of Cantor components only.
pub fn is_atomless_after_derivative(s: &SymbolicCompactum, x: &ClopenSelector) -> Result<bool, AnalysisError> {
    s.check_selector(x)?;
    let (d, map) = cb_derivative_with_map(s);
    let xd = map_selector(&map, x);
    Ok(!xd.is_empty() && xd.iter().all(|i| d.components[i].kind() == Kind::Cantor))
}

/// The set analogue of `satisfies_inf` after passing to the derivative.
pub fn satisfies_inf_derived(s: &SymbolicCompactum, x: &ClopenSelector) -> Result<bool, AnalysisError> {
    s.check_selector(x)?;
    let (d, map) = cb_derivative_with_map(s);
    satisfies_inf(&d, &map_selector(&map, x))
}

/// No interval of the derived set is the limit of a sequence from outside it.
pub fn check_property_in(s: &SymbolicCompactum) -> bool {
    let limits: Vec<_> = s
        .components
        .iter()
        .filter_map(|c| match c {
            Component::PointSeq { limit, .. } => Some(limit),
            _ => None,
        })
        .collect();
    cb_derivative(s).components.iter().all(|c| match c {
        Component::Interval(lo, hi) => !limits.iter().any(|&l| l == lo || l == hi),
        _ => true,
    })
}
