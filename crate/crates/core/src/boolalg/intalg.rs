use super::{BaError, LabelledBA, SymCard};

/// The interval algebra of a finite order `a₁ < … < aₙ`.
///
/// Its atoms are `[a₁,a₂), …, [aₙ,∞)`; the atom starting at a point
/// labelled `true` carries `in`, the others are junk.
pub fn intalg<T: Ord>(order: &[(T, bool)]) -> Result<LabelledBA, BaError> {
    if order.is_empty() {
        return Err(BaError::EmptyOrder);
    }
    if let Some(i) = order.windows(2).position(|w| w[0].0 >= w[1].0) {
        return Err(BaError::NotIncreasing(i + 1));
    }
    let n_in = order.iter().filter(|(_, l)| *l).count() as u64;
    let n = order.len() as u64;
    Ok(LabelledBA::single(SymCard::Fin(n_in), SymCard::Fin(n - n_in), false))
}
