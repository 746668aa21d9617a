use std::collections::BTreeMap;

use super::{Label, LabelledTree, TreeError};
use crate::numerics::Address;

/// Assembles components along a spine `0^i`.
///
/// Component `i < k−1` is grafted at `0^i⌢1`, the last one at `0^{k−1}`, so
/// the spine is finite. Spine nodes are labelled [`Label::Spine`].
pub fn fishbone(components: &[LabelledTree]) -> Result<LabelledTree, TreeError> {
    let (last, init) = components.split_last().ok_or(TreeError::EmptyFishbone)?;
    let mut nodes = BTreeMap::new();
    let mut spine = Address::root();
    for component in init {
        nodes.insert(spine.clone(), Label::Spine);
        nodes.extend(component.grafted_at(&spine.child(1)));
        spine = spine.child(0);
    }
    nodes.extend(last.grafted_at(&spine));
    LabelledTree::new(nodes)
}
