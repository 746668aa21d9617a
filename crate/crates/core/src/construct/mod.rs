//! The construction `T ↦ C(T)` and its stage-wise enumeration.
//!
//! Terminal leaves become full intervals, Eta leaves become Cantor copies and
//! every split node leaves a finite cloud of junk points. A split with
//! history `(et, r)` first places the midpoint of `I_{σ⌢0}` (when `et`),
//! then for each discarded pair `j` keeps the two points the discarded
//! children had placed and runs one densification round: the midpoint of
//! every adjacent pair is inserted, separately among the points left of the
//! incoming left child and right of the incoming right child. The enumerator
//! runs exactly the same rounds, so the closure of what it lists is the
//! static limit.

mod enumerate;
mod hausdorff;

use std::collections::BTreeSet;

use crate::analysis::{Component, SymbolicCompactum};
use crate::numerics::{interval_of, Address, DyInterval, Dyadic};
use crate::trees::{Label, LabelledTree, TreeError};

pub use enumerate::{enumerate_stage, EnumerationState, Enumerator};
pub use hausdorff::hausdorff_gap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("enumerated point {0} does not lie in the limit set")]
    MismatchedLimit(String),
    #[error("enumeration is empty but the limit set is not")]
    EmptyEnumeration,
    #[error("stage {stage} is beyond the script's stop at {stop}")]
    BeyondHorizon { stage: u32, stop: u32 },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The point the node `σ` places while it looks terminal: the midpoint of `I_{σ⌢0}`.
pub fn junk_point(node: &Address) -> Dyadic {
    interval_of(&node.child(0)).midpoint()
}

/// The live children `(left, right)` of a split after `r` replacements.
///
/// Even indices sit left of the concentration point, so the left child is `2r+2`.
pub(crate) fn live_pair(node: &Address, r: u32) -> (DyInterval, DyInterval) {
    (
        interval_of(&node.child(2 * r + 2)),
        interval_of(&node.child(2 * r + 1)),
    )
}

/// One densification round against the live pair after `r` replacements.
/// Returns the inserted midpoints.
pub(crate) fn densify_round(points: &BTreeSet<Dyadic>, node: &Address, r: u32) -> Vec<Dyadic> {
    let (left, right) = live_pair(node, r);
    let mids = |group: Vec<&Dyadic>| -> Vec<Dyadic> {
        group.windows(2).map(|w| w[0].midpoint(w[1])).collect()
    };
    let mut out = mids(points.iter().filter(|p| *p < left.lo()).collect());
    out.extend(mids(points.iter().filter(|p| *p > right.hi()).collect()));
    out
}

/// All junk points of a split node with the given history, sorted.
pub fn split_junk(node: &Address, r: u32, ever_terminal: bool) -> Vec<Dyadic> {
    let mut pts = BTreeSet::new();
    if ever_terminal {
        pts.insert(junk_point(node));
    }
    for j in 1..=r {
        pts.insert(junk_point(&node.child(2 * j - 1)));
        pts.insert(junk_point(&node.child(2 * j)));
        let new = densify_round(&pts, node, j);
        pts.extend(new);
    }
    pts.into_iter().collect()
}

/// Closed form for the junk count of a split: `(2^{r+1}−1) + (2^r−1)` when
/// `et`, else `2(2^r−1)`.
pub fn split_junk_count(r: u32, ever_terminal: bool) -> u64 {
    let p = 1u64 << r;
    if ever_terminal {
        (2 * p - 1) + (p - 1)
    } else {
        2 * (p - 1)
    }
}

/// A limit component together with the tree node it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub origin: Address,
    pub component: Component,
}

/// Every component of `C(T)`, tagged with its node, in tree order.
pub fn construct_traced(t: &LabelledTree) -> Vec<Traced> {
    let mut out = Vec::new();
    for (addr, label) in t.nodes() {
        let iv = interval_of(addr);
        let (lo, hi) = (iv.lo().to_rational(), iv.hi().to_rational());
        let mut push = |component| {
            out.push(Traced {
                origin: addr.clone(),
                component,
            })
        };
        match *label {
            Label::Terminal => push(Component::Interval(lo, hi)),
            Label::Eta => push(Component::Cantor(lo, hi)),
            Label::Spine => {}
            Label::Split { r, ever_terminal, .. } => {
                for p in split_junk(addr, r, ever_terminal) {
                    push(Component::Point(p.to_rational()));
                }
            }
        }
    }
    out
}

/// The exact limit set `C(T)`.
pub fn construct_limit(t: &LabelledTree) -> SymbolicCompactum {
    let comps = construct_traced(t).into_iter().map(|tr| tr.component).collect();
    SymbolicCompactum::new(comps).expect("construction yields separated components")
}
