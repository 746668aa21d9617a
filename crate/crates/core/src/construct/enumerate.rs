use std::collections::{BTreeMap, BTreeSet};

use super::{densify_round, junk_point, split_junk, ConstructError};
use crate::analysis::cantor;
use crate::numerics::{interval_of, Address, Dyadic, Rational};
use crate::trees::{apply_event, limit_tree, Event, Label, LabelledTree, StageScript, StageTree};

/// The finite set of points listed by stage `stage`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationState {
    pub stage: u32,
    pub points: BTreeSet<Rational>,
}

fn bits(s: u32) -> u32 {
    u32::BITS - s.leading_zeros()
}

/// Resolution schedule of the net over a surviving terminal leaf.
fn grid_level(s: u32) -> u32 {
    bits(s)
}

/// Resolution schedule of the net over an Eta leaf; a Cantor level costs
/// twice the points of a grid level, so it advances at half the speed.
fn cantor_level(s: u32) -> u32 {
    bits(s).div_ceil(2)
}

#[derive(Clone, Debug)]
struct Leaf {
    eta: bool,
    created: u32,
    level: Option<u32>,
}

/// Incremental replay of a script, one stage per call to [`Enumerator::advance`].
///
/// Stage `t ≥ 1` applies event `t−1`; later stages only refine the nets.
#[derive(Clone, Debug)]
pub struct Enumerator {
    script: StageScript,
    limit: LabelledTree,
    tree: StageTree,
    stage: u32,
    points: BTreeSet<Rational>,
    junk: BTreeMap<Address, BTreeSet<Dyadic>>,
    leaves: BTreeMap<Address, Leaf>,
}

impl Enumerator {
    pub fn new(script: &StageScript) -> Result<Self, ConstructError> {
        let limit = limit_tree(script)?;
        let tree = StageTree::new(&script.initial);
        let mut e = Enumerator {
            script: script.clone(),
            limit,
            tree,
            stage: 0,
            points: BTreeSet::new(),
            junk: BTreeMap::new(),
            leaves: BTreeMap::new(),
        };
        let skeleton: Vec<(Address, Label)> =
            script.initial.nodes().map(|(a, l)| (a.clone(), *l)).collect();
        for (addr, label) in skeleton {
            match label {
                Label::Split { r, ever_terminal, .. } => {
                    let pts: BTreeSet<Dyadic> = split_junk(&addr, r, ever_terminal).into_iter().collect();
                    e.emit_dyadics(pts.iter().cloned());
                    e.junk.insert(addr, pts);
                }
                Label::Terminal | Label::Eta => e.node_created(&addr),
                Label::Spine => {}
            }
        }
        e.refresh_nets();
        Ok(e)
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn points(&self) -> &BTreeSet<Rational> {
        &self.points
    }

    pub fn state(&self) -> EnumerationState {
        EnumerationState {
            stage: self.stage,
            points: self.points.clone(),
        }
    }

    fn emit_dyadics(&mut self, pts: impl IntoIterator<Item = Dyadic>) {
        self.points.extend(pts.into_iter().map(|p| p.to_rational()));
    }

    /// A node appears as a leaf. It places its junk point unless it ends up
    /// an Eta leaf, and registers a net if it survives as a leaf.
    fn node_created(&mut self, addr: &Address) {
        let fate = self.limit.label(addr);
        if fate != Some(Label::Eta) {
            let p = junk_point(addr);
            self.emit_dyadics([p.clone()]);
            if self.tree.label(addr) == Some(Label::Terminal) && fate.is_some_and(|l| !l.is_leaf()) {
                // Becomes a split later: the point is that split's first junk point.
                self.junk.entry(addr.clone()).or_default().insert(p);
            }
        }
        if let Some(l @ (Label::Terminal | Label::Eta)) = fate {
            self.leaves.insert(
                addr.clone(),
                Leaf {
                    eta: l == Label::Eta,
                    created: self.stage,
                    level: None,
                },
            );
        }
    }

    fn refresh_nets(&mut self) {
        let s = self.stage;
        let mut new_points = Vec::new();
        for (addr, leaf) in self.leaves.iter_mut() {
            let level = if leaf.eta {
                Some(cantor_level(s))
            } else if s > leaf.created {
                Some(grid_level(s))
            } else {
                None
            };
            if level <= leaf.level {
                continue;
            }
            leaf.level = level;
            let level = level.expect("level is set");
            let iv = interval_of(addr);
            let (lo, len) = (iv.lo().to_rational(), iv.length().to_rational());
            if leaf.eta {
                new_points.extend(cantor::level_endpoints(level).into_iter().map(|t| &lo + t * &len));
            } else {
                let step = len / Rational::from_integer((1u64 << level).into());
                new_points.extend((0..=1u64 << level).map(|k| &lo + &step * Rational::from_integer(k.into())));
            }
        }
        self.points.extend(new_points);
    }

    fn apply(&mut self, event: &Event) -> Result<(), ConstructError> {
        let node = event.node().clone();
        let before = self.tree.label(&node);
        self.tree = apply_event(&self.tree, event)?;
        match (event, before) {
            (Event::FreshPair(_), _) => {
                for c in [1, 2] {
                    self.node_created(&node.child(c));
                }
            }
            (Event::ReplacePair(_), Some(Label::Split { m, .. })) => {
                for c in [2 * m + 1, 2 * m + 2] {
                    let child = node.child(c);
                    self.leaves.remove(&child);
                    // The discarded child's point now belongs to the parent.
                    let p = junk_point(&child);
                    self.junk.entry(node.clone()).or_default().insert(p);
                }
                for c in [2 * m + 3, 2 * m + 4] {
                    self.node_created(&node.child(c));
                }
                let set = self.junk.entry(node.clone()).or_default();
                let new = densify_round(set, &node, m + 1);
                set.extend(new.iter().cloned());
                self.emit_dyadics(new);
            }
            _ => unreachable!("apply_event accepted the event"),
        }
        Ok(())
    }

    /// Moves to the next stage; returns whether any point was added.
    pub fn advance(&mut self) -> Result<bool, ConstructError> {
        let next = self.stage + 1;
        if let Some(stop) = self.script.stop {
            if next > stop {
                return Err(ConstructError::BeyondHorizon { stage: next, stop });
            }
        }
        let before = self.points.len();
        self.stage = next;
        if let Some(event) = self.script.events.get(next as usize - 1).cloned() {
            self.apply(&event)?;
        }
        self.refresh_nets();
        Ok(self.points.len() != before)
    }
}

/// Replays the script up to stage `s`.
pub fn enumerate_stage(script: &StageScript, s: u32) -> Result<EnumerationState, ConstructError> {
    if let Some(stop) = script.stop {
        if s > stop {
            return Err(ConstructError::BeyondHorizon { stage: s, stop });
        }
    }
    let mut e = Enumerator::new(script)?;
    while e.stage() < s {
        e.advance()?;
    }
    Ok(e.state())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn bare() -> LabelledTree {
        LabelledTree::leaf(Label::Terminal)
    }

    #[test]
    fn bare_root_at_stage_zero() {
        let s = enumerate_stage(&StageScript::new(bare(), vec![]), 0).unwrap();
        assert_eq!(s.points.into_iter().collect::<Vec<_>>(), vec![rat(1, 8)]);
    }

    #[test]
    fn fresh_pair_adds_child_junk() {
        let script = StageScript::new(bare(), vec![Event::FreshPair(Address::root())]);
        let s = enumerate_stage(&script, 1).unwrap();
        let expected: BTreeSet<Rational> = [
            junk_point(&Address::root()),
            junk_point(&Address::root().child(1)),
            junk_point(&Address::root().child(2)),
        ]
        .iter()
        .map(Dyadic::to_rational)
        .collect();
        assert_eq!(s.points, expected);
    }

    #[test]
    fn replace_pair_densifies_outside_new_children() {
        let root = Address::root();
        let script = StageScript::new(
            bare(),
            vec![Event::FreshPair(root.clone()), Event::ReplacePair(root.clone())],
        );
        let s1 = enumerate_stage(&script, 1).unwrap();
        let s2 = enumerate_stage(&script, 2).unwrap();
        assert!(s2.points.len() > s1.points.len());
        assert!(s1.points.is_subset(&s2.points));
        let left = interval_of(&root.child(4));
        let right = interval_of(&root.child(3));
        for p in s2.points.difference(&s1.points) {
            let outside = p < &left.lo().to_rational() || p > &right.hi().to_rational();
            let own = left.contains_rational(p) || right.contains_rational(p);
            assert!(outside || own, "{p} lands between the new children");
        }
    }

    #[test]
    fn stop_is_a_hard_horizon() {
        let mut script = StageScript::new(bare(), vec![]);
        script.stop = Some(3);
        assert!(enumerate_stage(&script, 3).is_ok());
        assert_eq!(
            enumerate_stage(&script, 4).unwrap_err(),
            ConstructError::BeyondHorizon { stage: 4, stop: 3 }
        );
    }

    #[test]
    fn three_component_example_converges() {
        let root = Address::root();
        let script = StageScript::new(bare(), vec![Event::FreshPair(root)]);
        let limit = crate::construct::construct_limit(&limit_tree(&script).unwrap());
        let mut e = Enumerator::new(&script).unwrap();
        let mut last = None;
        while e.stage() < 64 {
            e.advance().unwrap();
            let gap = crate::construct::hausdorff_gap(&e.state(), &limit).unwrap();
            assert!(last.as_ref().is_none_or(|l| &gap <= l));
            last = Some(gap);
        }
        assert!(last.unwrap() <= rat(1, 64));
    }

    #[test]
    fn eta_net_starts_at_endpoints() {
        let s = enumerate_stage(&StageScript::new(LabelledTree::leaf(Label::Eta), vec![]), 0).unwrap();
        assert_eq!(s.points.into_iter().collect::<Vec<_>>(), vec![rat(0, 1), rat(1, 1)]);
    }
}
