use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Label, LabelledTree, TreeError};
use crate::numerics::Address;

/// One step of the co-enumerable approximation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// A terminal leaf receives its first pair `(1, 2)`.
    FreshPair(Address),
    /// The live pair is discarded for good and the next pair is installed.
    ReplacePair(Address),
}

impl Event {
    pub fn node(&self) -> &Address {
        match self {
            Event::FreshPair(a) | Event::ReplacePair(a) => a,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Event::FreshPair(_) => "fresh",
            Event::ReplacePair(_) => "replace",
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.node())
    }
}

/// The tree at some stage, together with every address discarded so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageTree {
    nodes: BTreeMap<Address, Label>,
    tombstones: BTreeSet<Address>,
}

impl StageTree {
    pub fn new(initial: &LabelledTree) -> Self {
        StageTree {
            nodes: initial.nodes().map(|(a, l)| (a.clone(), *l)).collect(),
            tombstones: BTreeSet::new(),
        }
    }

    pub fn label(&self, addr: &Address) -> Option<Label> {
        self.nodes.get(addr).copied()
    }

    pub fn is_tombstoned(&self, addr: &Address) -> bool {
        self.tombstones.contains(addr)
    }

    pub fn tombstones(&self) -> &BTreeSet<Address> {
        &self.tombstones
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&Address, &Label)> {
        self.nodes.iter()
    }

    pub fn as_tree(&self) -> LabelledTree {
        LabelledTree::from_nodes_unchecked(self.nodes.clone())
    }
}

/// Applies one event, returning the next stage.
///
/// Discarded children must still be bare terminal leaves; their addresses
/// are tombstoned and never reused.
pub fn apply_event(state: &StageTree, event: &Event) -> Result<StageTree, TreeError> {
    let node = event.node();
    let fail = |reason| TreeError::EventNotApplicable {
        event: event.name(),
        node: node.clone(),
        reason,
    };
    if state.is_tombstoned(node) {
        return Err(fail("node was discarded"));
    }
    let label = state.label(node).ok_or_else(|| fail("node is not in the tree"))?;
    let mut next = state.clone();
    match (event, label) {
        (Event::FreshPair(_), Label::Terminal) => {
            next.nodes.insert(node.clone(), Label::split(0));
            for c in [1, 2] {
                next.nodes.insert(node.child(c), Label::Terminal);
            }
        }
        (Event::FreshPair(_), _) => return Err(fail("only a terminal leaf can receive a fresh pair")),
        (
            Event::ReplacePair(_),
            Label::Split {
                m,
                r,
                ever_terminal,
            },
        ) => {
            for c in [2 * m + 1, 2 * m + 2] {
                let child = node.child(c);
                if next.label(&child) != Some(Label::Terminal) {
                    return Err(fail("discarded children must be terminal leaves"));
                }
                next.nodes.remove(&child);
                next.tombstones.insert(child);
            }
            next.nodes.insert(
                node.clone(),
                Label::Split {
                    m: m + 1,
                    r: r + 1,
                    ever_terminal,
                },
            );
            for c in [2 * m + 3, 2 * m + 4] {
                let child = node.child(c);
                debug_assert!(!next.tombstones.contains(&child));
                next.nodes.insert(child, Label::Terminal);
            }
        }
        (Event::ReplacePair(_), _) => return Err(fail("node has no live pair")),
    }
    Ok(next)
}

/// A finite approximation script: a skeleton, a list of events and the
/// labels the surviving leaves carry in the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageScript {
    pub initial: LabelledTree,
    pub events: Vec<Event>,
    pub final_labels: BTreeMap<Address, Label>,
    /// Optional hard stop: stages beyond it are rejected.
    pub stop: Option<u32>,
}

impl StageScript {
    pub fn new(initial: LabelledTree, events: Vec<Event>) -> Self {
        StageScript {
            initial,
            events,
            final_labels: BTreeMap::new(),
            stop: None,
        }
    }

    pub fn with_label(mut self, addr: Address, label: Label) -> Self {
        self.final_labels.insert(addr, label);
        self
    }

    /// All stage trees `T_0, …, T_n`, one per prefix of the event list.
    pub fn stages(&self) -> Result<Vec<StageTree>, TreeError> {
        let mut out = vec![StageTree::new(&self.initial)];
        for e in &self.events {
            let next = apply_event(out.last().expect("nonempty"), e)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// The limit of a finite script: never-discarded nodes with final labels applied.
pub fn limit_tree(script: &StageScript) -> Result<LabelledTree, TreeError> {
    let stages = script.stages()?;
    let last = stages.last().expect("stage 0 exists");
    let mut nodes = last.nodes.clone();
    for (addr, label) in &script.final_labels {
        let current = nodes
            .get(addr)
            .copied()
            .ok_or_else(|| TreeError::InconsistentLabel(addr.clone()))?;
        // Labels may only move from terminal to eta.
        let ok = matches!((current, label), (Label::Terminal, Label::Terminal | Label::Eta) | (Label::Eta, Label::Eta));
        if !ok {
            return Err(TreeError::InconsistentLabel(addr.clone()));
        }
        nodes.insert(addr.clone(), *label);
    }
    LabelledTree::new(nodes)
}
