//! Finite labelled trees over `ω^<ω` and their stage-wise dynamics.
//!
//! A split node `σ` always has exactly the two children `σ⌢(2m+1)` and
//! `σ⌢(2m+2)`, where `m` counts how many earlier pairs were discarded.
//! Child index `0` is reserved for the junk point of `σ` and never names a
//! tree node, except below spine nodes of a fishbone.

mod fishbone;
mod script;
pub mod text;

use std::collections::BTreeMap;

use crate::numerics::Address;

pub use fishbone::fishbone;
pub use script::{apply_event, limit_tree, Event, StageScript, StageTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// Internal node whose live children are `2m+1` and `2m+2`; `r` pairs were discarded.
    Split { m: u32, r: u32, ever_terminal: bool },
    /// Leaf standing for an atom.
    Terminal,
    /// Leaf standing for a full binary subtree (an atomless part).
    Eta,
    /// Fishbone spine node with children `0` and `1`; carries no junk.
    Spine,
}

impl Label {
    pub fn split(r: u32) -> Label {
        Label::Split {
            m: r,
            r,
            ever_terminal: true,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Label::Terminal | Label::Eta)
    }

    /// The child indices this label requires.
    pub fn child_indices(&self) -> Option<[u32; 2]> {
        match *self {
            Label::Split { m, .. } => Some([2 * m + 1, 2 * m + 2]),
            Label::Spine => Some([0, 1]),
            Label::Terminal | Label::Eta => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("tree has no root node")]
    MissingRoot,
    #[error("node {0} has no parent in the tree")]
    Orphan(Address),
    #[error("node {node}: expected children {expected:?}, found {found:?}")]
    BadChildren {
        node: Address,
        expected: Vec<u32>,
        found: Vec<u32>,
    },
    #[error("split node {0}: final pair index must equal the replacement count")]
    PairIndexMismatch(Address),
    #[error("split node {0} was never terminal and never replaced, so it carries no junk point")]
    JunklessSplit(Address),
    #[error("fishbone needs at least one component")]
    EmptyFishbone,
    #[error("event {event} at {node}: {reason}")]
    EventNotApplicable {
        event: &'static str,
        node: Address,
        reason: &'static str,
    },
    #[error("final label for {0} does not name a surviving leaf")]
    InconsistentLabel(Address),
}

/// A finite labelled tree, closed under prefixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTree {
    nodes: BTreeMap<Address, Label>,
}

impl LabelledTree {
    /// Validates and builds a tree from its node map.
    pub fn new(nodes: BTreeMap<Address, Label>) -> Result<Self, TreeError> {
        let tree = LabelledTree { nodes };
        tree.validate()?;
        Ok(tree)
    }

    pub(crate) fn from_nodes_unchecked(nodes: BTreeMap<Address, Label>) -> Self {
        LabelledTree { nodes }
    }

    pub fn leaf(label: Label) -> Self {
        let mut nodes = BTreeMap::new();
        nodes.insert(Address::root(), label);
        LabelledTree { nodes }
    }

    /// A split root with `r` replacements whose two final children carry the given labels.
    pub fn split_with(r: u32, left: LabelledTree, right: LabelledTree) -> Self {
        let label = Label::split(r);
        let [a, b] = label.child_indices().expect("split has children");
        let mut nodes = BTreeMap::new();
        nodes.insert(Address::root(), label);
        for (idx, sub) in [(a, left), (b, right)] {
            let prefix = Address::root().child(idx);
            for (addr, l) in sub.nodes {
                nodes.insert(prefix.concat(&addr), l);
            }
        }
        LabelledTree { nodes }
    }

    pub fn validate(&self) -> Result<(), TreeError> {
        if !self.nodes.contains_key(&Address::root()) {
            return Err(TreeError::MissingRoot);
        }
        for addr in self.nodes.keys() {
            if let Some(p) = addr.parent() {
                if !self.nodes.contains_key(&p) {
                    return Err(TreeError::Orphan(addr.clone()));
                }
            }
        }
        for (addr, label) in &self.nodes {
            let found = self.child_indices(addr);
            let expected: Vec<u32> = label.child_indices().map(|c| c.to_vec()).unwrap_or_default();
            if found != expected {
                return Err(TreeError::BadChildren {
                    node: addr.clone(),
                    expected,
                    found,
                });
            }
            if let Label::Split {
                m,
                r,
                ever_terminal,
            } = *label
            {
                if m != r {
                    return Err(TreeError::PairIndexMismatch(addr.clone()));
                }
                if !ever_terminal && r == 0 {
                    return Err(TreeError::JunklessSplit(addr.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> impl Iterator<Item = (&Address, &Label)> {
        self.nodes.iter()
    }

    pub fn label(&self, addr: &Address) -> Option<Label> {
        self.nodes.get(addr).copied()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, addr: &Address) -> bool {
        self.nodes.contains_key(addr)
    }

    /// Sorted child indices of `addr` present in the tree.
    pub fn child_indices(&self, addr: &Address) -> Vec<u32> {
        let depth = addr.len() + 1;
        self.nodes
            .range(addr.clone()..)
            .take_while(|(a, _)| addr.is_prefix_of(a))
            .filter(|(a, _)| a.len() == depth)
            .filter_map(|(a, _)| a.last())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn leaves(&self) -> impl Iterator<Item = (&Address, Label)> {
        self.nodes
            .iter()
            .filter(|(_, l)| l.is_leaf())
            .map(|(a, l)| (a, *l))
    }

    pub fn split_nodes(&self) -> impl Iterator<Item = (&Address, u32, bool)> {
        self.nodes.iter().filter_map(|(a, l)| match *l {
            Label::Split {
                r, ever_terminal, ..
            } => Some((a, r, ever_terminal)),
            _ => None,
        })
    }

    pub fn count_terminal(&self) -> usize {
        self.leaves().filter(|(_, l)| *l == Label::Terminal).count()
    }

    pub fn has_eta(&self) -> bool {
        self.leaves().any(|(_, l)| l == Label::Eta)
    }

    pub fn depth(&self) -> usize {
        self.nodes.keys().map(Address::len).max().unwrap_or(0)
    }

    /// Re-roots a copy of this tree below `prefix`.
    pub(crate) fn grafted_at(&self, prefix: &Address) -> impl Iterator<Item = (Address, Label)> + '_ {
        let prefix = prefix.clone();
        self.nodes.iter().map(move |(a, l)| (prefix.concat(a), *l))
    }
}
