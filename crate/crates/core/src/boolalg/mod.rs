//! Boolean algebras with a distinguished set of atoms.
//!
//! An algebra is a finite list of clusters. A cluster with `n_in` labelled
//! atoms, `n_junk` unlabelled atoms and an optional atomless part has Stone
//! space: its isolated atoms, one extra limit point when either species is
//! infinite, and a Cantor set when atomless. Elements select finite or
//! cofinite sets of atoms per species and a finite union of dyadic pieces
//! of the atomless part.

mod card;
mod dyadic_set;
mod duality;
mod element;
mod form;
mod intalg;
mod iso;
pub mod text;

use std::fmt;

pub use card::SymCard;
pub use dyadic_set::DyadicSet;
pub use duality::{clopen_algebra, dagger_check, dual_algebra, lift, quotient_element, quotient_r, stone_space};
pub use element::{AtomRef, ClusterElem, Element, Species};
pub use form::{ba_form, BaForm};
pub use intalg::intalg;
pub use iso::{
    build_isomorphism, quotient_iso_canonical, verify_isomorphism, AtomIso, CantorPiece, IsoError,
};

/// Homeomorphism invariant of a compactum; re-exported so both kinds of
/// canonical form live side by side.
pub use crate::analysis::{compactum_form, CompactumForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cluster {
    pub n_in: SymCard,
    pub n_junk: SymCard,
    pub atomless: bool,
}

impl Cluster {
    pub fn new(n_in: SymCard, n_junk: SymCard, atomless: bool) -> Self {
        Cluster {
            n_in,
            n_junk,
            atomless,
        }
    }

    pub fn count(&self, species: Species) -> SymCard {
        match species {
            Species::In => self.n_in,
            Species::Junk => self.n_junk,
        }
    }

    /// Whether the Stone space has a limit point in this cluster.
    pub fn has_limit(&self) -> bool {
        self.n_in.is_omega() || self.n_junk.is_omega()
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cluster in={} junk={} atomless={}",
            self.n_in,
            self.n_junk,
            u8::from(self.atomless)
        )
    }
}

/// A Boolean algebra presented by clusters; `in` holds exactly on the
/// atoms of species [`Species::In`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LabelledBA {
    pub clusters: Vec<Cluster>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaError {
    #[error("element has {found} clusters, algebra has {expected}")]
    ClusterCount { expected: usize, found: usize },
    #[error("cluster {cluster}: {reason}")]
    BadElement { cluster: usize, reason: &'static str },
    #[error("interval algebra of an empty order")]
    EmptyOrder,
    #[error("order is not strictly increasing at position {0}")]
    NotIncreasing(usize),
}

impl LabelledBA {
    pub fn new(clusters: Vec<Cluster>) -> Self {
        LabelledBA { clusters }
    }

    pub fn single(n_in: SymCard, n_junk: SymCard, atomless: bool) -> Self {
        LabelledBA::new(vec![Cluster::new(n_in, n_junk, atomless)])
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Total count of a species across clusters.
    pub fn total(&self, species: Species) -> SymCard {
        self.clusters.iter().map(|c| c.count(species)).sum()
    }

    /// Number of atoms when every species is finite.
    pub fn finite_atom_count(&self) -> Option<u64> {
        match self.total(Species::In) + self.total(Species::Junk) {
            SymCard::Fin(n) => Some(n),
            SymCard::Omega => None,
        }
    }

    pub fn has_atomless(&self) -> bool {
        self.clusters.iter().any(|c| c.atomless)
    }

    pub fn bottom(&self) -> Element {
        Element::bottom(self)
    }

    pub fn top(&self) -> Element {
        Element::top(self)
    }

    pub fn cluster_top(&self, i: usize) -> Element {
        let mut e = self.bottom();
        e.parts[i] = ClusterElem::top(&self.clusters[i]);
        e
    }

    /// The atomless part of cluster `i`, as an element.
    pub fn atomless_top(&self, i: usize) -> Element {
        let mut e = self.bottom();
        if self.clusters[i].atomless {
            e.parts[i].atomless = DyadicSet::full();
        }
        e
    }

    pub fn atom(&self, a: AtomRef) -> Element {
        Element::atom(self, a)
    }

    /// Every atom, cluster by cluster, `in` before junk, when all species are finite.
    pub fn finite_atoms(&self) -> Option<Vec<AtomRef>> {
        self.finite_atom_count()?;
        let mut out = Vec::new();
        for (ci, c) in self.clusters.iter().enumerate() {
            for species in [Species::In, Species::Junk] {
                let SymCard::Fin(n) = c.count(species) else { unreachable!() };
                out.extend((0..n).map(|index| AtomRef {
                    cluster: ci,
                    species,
                    index,
                }));
            }
        }
        Some(out)
    }

    /// `c⁺(x)`: the number of `in` atoms below `x`.
    pub fn c_plus(&self, x: &Element) -> Result<SymCard, BaError> {
        x.check(self)?;
        Ok(x.count(self, Species::In))
    }

    /// `c⁻(x)`: the number of junk atoms below `x`.
    pub fn c_minus(&self, x: &Element) -> Result<SymCard, BaError> {
        x.check(self)?;
        Ok(x.count(self, Species::Junk))
    }
}

impl fmt::Display for LabelledBA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print_ba(self))
    }
}
