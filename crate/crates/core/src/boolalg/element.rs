use std::collections::BTreeSet;
use std::fmt;

use super::{BaError, Cluster, DyadicSet, LabelledBA, SymCard};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Species {
    In,
    Junk,
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Species::In => "in",
            Species::Junk => "junk",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomRef {
    pub cluster: usize,
    pub species: Species,
    pub index: u64,
}

impl AtomRef {
    pub fn new(cluster: usize, species: Species, index: u64) -> Self {
        AtomRef {
            cluster,
            species,
            index,
        }
    }
}

impl fmt::Display for AtomRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.cluster, self.species, self.index)
    }
}

/// The part of an element inside one cluster.
///
/// `limit` says whether the element contains the cluster's limit point.
/// For an infinite species the index set lists the atoms left out when
/// `limit` holds and the atoms taken otherwise; a finite species always
/// lists the atoms taken.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClusterElem {
    pub limit: bool,
    pub in_atoms: BTreeSet<u64>,
    pub junk_atoms: BTreeSet<u64>,
    pub atomless: DyadicSet,
}

impl ClusterElem {
    pub fn bottom() -> Self {
        ClusterElem::default()
    }

    pub fn top(c: &Cluster) -> Self {
        let all = |n: SymCard| match n {
            SymCard::Fin(n) => (0..n).collect(),
            SymCard::Omega => BTreeSet::new(),
        };
        ClusterElem {
            limit: c.has_limit(),
            in_atoms: all(c.n_in),
            junk_atoms: all(c.n_junk),
            atomless: if c.atomless { DyadicSet::full() } else { DyadicSet::empty() },
        }
    }

    pub fn set(&self, species: Species) -> &BTreeSet<u64> {
        match species {
            Species::In => &self.in_atoms,
            Species::Junk => &self.junk_atoms,
        }
    }

    pub fn set_mut(&mut self, species: Species) -> &mut BTreeSet<u64> {
        match species {
            Species::In => &mut self.in_atoms,
            Species::Junk => &mut self.junk_atoms,
        }
    }

    /// Whether the listed indices are excluded rather than included.
    fn cofinite(&self, c: &Cluster, species: Species) -> bool {
        self.limit && c.count(species).is_omega()
    }

    pub fn contains_atom(&self, c: &Cluster, species: Species, index: u64) -> bool {
        self.set(species).contains(&index) != self.cofinite(c, species)
    }

    pub fn count(&self, c: &Cluster, species: Species) -> SymCard {
        if self.cofinite(c, species) {
            SymCard::Omega
        } else {
            SymCard::Fin(self.set(species).len() as u64)
        }
    }

    fn check(&self, c: &Cluster) -> Result<(), &'static str> {
        if self.limit && !c.has_limit() {
            return Err("limit point selected in a cluster without one");
        }
        for species in [Species::In, Species::Junk] {
            if let SymCard::Fin(n) = c.count(species) {
                if self.set(species).last().is_some_and(|&i| i >= n) {
                    return Err("atom index out of range");
                }
            }
        }
        if !c.atomless && !self.atomless.is_empty() {
            return Err("atomless part selected in a cluster without one");
        }
        Ok(())
    }

    fn complement(&self, c: &Cluster) -> Self {
        let flip = |species: Species| match c.count(species) {
            SymCard::Fin(n) => (0..n).filter(|i| !self.set(species).contains(i)).collect(),
            SymCard::Omega => self.set(species).clone(),
        };
        ClusterElem {
            limit: c.has_limit() && !self.limit,
            in_atoms: flip(Species::In),
            junk_atoms: flip(Species::Junk),
            atomless: if c.atomless {
                self.atomless.complement()
            } else {
                DyadicSet::empty()
            },
        }
    }

    fn meet(&self, other: &Self, c: &Cluster) -> Self {
        let part = |species: Species| -> BTreeSet<u64> {
            let (a, b) = (self.set(species), other.set(species));
            match (self.cofinite(c, species), other.cofinite(c, species)) {
                (false, false) => a & b,
                (false, true) => a - b,
                (true, false) => b - a,
                (true, true) => a | b,
            }
        };
        ClusterElem {
            limit: self.limit && other.limit,
            in_atoms: part(Species::In),
            junk_atoms: part(Species::Junk),
            atomless: self.atomless.intersect(&other.atomless),
        }
    }
}

/// An element of a [`LabelledBA`], one part per cluster.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub parts: Vec<ClusterElem>,
}

impl Element {
    pub fn bottom(b: &LabelledBA) -> Self {
        Element {
            parts: vec![ClusterElem::bottom(); b.len()],
        }
    }

    pub fn top(b: &LabelledBA) -> Self {
        Element {
            parts: b.clusters.iter().map(ClusterElem::top).collect(),
        }
    }

    pub fn atom(b: &LabelledBA, a: AtomRef) -> Self {
        let mut e = Element::bottom(b);
        e.parts[a.cluster].set_mut(a.species).insert(a.index);
        e
    }

    pub fn check(&self, b: &LabelledBA) -> Result<(), BaError> {
        if self.parts.len() != b.len() {
            return Err(BaError::ClusterCount {
                expected: b.len(),
                found: self.parts.len(),
            });
        }
        for (i, (p, c)) in self.parts.iter().zip(&b.clusters).enumerate() {
            p.check(c).map_err(|reason| BaError::BadElement { cluster: i, reason })?;
        }
        Ok(())
    }

    pub fn complement(&self, b: &LabelledBA) -> Self {
        Element {
            parts: self.parts.iter().zip(&b.clusters).map(|(p, c)| p.complement(c)).collect(),
        }
    }

    pub fn meet(&self, other: &Self, b: &LabelledBA) -> Self {
        Element {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .zip(&b.clusters)
                .map(|((p, q), c)| p.meet(q, c))
                .collect(),
        }
    }

    pub fn join(&self, other: &Self, b: &LabelledBA) -> Self {
        self.complement(b).meet(&other.complement(b), b).complement(b)
    }

    /// `self − other`.
    pub fn minus(&self, other: &Self, b: &LabelledBA) -> Self {
        self.meet(&other.complement(b), b)
    }

    pub fn le(&self, other: &Self, b: &LabelledBA) -> bool {
        self.minus(other, b).is_bottom()
    }

    pub fn is_bottom(&self) -> bool {
        self.parts.iter().all(|p| *p == ClusterElem::bottom())
    }

    pub fn contains_atom(&self, b: &LabelledBA, a: AtomRef) -> bool {
        self.parts[a.cluster].contains_atom(&b.clusters[a.cluster], a.species, a.index)
    }

    /// Adds or removes a single atom.
    pub fn set_atom(&mut self, b: &LabelledBA, a: AtomRef, present: bool) {
        let c = &b.clusters[a.cluster];
        let p = &mut self.parts[a.cluster];
        let listed = present != p.cofinite(c, a.species);
        if listed {
            p.set_mut(a.species).insert(a.index);
        } else {
            p.set_mut(a.species).remove(&a.index);
        }
    }

    /// No limit point and no atomless part: a finite set of atoms.
    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(|p| !p.limit && p.atomless.is_empty())
    }

    pub fn count(&self, b: &LabelledBA, species: Species) -> SymCard {
        self.parts.iter().zip(&b.clusters).map(|(p, c)| p.count(c, species)).sum()
    }

    /// The first `k` atoms of `species` below `self`, cluster by cluster in
    /// index order; fewer if there are not that many.
    pub fn first_atoms(&self, b: &LabelledBA, species: Species, k: usize) -> Vec<AtomRef> {
        let mut out = Vec::new();
        for (ci, (p, c)) in self.parts.iter().zip(&b.clusters).enumerate() {
            if out.len() >= k {
                break;
            }
            let need = k - out.len();
            let found: Vec<u64> = if p.cofinite(c, species) {
                (0..).filter(|i| !p.set(species).contains(i)).take(need).collect()
            } else {
                p.set(species).iter().copied().take(need).collect()
            };
            out.extend(found.into_iter().map(|i| AtomRef::new(ci, species, i)));
        }
        out
    }

    /// Whether `self` is a single atom of `b`.
    pub fn as_atom(&self, b: &LabelledBA) -> Option<AtomRef> {
        if self.parts.iter().any(|p| p.limit || !p.atomless.is_empty()) {
            return None;
        }
        let mut atoms = self.first_atoms(b, Species::In, 2);
        atoms.extend(self.first_atoms(b, Species::Junk, 2));
        match atoms.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ba() -> LabelledBA {
        LabelledBA::new(vec![
            Cluster::new(SymCard::Fin(2), SymCard::Fin(3), false),
            Cluster::new(SymCard::Omega, SymCard::Omega, true),
        ])
    }

    #[test]
    fn counts_on_tops() {
        let b = ba();
        let top0 = b.cluster_top(0);
        assert_eq!(b.c_plus(&top0).unwrap(), SymCard::Fin(2));
        assert_eq!(b.c_minus(&top0).unwrap(), SymCard::Fin(3));
        assert_eq!(b.c_plus(&b.top()).unwrap(), SymCard::Omega);
    }

    #[test]
    fn cofinite_junk_counts_omega() {
        let b = LabelledBA::single(SymCard::Fin(0), SymCard::Omega, false);
        let mut x = b.top();
        x.parts[0].junk_atoms.insert(0);
        assert_eq!(b.c_minus(&x).unwrap(), SymCard::Omega);
        assert!(!x.contains_atom(&b, AtomRef::new(0, Species::Junk, 0)));
        assert!(x.contains_atom(&b, AtomRef::new(0, Species::Junk, 1)));
    }

    #[test]
    fn take_three_in() {
        let b = LabelledBA::single(SymCard::Omega, SymCard::Omega, false);
        let mut x = b.bottom();
        x.parts[0].in_atoms.extend([0, 1, 2]);
        assert_eq!(b.c_plus(&x).unwrap(), SymCard::Fin(3));
        assert_eq!(b.c_minus(&x).unwrap(), SymCard::Fin(0));
    }

    #[test]
    fn boolean_identities() {
        let b = ba();
        let mut x = b.cluster_top(1);
        x.parts[1].in_atoms.insert(4);
        x.parts[0].junk_atoms.insert(1);
        let y = b.atom(AtomRef::new(1, Species::In, 4)).join(&b.atom(AtomRef::new(0, Species::In, 0)), &b);
        assert_eq!(x.join(&x.complement(&b), &b), b.top());
        assert!(x.meet(&x.complement(&b), &b).is_bottom());
        assert_eq!(x.complement(&b).complement(&b), x);
        assert!(x.meet(&y, &b).le(&x, &b));
        assert!(x.meet(&y, &b).le(&y, &b));
        assert!(x.le(&x.join(&y, &b), &b));
        assert_eq!(b.atom(AtomRef::new(0, Species::Junk, 2)).as_atom(&b), Some(AtomRef::new(0, Species::Junk, 2)));
        assert!(b.bottom().check(&b).is_ok());
        let mut bad = b.bottom();
        bad.parts[0].in_atoms.insert(2);
        assert!(bad.check(&b).is_err());
    }
}
