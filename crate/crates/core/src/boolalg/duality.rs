use super::{Cluster, ClusterElem, Element, LabelledBA, SymCard};
use crate::analysis::{Component, Kind, SymbolicCompactum};
use crate::numerics::interval_of;
use crate::trees::{Label, LabelledTree};

/// The clopen algebra of a compactum, labelled by `in` on interval atoms.
///
/// Components outside glued runs share one cluster: intervals are `in`
/// atoms, points are junk atoms, Cantor sets give the atomless part. A free
/// convergent sequence, and likewise a run of an interval with glued
/// sequences, has the clopen sets of `ω+1` and so is a cluster of its own.
pub fn clopen_algebra(s: &SymbolicCompactum) -> LabelledBA {
    let mut free = Cluster::new(SymCard::Fin(0), SymCard::Fin(0), false);
    let mut rest = Vec::new();
    for unit in s.units() {
        if unit.len() > 1 {
            rest.push(Cluster::new(SymCard::Fin(0), SymCard::Omega, false));
            continue;
        }
        match s.components()[unit[0]].kind() {
            Kind::Point => free.n_junk = free.n_junk + SymCard::Fin(1),
            Kind::Interval => free.n_in = free.n_in + SymCard::Fin(1),
            Kind::Cantor => free.atomless = true,
            Kind::PointSeq => rest.push(Cluster::new(SymCard::Fin(0), SymCard::Omega, false)),
        }
    }
    let mut clusters = vec![free];
    clusters.extend(rest);
    LabelledBA::new(clusters)
}

fn quotient_cluster(c: &Cluster) -> Cluster {
    let n_in = match (c.n_in, c.n_junk) {
        (SymCard::Omega, _) => SymCard::Omega,
        // The cofinite junk sets survive as one new atom.
        (SymCard::Fin(n), SymCard::Omega) => SymCard::Fin(n + 1),
        (n, SymCard::Fin(_)) => n,
    };
    Cluster::new(n_in, SymCard::Fin(0), c.atomless)
}

/// `r(B)`: the quotient by the ideal of finite sets of junk atoms, with the
/// surviving atoms relabelled as plain atoms of species `in`.
///
/// Clusters keep their positions, and `in` atoms keep their indices. A
/// cluster with finitely many `in` atoms but infinitely many junk atoms
/// gains the class of its cofinite junk sets as atom number `n_in`.
pub fn quotient_r(b: &LabelledBA) -> LabelledBA {
    LabelledBA::new(b.clusters.iter().map(quotient_cluster).collect())
}

/// The class `x/∼` as an element of [`quotient_r`].
pub fn quotient_element(b: &LabelledBA, x: &Element) -> Element {
    let parts = x
        .parts
        .iter()
        .zip(&b.clusters)
        .map(|(p, c)| {
            let mut q = ClusterElem {
                limit: false,
                in_atoms: p.in_atoms.clone(),
                junk_atoms: Default::default(),
                atomless: p.atomless.clone(),
            };
            match (c.n_in, c.n_junk) {
                (SymCard::Omega, _) => q.limit = p.limit,
                (SymCard::Fin(n), SymCard::Omega)
                    if p.limit => {
                        q.in_atoms.insert(n);
                    }
                _ => {}
            }
            q
        })
        .collect();
    Element { parts }
}

/// A representative in `b` of an element of `quotient_r(b)`; it takes no
/// junk atoms beyond those forced by a limit point.
pub fn lift(b: &LabelledBA, q: &Element) -> Element {
    let parts = q
        .parts
        .iter()
        .zip(&b.clusters)
        .map(|(p, c)| {
            let mut x = ClusterElem {
                limit: false,
                in_atoms: p.in_atoms.clone(),
                junk_atoms: Default::default(),
                atomless: p.atomless.clone(),
            };
            match (c.n_in, c.n_junk) {
                (SymCard::Omega, _) => x.limit = p.limit,
                (SymCard::Fin(n), SymCard::Omega) => x.limit = x.in_atoms.remove(&n),
                _ => {}
            }
            x
        })
        .collect();
    Element { parts }
}

/// Dagger condition, clusterwise: `in` is infinite exactly when junk is.
pub fn dagger_check(b: &LabelledBA) -> bool {
    b.clusters.iter().all(|c| c.n_in.is_omega() == c.n_junk.is_omega())
}

/// The algebra whose Stone space is `[T]`: one atom per terminal leaf and
/// an atomless part when some leaf is Eta.
pub fn dual_algebra(t: &LabelledTree) -> LabelledBA {
    LabelledBA::single(SymCard::Fin(t.count_terminal() as u64), SymCard::Fin(0), t.has_eta())
}

/// `[T]` realized inside the interval scheme: an isolated point per
/// terminal leaf and a Cantor set per Eta leaf.
pub fn stone_space(t: &LabelledTree) -> SymbolicCompactum {
    let comps = t
        .leaves()
        .filter_map(|(addr, label)| {
            let iv = interval_of(addr);
            match label {
                Label::Terminal => Some(Component::Point(iv.midpoint().to_rational())),
                Label::Eta => Some(Component::Cantor(iv.lo().to_rational(), iv.hi().to_rational())),
                _ => None,
            }
        })
        .collect();
    SymbolicCompactum::new(comps).expect("leaf intervals are disjoint")
}
