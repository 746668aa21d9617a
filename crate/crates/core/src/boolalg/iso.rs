use std::collections::{BTreeMap, BTreeSet};

use super::{
    ba_form, dagger_check, lift, quotient_element, quotient_r, AtomRef, Element, LabelledBA, Species,
    SymCard,
};
use crate::numerics::Dyadic;

/// A basic dyadic piece `[k/2^L, (k+1)/2^L)` of a cluster's atomless part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CantorPiece {
    pub cluster: usize,
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl CantorPiece {
    pub fn whole(cluster: usize) -> Self {
        CantorPiece {
            cluster,
            lo: Dyadic::zero(),
            hi: Dyadic::one(),
        }
    }

    fn is_basic(&self) -> bool {
        let len = &self.hi - &self.lo;
        !len.is_negative()
            && !len.is_zero()
            && len.num() == &1.into()
            && self.lo.exp() <= len.exp()
            && !self.lo.is_negative()
            && self.hi <= Dyadic::one()
    }
}

/// An isomorphism between two cluster algebras, given on generators.
///
/// `atoms` lists explicit atom pairs. A pair `(c, d)` in `tails` sends the
/// limit point of cluster `c` to that of `d`, and the atoms of `c` not
/// listed in `atoms` to those of `d` not listed, species by species in
/// increasing index order. `cantor` maps atomless pieces affinely.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomIso {
    pub atoms: Vec<(AtomRef, AtomRef)>,
    pub tails: Vec<(usize, usize)>,
    pub cantor: Vec<(CantorPiece, CantorPiece)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error("dagger condition fails in algebra {0}")]
    Dagger(usize),
    #[error("junk atom totals differ: {0} vs {1}")]
    JunkMismatch(SymCard, SymCard),
    #[error("canonical forms differ")]
    FormMismatch,
    #[error("not an isomorphism: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> IsoError {
    IsoError::Invalid(msg.into())
}

type Explicit = BTreeMap<(usize, Species), BTreeSet<u64>>;

/// Position of `i` among the naturals outside `skip`.
fn rank(skip: &BTreeSet<u64>, i: u64) -> u64 {
    i - skip.range(..i).count() as u64
}

/// Inverse of [`rank`].
fn unrank(skip: &BTreeSet<u64>, k: u64) -> u64 {
    let mut j = k;
    for &e in skip {
        if e <= j {
            j += 1;
        } else {
            break;
        }
    }
    j
}

impl AtomIso {
    pub fn inverse(&self) -> AtomIso {
        AtomIso {
            atoms: self.atoms.iter().map(|(s, t)| (*t, *s)).collect(),
            tails: self.tails.iter().map(|(c, d)| (*d, *c)).collect(),
            cantor: self.cantor.iter().map(|(p, q)| (q.clone(), p.clone())).collect(),
        }
    }

    fn explicit(&self) -> (Explicit, Explicit) {
        let (mut src, mut dst) = (Explicit::new(), Explicit::new());
        for (s, t) in &self.atoms {
            src.entry((s.cluster, s.species)).or_default().insert(s.index);
            dst.entry((t.cluster, t.species)).or_default().insert(t.index);
        }
        (src, dst)
    }

    /// Image of an element; assumes [`verify_isomorphism`] passed.
    pub fn apply(&self, a: &LabelledBA, b: &LabelledBA, x: &Element) -> Element {
        let (src, dst) = self.explicit();
        let none = BTreeSet::new();
        let mut y = Element::bottom(b);
        for &(c, d) in &self.tails {
            let xp = &x.parts[c];
            y.parts[d].limit = xp.limit;
            for s in [Species::In, Species::Junk] {
                let ea = src.get(&(c, s)).unwrap_or(&none);
                let eb = dst.get(&(d, s)).unwrap_or(&none);
                let mut set: BTreeSet<u64> = xp
                    .set(s)
                    .iter()
                    .filter(|i| !ea.contains(i))
                    .map(|&i| unrank(eb, rank(ea, i)))
                    .collect();
                if xp.limit && a.clusters[c].count(s).is_omega() {
                    // Explicit targets start out excluded; the pairs below add them back.
                    set.extend(eb);
                }
                *y.parts[d].set_mut(s) = set;
            }
        }
        for (s, t) in &self.atoms {
            if x.contains_atom(a, *s) {
                y.set_atom(b, *t, true);
            }
        }
        for (p, q) in &self.cantor {
            let img = x.parts[p.cluster].atomless.transport((&p.lo, &p.hi), (&q.lo, &q.hi));
            let target = &mut y.parts[q.cluster].atomless;
            *target = target.union(&img);
        }
        y
    }
}

fn check_atom(b: &LabelledBA, a: &AtomRef) -> Result<(), IsoError> {
    let c = b.clusters.get(a.cluster).ok_or_else(|| invalid(format!("no cluster {}", a.cluster)))?;
    match c.count(a.species) {
        SymCard::Fin(n) if a.index >= n => Err(invalid(format!("no atom {a}"))),
        _ => Ok(()),
    }
}

fn check_pieces<'a>(
    b: &LabelledBA,
    pieces: impl Iterator<Item = &'a CantorPiece>,
    side: &str,
) -> Result<(), IsoError> {
    let mut by_cluster: BTreeMap<usize, Vec<&CantorPiece>> = BTreeMap::new();
    for p in pieces {
        if !p.is_basic() {
            return Err(invalid(format!("{side} piece [{}, {}) is not basic", p.lo, p.hi)));
        }
        if !b.clusters.get(p.cluster).is_some_and(|c| c.atomless) {
            return Err(invalid(format!("{side} piece in cluster {} without atomless part", p.cluster)));
        }
        by_cluster.entry(p.cluster).or_default().push(p);
    }
    for (ci, c) in b.clusters.iter().enumerate() {
        if !c.atomless {
            continue;
        }
        let mut ps = by_cluster.remove(&ci).unwrap_or_default();
        ps.sort_by(|x, y| x.lo.cmp(&y.lo));
        let mut cursor = Dyadic::zero();
        for p in ps {
            if p.lo != cursor {
                return Err(invalid(format!("{side} pieces of cluster {ci} do not tile it")));
            }
            cursor = p.hi.clone();
        }
        if cursor != Dyadic::one() {
            return Err(invalid(format!("{side} pieces of cluster {ci} do not tile it")));
        }
    }
    Ok(())
}

/// Checks that `iso` describes a label-preserving isomorphism `a → b`.
pub fn verify_isomorphism(a: &LabelledBA, b: &LabelledBA, iso: &AtomIso) -> Result<(), IsoError> {
    let (mut seen_s, mut seen_t) = (BTreeSet::new(), BTreeSet::new());
    for (s, t) in &iso.atoms {
        check_atom(a, s)?;
        check_atom(b, t)?;
        if s.species != t.species {
            return Err(invalid(format!("{s} and {t} differ in species")));
        }
        if !seen_s.insert(*s) || !seen_t.insert(*t) {
            return Err(invalid(format!("atom pair ({s}) -> ({t}) repeats an atom")));
        }
    }
    let (src, dst) = iso.explicit();
    let explicit_count = |e: &Explicit, c: usize, s: Species| e.get(&(c, s)).map_or(0, |v| v.len() as u64);

    let (mut tail_s, mut tail_t) = (BTreeMap::new(), BTreeSet::new());
    for &(c, d) in &iso.tails {
        let ok = a.clusters.get(c).is_some_and(|x| x.has_limit()) && b.clusters.get(d).is_some_and(|x| x.has_limit());
        if !ok {
            return Err(invalid(format!("tail {c} -> {d} does not join limit clusters")));
        }
        if tail_s.insert(c, d).is_some() || !tail_t.insert(d) {
            return Err(invalid(format!("tail {c} -> {d} repeats a cluster")));
        }
    }
    for (ci, c) in a.clusters.iter().enumerate() {
        for s in [Species::In, Species::Junk] {
            let left = c.count(s) - explicit_count(&src, ci, s);
            let right = match tail_s.get(&ci) {
                Some(&d) => b.clusters[d].count(s) - explicit_count(&dst, d, s),
                None if c.has_limit() => return Err(invalid(format!("limit of cluster {ci} is not mapped"))),
                None => SymCard::Fin(0),
            };
            if left != right {
                return Err(invalid(format!("cluster {ci}: {left} unmapped {s} atoms against {right}")));
            }
        }
    }
    for (di, d) in b.clusters.iter().enumerate() {
        if d.has_limit() && !tail_t.contains(&di) {
            return Err(invalid(format!("limit of target cluster {di} is not hit")));
        }
        if !tail_t.contains(&di) {
            for s in [Species::In, Species::Junk] {
                if d.count(s) != SymCard::Fin(explicit_count(&dst, di, s)) {
                    return Err(invalid(format!("target cluster {di} has unmapped {s} atoms")));
                }
            }
        }
    }
    check_pieces(a, iso.cantor.iter().map(|(p, _)| p), "source")?;
    check_pieces(b, iso.cantor.iter().map(|(_, q)| q), "target")?;
    Ok(())
}

/// Splits `[0, 1)` into `n` basic pieces `[0,1/2), [1/2,3/4), …`.
fn halving_pieces(cluster: usize, n: usize) -> Vec<CantorPiece> {
    let mut out = Vec::with_capacity(n);
    let mut lo = Dyadic::zero();
    for i in 0..n {
        let hi = if i + 1 == n {
            Dyadic::one()
        } else {
            &lo + &Dyadic::pow2_neg(i as u32 + 1)
        };
        out.push(CantorPiece {
            cluster,
            lo: lo.clone(),
            hi: hi.clone(),
        });
        lo = hi;
    }
    out
}

fn pair_atomless(a: &LabelledBA, b: &LabelledBA) -> Vec<(CantorPiece, CantorPiece)> {
    let ca: Vec<usize> = (0..a.len()).filter(|&i| a.clusters[i].atomless).collect();
    let cb: Vec<usize> = (0..b.len()).filter(|&i| b.clusters[i].atomless).collect();
    if ca.is_empty() || cb.is_empty() {
        return Vec::new();
    }
    let expand = |few: &[usize], many: &[usize]| -> (Vec<CantorPiece>, Vec<CantorPiece>) {
        let k = few.len() - 1;
        let mut left: Vec<CantorPiece> = few[..k].iter().map(|&c| CantorPiece::whole(c)).collect();
        left.extend(halving_pieces(few[k], many.len() - k));
        (left, many.iter().map(|&c| CantorPiece::whole(c)).collect())
    };
    if ca.len() <= cb.len() {
        let (l, r) = expand(&ca, &cb);
        l.into_iter().zip(r).collect()
    } else {
        let (r, l) = expand(&cb, &ca);
        l.into_iter().zip(r).collect()
    }
}

/// A label-preserving isomorphism between algebras of equal [`ba_form`].
///
/// Limit clusters of the same kind are matched in order and finite atoms
/// of each species are matched in order. Surplus finite atoms on one side
/// are sent into the first limit cluster of the other side that has
/// infinitely many atoms of that species.
pub fn quotient_iso_canonical(a: &LabelledBA, b: &LabelledBA) -> Result<AtomIso, IsoError> {
    if ba_form(a) != ba_form(b) {
        return Err(IsoError::FormMismatch);
    }
    let mut iso = AtomIso::default();
    let limits = |x: &LabelledBA| -> Vec<((bool, bool), usize)> {
        let mut v: Vec<_> = (0..x.len())
            .filter(|&i| x.clusters[i].has_limit())
            .map(|i| ((x.clusters[i].n_in.is_omega(), x.clusters[i].n_junk.is_omega()), i))
            .collect();
        v.sort();
        v
    };
    let (la, lb) = (limits(a), limits(b));
    iso.tails = la.iter().zip(&lb).map(|(x, y)| (x.1, y.1)).collect();

    for s in [Species::In, Species::Junk] {
        let free = |x: &LabelledBA| -> Vec<AtomRef> {
            let mut v = Vec::new();
            for (ci, c) in x.clusters.iter().enumerate() {
                if let SymCard::Fin(n) = c.count(s) {
                    v.extend((0..n).map(|i| AtomRef::new(ci, s, i)));
                }
            }
            v
        };
        let sink = |x: &LabelledBA| (0..x.len()).find(|&i| x.clusters[i].count(s).is_omega());
        let (fa, fb) = (free(a), free(b));
        let common = fa.len().min(fb.len());
        iso.atoms.extend(fa[..common].iter().copied().zip(fb[..common].iter().copied()));
        if fa.len() > common {
            let d = sink(b).ok_or(IsoError::FormMismatch)?;
            let extra = fa[common..].iter().enumerate().map(|(k, &x)| (x, AtomRef::new(d, s, k as u64)));
            iso.atoms.extend(extra);
        } else if fb.len() > common {
            let c = sink(a).ok_or(IsoError::FormMismatch)?;
            let extra = fb[common..].iter().enumerate().map(|(k, &y)| (AtomRef::new(c, s, k as u64), y));
            iso.atoms.extend(extra);
        }
    }
    iso.cantor = pair_atomless(a, b);
    verify_isomorphism(a, b, &iso)?;
    Ok(iso)
}

/// One side of the back-and-forth: algebras `src → dst` and the quotient
/// isomorphism in that direction.
struct Side<'a> {
    src: &'a LabelledBA,
    dst: &'a LabelledBA,
    qsrc: LabelledBA,
    qdst: LabelledBA,
    f: AtomIso,
}

impl Side<'_> {
    /// `b ≤ y` with `(a, b)` and `(x−a, y−b)` both related, given `a ≤ x` and `(x, y)` related.
    fn partner(&self, x: &Element, y: &Element, a: &Element) -> Element {
        let (src, dst) = (self.src, self.dst);
        if let SymCard::Fin(k) = a.count(src, Species::Junk) {
            let image = self.f.apply(&self.qsrc, &self.qdst, &quotient_element(src, a));
            let mut b = lift(dst, &image).meet(y, dst);
            match b.count(dst, Species::Junk) {
                SymCard::Fin(j) if j > k => {
                    for atom in b.first_atoms(dst, Species::Junk, (j - k) as usize) {
                        b.set_atom(dst, atom, false);
                    }
                }
                SymCard::Fin(j) => {
                    let spare = y.minus(&b, dst);
                    for atom in spare.first_atoms(dst, Species::Junk, (k - j) as usize) {
                        b.set_atom(dst, atom, true);
                    }
                }
                SymCard::Omega => {}
            }
            return b;
        }
        let rest = x.minus(a, src);
        if rest.count(src, Species::Junk).is_finite() {
            return y.minus(&self.partner(x, y, &rest), dst);
        }
        let image = self.f.apply(&self.qsrc, &self.qdst, &quotient_element(src, a));
        lift(dst, &image).meet(y, dst)
    }
}

struct Refiner<'a> {
    forth: Side<'a>,
    back: Side<'a>,
    pieces: Vec<(Element, Element)>,
}

impl Refiner<'_> {
    /// Splits every piece along `g`, an element of the source when `forward`
    /// and of the target otherwise.
    fn split(&mut self, g: &Element, forward: bool) {
        let side = if forward { &self.forth } else { &self.back };
        let mut out = Vec::with_capacity(self.pieces.len() + 1);
        for (x0, y0) in self.pieces.drain(..) {
            let (x, y) = if forward { (x0, y0) } else { (y0, x0) };
            let a = x.meet(g, side.src);
            let rest = x.minus(&a, side.src);
            if a.is_bottom() || rest.is_bottom() {
                out.push(if forward { (x, y) } else { (y, x) });
                continue;
            }
            let b = side.partner(&x, &y, &a);
            let y_rest = y.minus(&b, side.dst);
            if forward {
                out.push((a, b));
                out.push((rest, y_rest));
            } else {
                out.push((b, a));
                out.push((y_rest, rest));
            }
        }
        self.pieces = out;
    }

    /// Splits finite pieces until each holds a single atom.
    fn atomize(&mut self) {
        loop {
            let b0 = self.forth.src;
            let target = self.pieces.iter().find_map(|(x, _)| {
                let many = x.is_finite() && x.count(b0, Species::In) + x.count(b0, Species::Junk) > SymCard::Fin(1);
                many.then(|| {
                    let mut firsts = x.first_atoms(b0, Species::In, 1);
                    firsts.extend(x.first_atoms(b0, Species::Junk, 1));
                    firsts[0]
                })
            });
            match target {
                Some(atom) => self.split(&b0.atom(atom), true),
                None => return,
            }
        }
    }
}

fn max_finite(b: &LabelledBA) -> u64 {
    b.clusters
        .iter()
        .flat_map(|c| [c.n_in, c.n_junk])
        .filter_map(SymCard::finite)
        .max()
        .unwrap_or(0)
}

/// Lifts an isomorphism of the quotients `r(B₀) → r(B₁)` to a
/// label-preserving isomorphism `B₀ → B₁` by back-and-forth.
///
/// Pairs of related elements `(x, y)` satisfy `F(x/∼) = y/∼` and have the
/// same number of junk atoms. A partition of the top is refined along
/// cluster tops, atomless parts and atoms of small index, alternating
/// sides, until every finite piece is one atom. Atoms are then read off
/// the singleton pieces, limit points off the remaining pieces, and the
/// atomless parts follow `F`.
pub fn build_isomorphism(b0: &LabelledBA, b1: &LabelledBA, f: &AtomIso) -> Result<AtomIso, IsoError> {
    for (i, b) in [b0, b1].into_iter().enumerate() {
        if !dagger_check(b) {
            return Err(IsoError::Dagger(i));
        }
    }
    let (q0, q1) = (quotient_r(b0), quotient_r(b1));
    verify_isomorphism(&q0, &q1, f)?;
    let (j0, j1) = (b0.total(Species::Junk), b1.total(Species::Junk));
    if j0 != j1 {
        return Err(IsoError::JunkMismatch(j0, j1));
    }
    let mut r = Refiner {
        forth: Side {
            src: b0,
            dst: b1,
            qsrc: q0.clone(),
            qdst: q1.clone(),
            f: f.clone(),
        },
        back: Side {
            src: b1,
            dst: b0,
            qsrc: q1,
            qdst: q0,
            f: f.inverse(),
        },
        pieces: vec![(b0.top(), b1.top())],
    };
    r.pieces.retain(|(x, _)| !x.is_bottom());

    for i in 0..b0.len() {
        r.split(&b0.cluster_top(i), true);
    }
    for i in 0..b1.len() {
        r.split(&b1.cluster_top(i), false);
    }
    for i in 0..b0.len() {
        r.split(&b0.atomless_top(i), true);
    }
    for i in 0..b1.len() {
        r.split(&b1.atomless_top(i), false);
    }
    let max_explicit = f.atoms.iter().flat_map(|(s, t)| [s.index, t.index]).max().unwrap_or(0);
    let n = max_finite(b0).max(max_finite(b1)).max(max_explicit) + 1;
    for index in 0..n {
        for (b, forward) in [(b0, true), (b1, false)] {
            for (ci, c) in b.clusters.iter().enumerate() {
                for s in [Species::In, Species::Junk] {
                    if c.count(s) > SymCard::Fin(index) {
                        r.split(&b.atom(AtomRef::new(ci, s, index)), forward);
                    }
                }
            }
        }
    }
    r.atomize();

    let mut g = AtomIso {
        cantor: f.cantor.clone(),
        ..AtomIso::default()
    };
    for (x, y) in &r.pieces {
        if let Some(s) = x.as_atom(b0) {
            let t = y.as_atom(b1).ok_or_else(|| invalid(format!("atom {s} paired with a non-atom")))?;
            g.atoms.push((s, t));
        } else if let Some(c) = x.parts.iter().position(|p| p.limit) {
            let d = y
                .parts
                .iter()
                .position(|p| p.limit)
                .ok_or_else(|| invalid(format!("limit of cluster {c} paired with no limit")))?;
            g.tails.push((c, d));
        } else if x.parts.iter().any(|p| !p.in_atoms.is_empty() || !p.junk_atoms.is_empty()) {
            return Err(invalid("refinement left a piece with several atoms"));
        }
    }
    g.atoms.sort();
    g.tails.sort();
    verify_isomorphism(b0, b1, &g)?;
    Ok(g)
}
