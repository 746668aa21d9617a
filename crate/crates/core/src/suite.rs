//! Seeded random instances for the property suites, and the per-instance
//! duality checks they run.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{compactum_form, reduction_r};
use crate::boolalg::{ba_form, clopen_algebra, dual_algebra, quotient_r, stone_space, Cluster, LabelledBA, SymCard};
use crate::construct::construct_limit;
use crate::numerics::Address;
use crate::trees::{apply_event, fishbone, Event, Label, LabelledTree, StageScript, StageTree};

pub fn suite_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for [`random_tree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeParams {
    pub max_depth: usize,
    pub max_nodes: usize,
    pub max_r: u32,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_depth: 5,
            max_nodes: 40,
            max_r: 3,
        }
    }
}

fn random_leaf<R: Rng>(rng: &mut R) -> Label {
    if rng.random_bool(0.5) {
        Label::Terminal
    } else {
        Label::Eta
    }
}

fn grow<R: Rng>(
    rng: &mut R,
    at: Address,
    depth_left: usize,
    budget: &mut usize,
    max_r: u32,
    out: &mut BTreeMap<Address, Label>,
) {
    *budget -= 1;
    if depth_left == 0 || *budget < 2 || rng.random_bool(0.35) {
        out.insert(at, random_leaf(rng));
        return;
    }
    let r = rng.random_range(0..=max_r);
    // A split that was never terminal needs a replacement to carry junk.
    let ever_terminal = r == 0 || rng.random_bool(0.7);
    out.insert(
        at.clone(),
        Label::Split {
            m: r,
            r,
            ever_terminal,
        },
    );
    // Reserve one node for the right child before growing the left.
    *budget -= 1;
    grow(rng, at.child(2 * r + 1), depth_left - 1, budget, max_r, out);
    *budget += 1;
    grow(rng, at.child(2 * r + 2), depth_left - 1, budget, max_r, out);
}

/// A fishbone of one to three random components.
pub fn random_tree<R: Rng>(rng: &mut R, params: TreeParams) -> LabelledTree {
    let k = rng.random_range(1..=3usize.min(params.max_depth + 1));
    let mut budget = params.max_nodes - (k - 1);
    let mut comps = Vec::with_capacity(k);
    for i in 0..k {
        // Component i sits at depth i+1, the last one at depth k-1.
        let graft = if i + 1 < k { i + 1 } else { k - 1 };
        let share = budget - (k - 1 - i);
        let mut local = share.div_ceil(k - i).max(1);
        let before = local;
        let mut nodes = BTreeMap::new();
        grow(rng, Address::root(), params.max_depth - graft, &mut local, params.max_r, &mut nodes);
        budget -= before - local;
        comps.push(LabelledTree::new(nodes).expect("generated tree is valid"));
    }
    fishbone(&comps).expect("at least one component")
}

/// A script from a small skeleton with up to `max_events` random events.
pub fn random_script<R: Rng>(rng: &mut R, max_events: usize) -> StageScript {
    let leaves: Vec<LabelledTree> = (0..rng.random_range(1..=2))
        .map(|_| {
            let l = if rng.random_bool(0.8) { Label::Terminal } else { Label::Eta };
            LabelledTree::leaf(l)
        })
        .collect();
    let initial = fishbone(&leaves).expect("nonempty");
    let mut state = StageTree::new(&initial);
    let mut events = Vec::new();
    let target = rng.random_range(0..=max_events);
    while events.len() < target {
        let mut options: Vec<Event> = state
            .nodes()
            .filter_map(|(a, l)| match l {
                Label::Terminal if a.len() < 6 => Some(Event::FreshPair(a.clone())),
                Label::Split { r, .. } if *r < 3 => Some(Event::ReplacePair(a.clone())),
                _ => None,
            })
            .collect();
        options.shuffle(rng);
        let Some(next) = options.into_iter().find_map(|e| apply_event(&state, &e).ok().map(|s| (e, s))) else {
            break;
        };
        events.push(next.0);
        state = next.1;
    }
    let mut script = StageScript::new(initial, events);
    let terminals: Vec<Address> = state
        .nodes()
        .filter(|(_, l)| **l == Label::Terminal)
        .map(|(a, _)| a.clone())
        .collect();
    for a in terminals {
        if rng.random_bool(0.3) {
            script = script.with_label(a, Label::Eta);
        }
    }
    script
}

const CARDS: [SymCard; 7] = [
    SymCard::Fin(0),
    SymCard::Fin(1),
    SymCard::Fin(2),
    SymCard::Fin(3),
    SymCard::Fin(4),
    SymCard::Fin(5),
    SymCard::Omega,
];

/// A random algebra with at most `max_clusters` clusters satisfying the dagger condition:
/// a cluster has infinitely many `in` atoms exactly when it has
/// infinitely many junk atoms.
pub fn random_dagger_ba<R: Rng>(rng: &mut R, max_clusters: usize, max_card: u64) -> LabelledBA {
    let n = rng.random_range(1..=max_clusters);
    let clusters = (0..n)
        .map(|_| {
            let atomless = rng.random_bool(0.25);
            if rng.random_bool(0.3) {
                Cluster::new(SymCard::Omega, SymCard::Omega, atomless)
            } else {
                let a = rng.random_range(0..=max_card);
                let b = rng.random_range(0..=max_card);
                Cluster::new(SymCard::Fin(a), SymCard::Fin(b), atomless)
            }
        })
        .collect();
    LabelledBA::new(clusters)
}

/// A random algebra with cardinalities drawn from `{0..5, ω}`, without
/// regard to the dagger condition.
pub fn random_ba<R: Rng>(rng: &mut R, max_clusters: usize) -> LabelledBA {
    let n = rng.random_range(1..=max_clusters);
    let clusters = (0..n)
        .map(|_| {
            let a = CARDS[rng.random_range(0..CARDS.len())];
            let b = CARDS[rng.random_range(0..CARDS.len())];
            Cluster::new(a, b, rng.random_bool(0.25))
        })
        .collect();
    LabelledBA::new(clusters)
}

fn finite_indices(b: &LabelledBA) -> Vec<usize> {
    (0..b.len()).filter(|&i| !b.clusters[i].has_limit()).collect()
}

/// A second algebra isomorphic to `b`, obtained by moves that keep the
/// quotient form and the junk total: moving finite atoms between finite
/// clusters or into limit clusters, splitting and merging finite clusters,
/// redistributing atomless parts, and shuffling.
pub fn isomorphic_variant<R: Rng>(rng: &mut R, b: &LabelledBA, max_clusters: usize) -> LabelledBA {
    let mut cs = b.clusters.clone();
    let has_limit = cs.iter().any(Cluster::has_limit);
    for _ in 0..rng.random_range(0..8) {
        let fin = finite_indices(&LabelledBA::new(cs.clone()));
        match rng.random_range(0..4) {
            0 | 1 if !fin.is_empty() => {
                let from = fin[rng.random_range(0..fin.len())];
                let junk = rng.random_bool(0.5);
                let count = if junk { &mut cs[from].n_junk } else { &mut cs[from].n_in };
                if *count == SymCard::Fin(0) {
                    continue;
                }
                *count = *count - 1;
                let targets: Vec<usize> = if has_limit && rng.random_bool(0.3) {
                    (0..cs.len()).filter(|&i| cs[i].has_limit()).collect()
                } else {
                    fin.clone()
                };
                let to = targets[rng.random_range(0..targets.len())];
                let count = if junk { &mut cs[to].n_junk } else { &mut cs[to].n_in };
                *count = *count + SymCard::Fin(1);
            }
            2 if fin.len() >= 2 => {
                let (i, j) = (fin[0], fin[fin.len() - 1]);
                let other = cs.remove(j);
                cs[i].n_in = cs[i].n_in + other.n_in;
                cs[i].n_junk = cs[i].n_junk + other.n_junk;
                cs[i].atomless |= other.atomless;
            }
            _ if cs.len() < max_clusters => {
                cs.push(Cluster::new(SymCard::Fin(0), SymCard::Fin(0), false));
            }
            _ => {}
        }
    }
    if cs.iter().any(|c| c.atomless) {
        for c in cs.iter_mut() {
            c.atomless = rng.random_bool(0.4);
        }
        if !cs.iter().any(|c| c.atomless) {
            let i = rng.random_range(0..cs.len());
            cs[i].atomless = true;
        }
    }
    cs.shuffle(rng);
    LabelledBA::new(cs)
}

/// `R(C(T))` and the Stone space of `T` have the same canonical form.
pub fn duality_roundtrip(t: &LabelledTree) -> Result<(), String> {
    let lhs = compactum_form(&reduction_r(&construct_limit(t)));
    let rhs = compactum_form(&stone_space(t));
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("reduced limit is {lhs}, Stone space is {rhs}"))
    }
}

/// `r(Clop(C(T)))` and the dual algebra of `T` have the same form.
pub fn algebra_roundtrip(t: &LabelledTree) -> Result<(), String> {
    let lhs = ba_form(&quotient_r(&clopen_algebra(&construct_limit(t))));
    let rhs = ba_form(&dual_algebra(t));
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("quotient algebra is {lhs}, dual algebra is {rhs}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::dagger_check;

    #[test]
    fn trees_respect_limits() {
        let mut rng = suite_rng(1);
        let p = TreeParams::default();
        let mut etas = 0;
        for _ in 0..300 {
            let t = random_tree(&mut rng, p);
            assert!(t.depth() <= p.max_depth, "depth {}", t.depth());
            assert!(t.len() <= p.max_nodes, "nodes {}", t.len());
            etas += t.leaves().filter(|(_, l)| *l == Label::Eta).count();
        }
        assert!(etas > 0);
    }

    #[test]
    fn seeded_runs_repeat() {
        let run = |seed| {
            let mut rng = suite_rng(seed);
            (0..20).map(|_| random_tree(&mut rng, TreeParams::default())).collect::<Vec<_>>()
        };
        assert_eq!(run(9), run(9));
        assert_ne!(run(9), run(10));
    }

    #[test]
    fn scripts_replay() {
        let mut rng = suite_rng(2);
        for _ in 0..100 {
            let s = random_script(&mut rng, 20);
            assert!(s.events.len() <= 20);
            assert!(crate::trees::limit_tree(&s).is_ok());
        }
    }

    #[test]
    fn variants_keep_invariants() {
        let mut rng = suite_rng(3);
        for _ in 0..200 {
            let b = random_dagger_ba(&mut rng, 6, 5);
            let v = isomorphic_variant(&mut rng, &b, 6);
            assert!(dagger_check(&v));
            assert_eq!(ba_form(&quotient_r(&b)), ba_form(&quotient_r(&v)));
            assert_eq!(b.total(crate::boolalg::Species::Junk), v.total(crate::boolalg::Species::Junk));
        }
    }
}
