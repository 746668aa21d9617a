use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use intom::analysis::text::{parse_compactum, print_compactum};
use intom::analysis::{
    cb_derivative, cb_equiv, check_property_in, is_intom, reduce, ClopenSelector, Component, SymbolicCompactum,
};
use intom::banach::text::{parse_plf, print_plf};
use intom::banach::{tooth, HostedFunction, PLFunction};
use intom::boolalg::text::{parse_ba, parse_iso, print_ba, print_iso};
use intom::boolalg::{
    ba_form, build_isomorphism, intalg, quotient_iso_canonical, quotient_r, verify_isomorphism, AtomRef, Element,
    LabelledBA, Species,
};
use intom::compact::text::{parse_cover, print_cover};
use intom::compact::{clopen_partitions, cover, verify_cover};
use intom::construct::{construct_limit, construct_traced, enumerate_stage};
use intom::numerics::{concentration_point, interval_of, rat, Address, Dyadic, Rational};
use intom::suite::{isomorphic_variant, random_dagger_ba, random_script, random_tree, suite_rng, TreeParams};
use intom::trees::text::{parse_script, parse_tree, print_script, print_tree};
use intom::trees::{fishbone, limit_tree, Label, LabelledTree, StageScript};

fn tree(seed: u64) -> LabelledTree {
    random_tree(&mut suite_rng(seed), TreeParams::default())
}

fn small_tree(seed: u64) -> LabelledTree {
    let p = TreeParams {
        max_depth: 3,
        max_nodes: 12,
        max_r: 2,
    };
    random_tree(&mut suite_rng(seed), p)
}

fn address() -> impl Strategy<Value = Address> {
    prop::collection::vec(0u32..8, 0..4).prop_map(|v| Address::from_slice(&v))
}

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-1_000_000i64..1_000_000, 0u32..40).prop_map(|(n, e)| Dyadic::new(n, e))
}

/// Sub-intervals of `[lo, hi]` of width `2^-level` that `s` meets; a
/// greedy sweep over them, each ball spanning eight of them, bounds the
/// optimal cover from below by a factor of two.
fn greedy_grid_cover(s: &SymbolicCompactum, n: u32) -> usize {
    let cell = Dyadic::pow2_neg(n + 2).to_rational();
    let cells = 1i64 << (n + 2);
    let occupied: Vec<i64> = (0..cells)
        .filter(|&k| {
            let lo = &cell * rat(k, 1);
            let hi = &lo + &cell;
            s.ceil(&lo).is_some_and(|c| c <= hi)
        })
        .collect();
    let mut count = 0;
    let mut reach = -1;
    for k in occupied {
        if k > reach {
            count += 1;
            reach = k + 7;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn child_intervals_nest_and_separate(s in address(), m in 0u32..10, m2 in 0u32..10) {
        let parent = interval_of(&s);
        let a = interval_of(&s.child(m));
        prop_assert!(parent.contains_interval(&a));
        prop_assert_eq!(a.length(), &parent.length() * &Dyadic::pow2_neg(m + 2));
        prop_assert!(!a.contains(&concentration_point(&s)));
        if m != m2 {
            prop_assert!(a.is_disjoint(&interval_of(&s.child(m2))));
        }
        let dist = (a.midpoint().to_rational() - concentration_point(&s).to_rational()).abs();
        let bound = (&parent.length() * &Dyadic::pow2_neg(m / 2 + 1)).to_rational();
        prop_assert!(dist <= bound);
    }

    #[test]
    fn dyadic_arithmetic_is_exact(a in dyadic(), b in dyadic()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a + &b).to_rational(), a.to_rational() + b.to_rational());
    }

    #[test]
    fn tombstones_stay_dead(seed in any::<u64>()) {
        let script = random_script(&mut suite_rng(seed), 20);
        let stages = script.stages().unwrap();
        let mut dead = BTreeSet::new();
        for st in &stages {
            prop_assert!(dead.is_subset(st.tombstones()));
            prop_assert!(st.nodes().all(|(a, _)| !st.is_tombstoned(a)));
            dead = st.tombstones().clone();
        }
    }

    #[test]
    fn limit_splits_have_final_pair(seed in any::<u64>()) {
        let script = random_script(&mut suite_rng(seed), 20);
        let t = limit_tree(&script).unwrap();
        for (a, l) in t.nodes() {
            if let Label::Split { m, .. } = l {
                let kids: Vec<u32> = t
                    .nodes()
                    .filter(|(c, _)| c.parent().as_ref() == Some(a))
                    .map(|(c, _)| c.last().unwrap())
                    .collect();
                prop_assert_eq!(kids, vec![2 * m + 1, 2 * m + 2]);
            }
        }
    }

    #[test]
    fn eventless_limit_is_relabelled_skeleton(seed in any::<u64>(), pick in any::<u64>()) {
        let t = small_tree(seed);
        let terminals: Vec<Address> = t.leaves().filter(|(_, l)| *l == Label::Terminal).map(|(a, _)| a.clone()).collect();
        let mut script = StageScript::new(t.clone(), vec![]);
        let mut expected: Vec<(Address, Label)> = t.nodes().map(|(a, l)| (a.clone(), *l)).collect();
        for (i, a) in terminals.iter().enumerate() {
            if pick >> (i % 64) & 1 == 1 {
                script = script.with_label(a.clone(), Label::Eta);
                expected.iter_mut().find(|(b, _)| b == a).unwrap().1 = Label::Eta;
            }
        }
        let got: Vec<(Address, Label)> = limit_tree(&script).unwrap().nodes().map(|(a, l)| (a.clone(), *l)).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn fishbone_roots_sit_on_the_spine(seeds in prop::collection::vec(any::<u64>(), 1..4)) {
        let comps: Vec<LabelledTree> = seeds.iter().map(|&s| small_tree(s)).collect();
        let f = fishbone(&comps).unwrap();
        let k = comps.len();
        for (i, c) in comps.iter().enumerate() {
            let mut at = vec![0; i];
            if i + 1 < k {
                at.push(1);
            }
            let root = Address::from_slice(&at);
            prop_assert_eq!(f.label(&root), c.label(&Address::root()));
            prop_assert_eq!(f.label(&Address::from_slice(&vec![0; i])).is_some(), true);
        }
        let spine: Vec<Address> = f.nodes().filter(|(_, l)| **l == Label::Spine).map(|(a, _)| a.clone()).collect();
        let inner: usize = comps.iter().map(|c| c.nodes().filter(|(_, l)| **l == Label::Spine).count()).sum();
        prop_assert_eq!(spine.len(), k - 1 + inner);
        let traced = construct_traced(&f);
        prop_assert!(traced.iter().all(|tr| !spine.contains(&tr.origin)));
    }

    #[test]
    fn limit_components_are_separated(seed in any::<u64>()) {
        let t = tree(seed);
        let s = construct_limit(&t);
        let comps = s.components();
        let no_sequences = comps.iter().all(|c| !matches!(c, Component::PointSeq { .. }));
        prop_assert!(no_sequences);
        for w in comps.windows(2) {
            prop_assert!(w[0].hi() < w[1].lo());
        }
        prop_assert!(check_property_in(&s));
        for tr in construct_traced(&t) {
            let iv = interval_of(&tr.origin);
            let (lo, hi) = (iv.lo().to_rational(), iv.hi().to_rational());
            prop_assert!(&lo <= tr.component.lo() && tr.component.hi() <= &hi);
            if let Component::Point(p) = &tr.component {
                prop_assert!(Dyadic::from_rational(p).is_some());
                if let Some(Label::Split { m, .. }) = t.label(&tr.origin) {
                    let a = interval_of(&tr.origin.child(2 * m + 1));
                    let b = interval_of(&tr.origin.child(2 * m + 2));
                    let (x, y) = if a.lo() < b.lo() { (a, b) } else { (b, a) };
                    prop_assert!(!(&x.hi().to_rational() < p && p < &y.lo().to_rational()));
                }
            }
        }
    }

    #[test]
    fn enumeration_grows(seed in any::<u64>()) {
        let script = random_script(&mut suite_rng(seed), 8);
        let mut prev = BTreeSet::new();
        for s in [0, 1, 3, 7, 15, 40] {
            let st = enumerate_stage(&script, s).unwrap();
            prop_assert!(prev.is_subset(&st.points));
            prev = st.points;
        }
    }

    #[test]
    fn derivative_and_reduct(seed in any::<u64>()) {
        let s = construct_limit(&tree(seed));
        let d = cb_derivative(&s);
        prop_assert_eq!(cb_derivative(&d), d.clone());
        prop_assert!(d.components().iter().all(|c| !matches!(c, Component::Point(_))));
        let r = reduce(&s);
        prop_assert_eq!(reduce(&r), r);
    }

    #[test]
    fn cb_equiv_is_an_equivalence(seed in any::<u64>(), picks in prop::collection::vec(any::<u64>(), 3)) {
        let s = construct_limit(&small_tree(seed));
        let sel = |p: u64| ClopenSelector::of((0..s.len()).filter(|i| p >> (i % 64) & 1 == 1));
        let (x, y, z) = (sel(picks[0]), sel(picks[1]), sel(picks[2]));
        prop_assert!(cb_equiv(&s, &x, &x).unwrap());
        prop_assert_eq!(cb_equiv(&s, &x, &y).unwrap(), cb_equiv(&s, &y, &x).unwrap());
        if cb_equiv(&s, &x, &y).unwrap() && cb_equiv(&s, &y, &z).unwrap() {
            prop_assert!(cb_equiv(&s, &x, &z).unwrap());
        }
        if cb_equiv(&s, &x, &y).unwrap() {
            let d = cb_derivative(&s);
            let keep = |sel: &ClopenSelector| {
                let idx: Vec<usize> = sel.iter().filter(|&i| !matches!(s.components()[i], Component::Point(_))).collect();
                let pos = |i: usize| (0..i).filter(|&j| !matches!(s.components()[j], Component::Point(_))).count();
                ClopenSelector::of(idx.into_iter().map(pos))
            };
            prop_assert_eq!(is_intom(&d, &keep(&x)).unwrap(), is_intom(&d, &keep(&y)).unwrap());
        }
    }

    #[test]
    fn interval_algebra_counts_points(flags in prop::collection::vec(any::<bool>(), 1..12)) {
        let order: Vec<(usize, bool)> = flags.iter().copied().enumerate().collect();
        let b = intalg(&order).unwrap();
        prop_assert_eq!(b.finite_atom_count(), Some(flags.len() as u64));
        let shuffled: Vec<(usize, bool)> = flags.iter().rev().copied().enumerate().collect();
        prop_assert_eq!(ba_form(&b), ba_form(&intalg(&shuffled).unwrap()));
    }

    #[test]
    fn isomorphisms_lift(seed in any::<u64>()) {
        let mut rng = suite_rng(seed);
        let b0 = random_dagger_ba(&mut rng, 6, 5);
        let b1 = isomorphic_variant(&mut rng, &b0, 6);
        let f = quotient_iso_canonical(&quotient_r(&b0), &quotient_r(&b1)).unwrap();
        let g = build_isomorphism(&b0, &b1, &f).unwrap();
        prop_assert!(verify_isomorphism(&b0, &b1, &g).is_ok());
        prop_assert!(verify_isomorphism(&b1, &b0, &g.inverse()).is_ok());
        prop_assert_eq!(parse_iso(&print_iso(&g)).unwrap(), g);
    }

    #[test]
    fn element_laws(seed in any::<u64>(), picks in prop::collection::vec(any::<u64>(), 2)) {
        let b = random_dagger_ba(&mut suite_rng(seed), 4, 5);
        let elem = |p: u64| -> Element {
            let mut x = if p & 1 == 1 { b.cluster_top(0) } else { b.bottom() };
            for (i, c) in b.clusters.iter().enumerate() {
                for sp in [Species::In, Species::Junk] {
                    let n = c.count(sp).finite().unwrap_or(4).min(4);
                    for k in 0..n {
                        let bit = (p >> (1 + (i * 8 + k as usize) % 63)) & 1 == 1;
                        x.set_atom(&b, AtomRef::new(i, sp, k), bit);
                    }
                }
            }
            x
        };
        let (x, y) = (elem(picks[0]), elem(picks[1]));
        prop_assert_eq!(x.complement(&b).complement(&b), x.clone());
        prop_assert_eq!(x.join(&y, &b).complement(&b), x.complement(&b).meet(&y.complement(&b), &b));
        prop_assert!(x.meet(&y, &b).le(&x, &b));
        prop_assert!(x.minus(&y, &b).meet(&y, &b).is_bottom());
    }

    #[test]
    fn covers_are_sound_and_small(seed in any::<u64>(), n in 0u32..8) {
        let s = construct_limit(&tree(seed));
        let c = cover(&s, n);
        prop_assert!(verify_cover(&s, &c).is_ok());
        prop_assert!(c.h() <= 4 * greedy_grid_cover(&s, n));
        prop_assert_eq!(parse_cover(&print_cover(&c)).unwrap(), c);
    }

    #[test]
    fn partition_lists_extend(seed in any::<u64>()) {
        let s = construct_limit(&small_tree(seed));
        let lists: Vec<Vec<_>> = (0..3).map(|d| clopen_partitions(&s, d).take(200).collect()).collect();
        for w in lists.windows(2) {
            prop_assert_eq!(&w[1][..w[0].len()], &w[0][..]);
        }
    }

    #[test]
    fn sup_norm_axioms(ys in prop::collection::vec((-16i64..16, -16i64..16), 1..6), q in -8i64..8, seed in any::<u64>()) {
        let host = construct_limit(&tree(seed));
        let n = ys.len() as i64 + 1;
        let f = PLFunction::through(ys.iter().enumerate().map(|(i, (y, _))| (rat(i as i64 + 1, n), rat(*y, 4))).collect()).unwrap();
        let g = PLFunction::through(ys.iter().enumerate().map(|(i, (_, y))| (rat(i as i64 + 1, n), rat(*y, 8))).collect()).unwrap();
        let (f, g) = (HostedFunction::new(f, host.clone()).unwrap(), HostedFunction::new(g, host).unwrap());
        let q = rat(q, 3);
        prop_assert!(f.add(&g).unwrap().sup_norm() <= f.sup_norm() + g.sup_norm());
        prop_assert_eq!(f.scale(&q).sup_norm(), q.abs() * f.sup_norm());
        prop_assert!(f.sup_norm() <= f.interval_sup());
        prop_assert_eq!(parse_plf(&print_plf(&f.f)).unwrap(), f.f.clone());
    }

    #[test]
    fn teeth_hit_their_values(seed in any::<u64>(), i in any::<usize>(), j in any::<usize>()) {
        let s = construct_limit(&tree(seed));
        let pts: Vec<Rational> = s.components().iter().map(|c| c.lo().clone()).collect();
        let (x, y) = (&pts[i % pts.len()], &pts[j % pts.len()]);
        prop_assume!(x != y);
        let t = tooth(&s, x, y).unwrap();
        prop_assert!(t.f.eval(x).is_zero());
        prop_assert_eq!(t.f.eval(y), rat(1, 1));
    }

    #[test]
    fn text_formats_roundtrip(seed in any::<u64>()) {
        let t = tree(seed);
        prop_assert_eq!(parse_tree(&print_tree(&t)).unwrap(), t.clone());
        let script = random_script(&mut suite_rng(seed), 20);
        prop_assert_eq!(parse_script(&print_script(&script)).unwrap(), script);
        let s = construct_limit(&t);
        prop_assert_eq!(parse_compactum(&print_compactum(&s)).unwrap(), s);
        let b: LabelledBA = random_dagger_ba(&mut suite_rng(seed), 6, 5);
        prop_assert_eq!(parse_ba(&print_ba(&b)).unwrap(), b);
    }
}
