use std::sync::Arc;

use ordvar::finposet::{
    canonical_presentation, coinserter, monotone_maps, poset_reflection, same_labeled_order,
    verify_coinserter_universal, PosetFile,
};
use ordvar::{BitRelation, FinPoset, FinPreorder, Guards, MonotoneMap, ParallelPair};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// A random preorder on up to `max` elements.
fn arb_preorder(max: usize) -> impl Strategy<Value = FinPreorder> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..2 * n)
            .prop_map(move |pairs| FinPreorder::from_pairs(labels(n), &pairs).unwrap())
    })
}

/// A random poset: forward edges only, so no cycles.
fn arb_poset(max: usize) -> impl Strategy<Value = FinPoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |pairs| {
            let forward: Vec<_> = pairs
                .into_iter()
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            FinPoset::from_pairs(labels(n), &forward).unwrap()
        })
    })
}

fn arb_pair() -> impl Strategy<Value = ParallelPair> {
    (arb_poset(3), arb_poset(3), any::<u64>(), any::<u64>()).prop_map(|(a, b, i, j)| {
        let (a, b) = (Arc::new(a), Arc::new(b));
        let maps = monotone_maps(&a, &b, &Guards::default()).unwrap();
        let pick = |k: u64| {
            MonotoneMap::new(a.clone(), b.clone(), maps[k as usize % maps.len()].clone()).unwrap()
        };
        ParallelPair::new(pick(i), pick(j)).unwrap()
    })
}

proptest! {
    #[test]
    fn reflection_is_idempotent(p in arb_preorder(7)) {
        let once = poset_reflection(&p);
        let twice = poset_reflection(&once.poset.as_preorder());
        prop_assert_eq!(twice.class_of, (0..once.poset.len()).collect::<Vec<_>>());
        prop_assert!(same_labeled_order(&twice.poset, &once.poset));
    }

    #[test]
    fn reflection_identifies_exactly_the_mutual_pairs(p in arb_preorder(7)) {
        let r = poset_reflection(&p);
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(r.class_of[a] == r.class_of[b], p.leq(a, b) && p.leq(b, a));
                prop_assert_eq!(r.poset.leq(r.class_of[a], r.class_of[b]), p.leq(a, b));
            }
        }
    }

    #[test]
    fn canonical_presentation_round_trips(p in arb_poset(7)) {
        let cp = canonical_presentation(&p);
        let co = coinserter(&cp.pair);
        prop_assert!(same_labeled_order(&co.poset, &p));
        prop_assert_eq!(co.quotient.table().to_vec(), (0..p.len()).collect::<Vec<_>>());
        prop_assert!(cp.pair.reflexivity_witness().is_some());
    }

    #[test]
    fn coinserter_maps_are_surjective_and_insert(pp in arb_pair()) {
        let co = coinserter(&pp);
        prop_assert!(co.quotient.is_surjective());
        let c = co.quotient.table();
        for (&x, &y) in pp.f0().table().iter().zip(pp.f1().table()) {
            prop_assert!(co.poset.leq(c[x], c[y]));
        }
    }

    #[test]
    fn coinserter_is_universal_against_small_targets(pp in arb_pair()) {
        let targets = ordvar::finposet::poset_bank(2);
        let r = verify_coinserter_universal(&pp, &targets);
        prop_assert!(r.ok(), "{:?}", r.violations);
    }

    #[test]
    fn poset_files_round_trip(p in arb_poset(7)) {
        let back = PosetFile::from_poset(&p).to_poset().unwrap();
        prop_assert!(same_labeled_order(&back, &p));
    }
}

#[test]
fn closed_relation_stays_closed_under_restriction() {
    let mut r = BitRelation::from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
    r.close();
    let sub = r.restrict(&[0, 2, 3]);
    assert!(sub.get(0, 1) && sub.get(1, 2) && sub.get(0, 2));
    assert!(!sub.get(2, 0));
}
