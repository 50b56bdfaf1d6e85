mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use zpm_core::oracle::{build_cover, cover_genus};
use zpm_core::{
    construct_action, enumerate_free_classes, enumerate_weak_classes, strong_invariant, strongly_equivalent,
    weak_invariant, weakly_equivalent, ActionData, Limits,
};

use common::*;

fn action_strategy() -> impl Strategy<Value = ActionData> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..=3, 0usize..=2, 0usize..=5, any::<u64>()).prop_filter_map(
        "no valid data drawn",
        |(p, m, g, r, seed)| random_action(&mut StdRng::seed_from_u64(seed), p, m, g, r),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn strong_implies_weak(a in action_strategy(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sp = random_symplectic(&mut rng, a.p, a.g);
        let b = random_twists_and_relabels(&mut rng, &a.recoordinatize(&sp).unwrap());
        prop_assert!(strongly_equivalent(&a, &b).unwrap());
        prop_assert!(weakly_equivalent(&a, &b).unwrap());
    }

    #[test]
    fn json_round_trip(a in action_strategy()) {
        let back = ActionData::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(strong_invariant(&back).unwrap(), strong_invariant(&a).unwrap());
    }

    #[test]
    fn genus_from_cover(a in action_strategy()) {
        let cover = build_cover(&a, &Limits::default()).unwrap();
        prop_assert_eq!(cover_genus(&cover).unwrap(), a.total_genus().unwrap());
    }

    #[test]
    fn rebuilt_action_is_weakly_equivalent(a in action_strategy()) {
        let w = weak_invariant(&a).unwrap();
        let b = construct_action(a.p, a.m, w.k, a.g, &w.canonical_multiset).unwrap();
        prop_assert!(weakly_equivalent(&a, &b).unwrap());
        prop_assert_eq!(b.total_genus().unwrap(), a.total_genus().unwrap());
    }
}

#[test]
fn free_counts_do_not_depend_on_p() {
    let limits = Limits::default();
    for m in 1..=4 {
        for g in 0..=4 {
            let free = enumerate_free_classes(m, g);
            for p in [2u32, 3, 5, 7] {
                let weak = enumerate_weak_classes(p, m, g, 0, &limits).unwrap();
                assert_eq!(weak.len(), free.len(), "p={p} m={m} g={g}");
                let ks: Vec<usize> = weak.iter().map(|w| w.k).collect();
                assert_eq!(ks, free, "p={p} m={m} g={g}");
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let limits = Limits::default();
    let a = enumerate_weak_classes(3, 2, 1, 4, &limits).unwrap();
    let b = enumerate_weak_classes(3, 2, 1, 4, &limits).unwrap();
    assert_eq!(a, b);
    let mut sorted = a.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), a.len());
}
