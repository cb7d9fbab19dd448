mod common;

use bruhatspec::bruhat::{bruhat_leq, interval};
use bruhatspec::coxeter::{CoxeterGroup, Word};
use bruhatspec::poset::{disjoint_union, is_isomorphic, product, LabeledPoset};
use common::Model;
use proptest::prelude::*;

const GROUPS: [&str; 3] = ["A3", "D4", "affineA2"];

fn group_and_word(max_len: usize) -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    (0..GROUPS.len()).prop_flat_map(move |g| {
        let name = GROUPS[g];
        let rank = Model::from_name(name).rank();
        (Just(name), prop::collection::vec(1..=rank, 0..=max_len))
    })
}

/// Random posets on up to four elements: relations only go from lower to
/// higher index, so the closure is always antisymmetric.
fn small_poset() -> impl Strategy<Value = LabeledPoset> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let relations: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i < j && bits[i * n + j])
                .collect();
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            LabeledPoset::build(labels, &relations).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_word_is_reduced_and_stable((name, word) in group_and_word(8)) {
        let g = CoxeterGroup::from_name(name).unwrap();
        let w = g.element(&Word(word.clone())).unwrap();
        let canon = w.canonical_word().clone();
        prop_assert!(g.is_reduced(&canon).unwrap());
        let again = g.element(&canon).unwrap();
        prop_assert_eq!(&again, &w);
        prop_assert_eq!(again.canonical_word(), &canon);
        let model = Model::from_name(name);
        prop_assert_eq!(model.product(&canon.0), model.product(&word));
        prop_assert_eq!(w.length(), model.length(&word));
    }

    #[test]
    fn bruhat_order_matches_subwords((name, u) in group_and_word(5), v_seed in prop::collection::vec(1usize..=4, 0..=6)) {
        let model = Model::from_name(name);
        let g = CoxeterGroup::from_name(name).unwrap();
        let v: Vec<usize> = v_seed.into_iter().map(|s| (s - 1) % model.rank() + 1).collect();
        let ev = g.element(&Word(v)).unwrap();
        let eu = g.element(&Word(u)).unwrap();
        let reduced_v = ev.canonical_word().0.clone();
        prop_assert_eq!(bruhat_leq(&eu, &ev).unwrap(), model.leq(&eu.canonical_word().0, &reduced_v));
    }

    #[test]
    fn interval_size_matches_oracle((name, word) in group_and_word(6)) {
        let g = CoxeterGroup::from_name(name).unwrap();
        let reduced = g.element(&Word(word)).unwrap().canonical_word().clone();
        let iv = interval(&g, &reduced).unwrap();
        let (size, profile) = Model::from_name(name).interval_profile(&reduced.0);
        prop_assert_eq!(iv.len(), size);
        prop_assert_eq!(iv.rank_profile(), profile);
    }

    #[test]
    fn closure_and_reduction_round_trip(p in small_poset()) {
        let rebuilt = LabeledPoset::build(p.labels().to_vec(), p.hasse()).unwrap();
        prop_assert_eq!(rebuilt.hasse(), p.hasse());
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(rebuilt.leq(x, y), p.leq(x, y));
            }
        }
        let json = LabeledPoset::from_json(&p.to_json()).unwrap();
        prop_assert!(is_isomorphic(&json, &p));
    }

    #[test]
    fn product_and_union_are_associative(p in small_poset(), q in small_poset(), r in small_poset()) {
        prop_assert!(is_isomorphic(&product(&product(&p, &q), &r), &product(&p, &product(&q, &r))));
        prop_assert!(is_isomorphic(
            &disjoint_union(&disjoint_union(&p, &q), &r),
            &disjoint_union(&p, &disjoint_union(&q, &r))
        ));
    }
}
