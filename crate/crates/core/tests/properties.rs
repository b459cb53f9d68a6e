mod common;

use bam_core::bounds::{lower_bound_k, trivial_bam, upper_bound_k};
use bam_core::format::{parse_model, parse_profile, write_model, write_profile};
use bam_core::search::{dfs_solve, solve_min_k, SearchConfig};
use bam_core::twosat::{twosat_decide, Literal, TwoSatInstance};
use bam_core::twovoter::value_computation;
use bam_core::{verify, AttrSet, AttributeModel, PreferenceProfile};
use proptest::collection::vec;
use proptest::prelude::*;

fn profiles(max_m: usize, min_n: usize, max_n: usize) -> impl Strategy<Value = PreferenceProfile> {
    (1..=max_m, min_n..=max_n).prop_flat_map(|(m, n)| {
        let order =
            (Just((0..m).collect::<Vec<_>>()).prop_shuffle(), 0..=m).prop_map(|(mut o, len)| {
                o.truncate(len);
                o
            });
        vec(order, n).prop_map(move |orders| common::profile(m, &orders))
    })
}

fn attr_set(k: usize) -> impl Strategy<Value = AttrSet> {
    vec(any::<bool>(), k).prop_map(|bits| {
        bits.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    })
}

fn models(m: usize, n: usize, k: usize) -> impl Strategy<Value = AttributeModel> {
    (vec(attr_set(k), m), vec(attr_set(k), n))
        .prop_map(move |(has, cares)| AttributeModel::new(k, has, cares).unwrap())
}

fn profile_and_model(k: usize) -> impl Strategy<Value = (PreferenceProfile, AttributeModel)> {
    profiles(5, 1, 4).prop_flat_map(move |p| {
        let shape = (p.num_alternatives(), p.num_voters());
        (Just(p), models(shape.0, shape.1, k))
    })
}

fn drop_voter(model: &AttributeModel, v: usize) -> AttributeModel {
    let mut cares = model.cares_sets().to_vec();
    cares.remove(v);
    AttributeModel::new(model.k(), model.has_sets().to_vec(), cares).unwrap()
}

proptest! {
    #[test]
    fn trivial_model_explains_every_profile(p in profiles(6, 0, 6)) {
        let t = trivial_bam(&p);
        prop_assert!(verify(&p, &t).unwrap().holds());
        let m = p.num_alternatives();
        prop_assert_eq!(t.k(), m * (m - 1));
        prop_assert!(upper_bound_k(&p) <= t.k());
        prop_assert!(lower_bound_k(&p) <= upper_bound_k(&p));
    }

    #[test]
    fn removing_a_voter_keeps_a_model_valid(p in profiles(5, 1, 4), pick in any::<prop::sample::Index>()) {
        let w = solve_min_k(&p, &SearchConfig::default()).unwrap().witness;
        let v = pick.index(p.num_voters());
        prop_assert!(verify(&p.without_voter(v), &drop_voter(&w, v)).unwrap().holds());
    }

    #[test]
    fn verdict_is_monotone_under_voter_removal((p, model) in profile_and_model(3), pick in any::<prop::sample::Index>()) {
        let v = pick.index(p.num_voters());
        if verify(&p, &model).unwrap().holds() {
            prop_assert!(verify(&p.without_voter(v), &drop_voter(&model, v)).unwrap().holds());
        }
    }

    #[test]
    fn scores_are_bounded((p, model) in profile_and_model(4)) {
        for v in 0..p.num_voters() {
            for c in 0..p.num_alternatives() {
                let s = model.score_at(v, c);
                prop_assert!(s <= model.has(c).len().min(model.cares(v).len()));
                prop_assert!(s <= model.k());
            }
        }
    }

    #[test]
    fn violation_report_points_at_a_real_violation((p, model) in profile_and_model(3)) {
        if let Some(bad) = verify(&p, &model).unwrap().violation() {
            prop_assert!(model.score_at(bad.voter, bad.better) <= model.score_at(bad.voter, bad.worse));
            let order = p.order(bad.voter);
            let i = order.iter().position(|&a| a == bad.better).unwrap();
            prop_assert_eq!(order[i + 1], bad.worse);
        }
    }

    #[test]
    fn type_scores_satisfy_their_invariants(p in profiles(12, 2, 2)) {
        let s = value_computation(&p).unwrap();
        prop_assert_eq!(s.check(), Ok(()));
    }

    #[test]
    fn search_is_monotone_in_k(p in profiles(4, 1, 3), k in 0usize..4) {
        let cfg = SearchConfig::default();
        if dfs_solve(&p, k, &cfg).unwrap().is_yes() {
            prop_assert!(dfs_solve(&p, k + 1, &cfg).unwrap().is_yes());
        }
    }

    #[test]
    fn profile_text_round_trips(p in profiles(6, 0, 6)) {
        let text = write_profile(&p);
        let back = parse_profile(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(write_profile(&back), text);
    }

    #[test]
    fn model_text_round_trips((p, model) in profile_and_model(5)) {
        let text = write_model(&p, &model);
        let back = parse_model(&text, &p).unwrap().into_model();
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(write_model(&p, &back), text);
    }

    #[test]
    fn twosat_matches_truth_table(
        vars in 1usize..7,
        raw in vec((0usize..7, any::<bool>(), 0usize..7, any::<bool>()), 0..14),
    ) {
        let lit = |v: usize, pos: bool| if pos { Literal::pos(v % vars) } else { Literal::neg(v % vars) };
        let mut inst = TwoSatInstance::new(vars);
        for &(a, pa, b, pb) in &raw {
            inst.add(lit(a, pa), lit(b, pb));
        }
        let holds = |nu: &[bool]| {
            raw.iter().all(|&(a, pa, b, pb)| nu[a % vars] == pa || nu[b % vars] == pb)
        };
        let brute = (0..1u32 << vars).any(|bits| {
            let nu: Vec<bool> = (0..vars).map(|i| bits >> i & 1 == 1).collect();
            holds(&nu)
        });
        match twosat_decide(&inst) {
            Some(nu) => prop_assert!(holds(&nu)),
            None => prop_assert!(!brute),
        }
    }
}
