mod common;

use bam_core::search::{dfs_solve, oracle_min_k, oracle_solve, SearchConfig};
use bam_core::twovoter::{min_k_two_voters, value_computation, value_computation_counted};
use bam_core::verify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn exhaustive_three_alternatives_match_oracle() {
    let orders = common::all_orders(3, 3);
    for p in common::all_profiles(3, 2, &orders) {
        let (k, w) = min_k_two_voters(&p).unwrap();
        assert_eq!(k, oracle_min_k(&p).unwrap().0, "{p:?}");
        assert!(verify(&p, &w).unwrap().holds());
    }
}

#[test]
fn random_four_alternatives_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let p = common::random_profile(&mut rng, 4, 2, 4);
        let (k, w) = min_k_two_voters(&p).unwrap();
        assert!(verify(&p, &w).unwrap().holds());
        assert!(oracle_solve(&p, k).unwrap().is_yes(), "{p:?}");
        if k > 0 {
            assert!(!oracle_solve(&p, k - 1).unwrap().is_yes(), "{p:?}");
        }
    }
}

#[test]
fn random_six_alternatives_match_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cfg = SearchConfig::default();
    for _ in 0..30 {
        let m = rng.gen_range(5..=6);
        let p = common::random_profile(&mut rng, m, 2, m);
        let (k, _) = min_k_two_voters(&p).unwrap();
        assert!(dfs_solve(&p, k, &cfg).unwrap().is_yes(), "{p:?}");
        if k > 0 {
            assert!(!dfs_solve(&p, k - 1, &cfg).unwrap().is_yes(), "{p:?}");
        }
    }
}

#[test]
fn witness_scores_are_tight() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..500 {
        let m = rng.gen_range(1..=8);
        let p = common::random_profile(&mut rng, m, 2, m);
        let (_, w) = min_k_two_voters(&p).unwrap();
        let rv = p.rank_view();
        for v in 0..2 {
            for &c in p.order(v) {
                let lambda = rv.len(v) - rv.rank(v, c).unwrap() - 1;
                assert_eq!(w.score_at(v, c), lambda, "{p:?}");
            }
        }
    }
}

#[test]
fn operation_count_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for m in [10, 100, 1000, 5000] {
        let p = common::random_profile(&mut rng, m, 2, m);
        let (scores, ops) = value_computation_counted(&p).unwrap();
        scores.check().unwrap();
        assert!(ops <= 4 * m as u64, "m={m} ops={ops}");
    }
}

#[test]
fn type_score_invariants_on_random_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..1000 {
        let m = rng.gen_range(0..=10);
        let p = common::random_profile(&mut rng, m, 2, m);
        value_computation(&p).unwrap().check().unwrap();
    }
}
