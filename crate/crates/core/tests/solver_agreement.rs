mod common;

use bam_core::bounds::{cardinality_windows, lower_bound_k, trivial_bam, upper_bound_k};
use bam_core::search::{dfs_solve, oracle_min_k, oracle_solve, SearchConfig};
use bam_core::special::{is_uniform_length, uniform_length_solve};
use bam_core::twosat::{encode_k2, solve_k_le_2};
use bam_core::{verify, AttrSet, AttributeModel, PreferenceProfile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_suite() -> Vec<PreferenceProfile> {
    let orders = common::all_orders(3, 3);
    (0..=3)
        .flat_map(|n| common::all_profiles(3, n, &orders))
        .collect()
}

fn assert_witness(p: &PreferenceProfile, w: Option<&AttributeModel>, k: usize) {
    let w = w.expect("YES carries a witness");
    assert_eq!(w.k(), k);
    assert!(verify(p, w).unwrap().holds(), "witness fails for {p:?}");
}

/// Tries every has and cares function through `verify`; only for tiny sizes.
fn naive_decide(p: &PreferenceProfile, k: usize) -> bool {
    let (m, n) = (p.num_alternatives(), p.num_voters());
    let sets = 1usize << k;
    (0..sets.pow(m as u32)).any(|hc| {
        let has: Vec<AttrSet> = (0..m)
            .map(|c| AttrSet::from_mask((hc / sets.pow(c as u32) % sets) as u64))
            .collect();
        (0..sets.pow(n as u32)).any(|cc| {
            let cares = (0..n)
                .map(|v| AttrSet::from_mask((cc / sets.pow(v as u32) % sets) as u64))
                .collect();
            verify(p, &AttributeModel::new(k, has.clone(), cares).unwrap())
                .unwrap()
                .holds()
        })
    })
}

#[test]
fn oracle_matches_naive_enumeration() {
    let orders = common::all_orders(3, 3);
    for n in 0..=2 {
        for p in common::all_profiles(3, n, &orders) {
            for k in 0..=2 {
                assert_eq!(
                    oracle_solve(&p, k).unwrap().is_yes(),
                    naive_decide(&p, k),
                    "{p:?} k={k}"
                );
            }
        }
    }
}

#[test]
fn dfs_matches_oracle_exhaustive() {
    let off = SearchConfig {
        symmetry_breaking: false,
        ..SearchConfig::default()
    };
    for p in small_suite() {
        for k in 0..=3 {
            let oracle = oracle_solve(&p, k).unwrap();
            let dfs = dfs_solve(&p, k, &SearchConfig::default()).unwrap();
            let plain = dfs_solve(&p, k, &off).unwrap();
            assert_eq!(dfs.decision, oracle.decision, "{p:?} k={k}");
            assert_eq!(plain.decision, oracle.decision, "{p:?} k={k}");
            for out in [&oracle, &dfs, &plain] {
                if out.is_yes() {
                    assert_witness(&p, out.witness.as_ref(), k);
                }
            }
        }
    }
}

#[test]
fn twosat_matches_oracle_exhaustive() {
    for p in small_suite() {
        for k in 0..=2 {
            let fast = solve_k_le_2(&p, k).unwrap();
            assert_eq!(
                fast.decision,
                oracle_solve(&p, k).unwrap().decision,
                "{p:?} k={k}"
            );
            if fast.is_yes() {
                assert_witness(&p, fast.witness.as_ref(), k);
            }
        }
    }
}

#[test]
fn twosat_matches_oracle_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let m = rand::Rng::gen_range(&mut rng, 2..=4);
        let n = rand::Rng::gen_range(&mut rng, 1..=8);
        let p = common::random_profile(&mut rng, m, n, 3);
        for k in 0..=2 {
            assert_eq!(
                solve_k_le_2(&p, k).unwrap().decision,
                oracle_solve(&p, k).unwrap().decision,
                "{p:?} k={k}"
            );
        }
    }
}

#[test]
fn encoding_sizes_follow_order_lengths() {
    for p in small_suite() {
        let threes = p.orders().iter().filter(|o| o.len() == 3).count();
        let twos = p.orders().iter().filter(|o| o.len() == 2).count();
        assert_eq!(encode_k2(&p).unwrap().clauses.len(), 6 * threes + 4 * twos);
    }
}

#[test]
fn uniform_length_matches_oracle() {
    for p in small_suite() {
        for k in 1..=2 {
            if is_uniform_length(&p, k) {
                let out = uniform_length_solve(&p, k).unwrap();
                assert_eq!(
                    out.decision,
                    oracle_solve(&p, k).unwrap().decision,
                    "{p:?} k={k}"
                );
                if out.is_yes() {
                    assert_witness(&p, out.witness.as_ref(), k);
                }
            }
        }
    }
}

#[test]
fn bounds_sandwich_oracle_minimum() {
    for p in small_suite() {
        let (min, _) = oracle_min_k(&p).unwrap();
        assert!(lower_bound_k(&p) <= min, "{p:?}");
        assert!(min <= upper_bound_k(&p), "{p:?}");
        assert!(verify(&p, &trivial_bam(&p)).unwrap().holds());
    }
}

#[test]
fn windows_feasible_exactly_from_lower_bound() {
    for p in small_suite() {
        let lb = lower_bound_k(&p);
        for k in 0..=5 {
            assert_eq!(cardinality_windows(&p, k).is_ok(), k >= lb, "{p:?} k={k}");
        }
    }
}

#[test]
fn appendix_three_cycle() {
    let p = PreferenceProfile::from_orders(&[&["c1", "c2"], &["c2", "c3"], &["c3", "c1"]]).unwrap();
    assert_eq!(lower_bound_k(&p), 2);
    assert_eq!(oracle_min_k(&p).unwrap().0, 3);
    let set = |x: usize| AttrSet::from_mask(1 << x);
    let by_hand = AttributeModel::new(
        3,
        vec![set(0), set(1), set(2)],
        vec![set(0), set(1), set(2)],
    )
    .unwrap();
    assert!(verify(&p, &by_hand).unwrap().holds());
}
