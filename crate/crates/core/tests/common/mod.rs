//! Instance generators and source-problem oracles shared by the test suites.
#![allow(dead_code)]

use bam_core::reductions::{CnfInstance, GraphInstance, Rxc3Instance};
use bam_core::PreferenceProfile;
use rand::seq::SliceRandom;
use rand::Rng;

/// Every sequence of distinct alternatives from `0..m` with length at most
/// `max_len`, shortest first.
pub fn all_orders(m: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len.min(m) {
        let mut next = Vec::new();
        for prefix in &frontier {
            for a in 0..m {
                if !prefix.contains(&a) {
                    let mut o: Vec<usize> = prefix.clone();
                    o.push(a);
                    next.push(o);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Alternatives `c1..cm`, voters `v1..vn`.
pub fn profile(m: usize, orders: &[Vec<usize>]) -> PreferenceProfile {
    let alts: Vec<String> = (1..=m).map(|i| format!("c{i}")).collect();
    let voters: Vec<String> = (1..=orders.len()).map(|i| format!("v{i}")).collect();
    PreferenceProfile::from_indices(alts, voters, orders.to_vec()).unwrap()
}

/// All profiles with `n` voters whose orders come from `orders`.
pub fn all_profiles(m: usize, n: usize, orders: &[Vec<usize>]) -> Vec<PreferenceProfile> {
    let mut out = Vec::new();
    let total = orders.len().pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let chosen: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let o = orders[c % orders.len()].clone();
                c /= orders.len();
                o
            })
            .collect();
        out.push(profile(m, &chosen));
    }
    out
}

pub fn random_order<R: Rng>(rng: &mut R, m: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len.min(m));
    let mut alts: Vec<usize> = (0..m).collect();
    alts.shuffle(rng);
    alts.truncate(len);
    alts
}

pub fn random_profile<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    max_len: usize,
) -> PreferenceProfile {
    let orders: Vec<Vec<usize>> = (0..n).map(|_| random_order(rng, m, max_len)).collect();
    profile(m, &orders)
}

pub fn sat_by_truth_table(f: &CnfInstance) -> bool {
    (0..1u32 << f.num_vars()).any(|bits| {
        let nu: Vec<bool> = (0..f.num_vars()).map(|i| bits >> i & 1 == 1).collect();
        f.satisfied_by(&nu)
    })
}

pub fn random_cnf<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize) -> CnfInstance {
    let vars = rng.gen_range(1..=max_vars);
    let clauses = rng.gen_range(1..=max_clauses);
    let lit = |rng: &mut R| {
        let v = rng.gen_range(1..=vars as i32);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    };
    let clauses = (0..clauses)
        .map(|_| [lit(rng), lit(rng), lit(rng)])
        .collect();
    CnfInstance::new(vars, clauses).unwrap()
}

pub fn three_colorable(g: &GraphInstance) -> bool {
    let n = g.vertices().len();
    (0..3usize.pow(n as u32)).any(|code| {
        let colors: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
        g.is_proper_coloring(&colors)
    })
}

pub fn has_exact_cover(r: &Rxc3Instance) -> bool {
    let s = r.subsets().len();
    (0..1u32 << s).any(|bits| {
        let chosen: Vec<usize> = (0..s).filter(|&j| bits >> j & 1 == 1).collect();
        r.is_exact_cover(&chosen)
    })
}
