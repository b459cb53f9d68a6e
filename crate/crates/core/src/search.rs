//! Complete solvers for the general problem.
//!
//! [`oracle_solve`] is the plain brute force over all has-functions and is
//! kept deliberately simple so tests can trust it. [`dfs_solve`] decides the
//! same question by assigning has-sets one alternative at a time and pruning
//! with cardinality windows, per-voter feasibility of the partial
//! assignment, and attribute-column symmetry breaking. [`solve_min_k`]
//! finds the smallest `k`.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use crate::attrs::AttrSet;
use crate::bounds::{cardinality_windows, lower_bound_k, trivial_bam};
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::outcome::{SearchStats, SolveOutcome};
use crate::partial::feasible_cares_mask;
use crate::profile::PreferenceProfile;
use crate::reduce::{explains_mask, full_mask, Budget, Compact};
use crate::special::{is_uniform_length, uniform_length_solve};
use crate::twosat::solve_k_le_2;
use crate::twovoter::min_k_two_voters;

/// Index of the satisfying code and its has masks.
type Found = (u64, Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_limit: Option<u64>,
    pub time_limit_ms: Option<u64>,
    pub symmetry_breaking: bool,
    /// Run the unpruned brute force instead of the pruned search.
    pub oracle_mode: bool,
    /// Worker threads for the brute force; the pruned search is sequential.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            node_limit: None,
            time_limit_ms: None,
            symmetry_breaking: true,
            oracle_mode: false,
            threads: 1,
        }
    }
}

impl SearchConfig {
    fn budget(&self) -> Budget {
        Budget::new(self.node_limit, self.time_limit_ms)
    }
}

/// Largest `k` the bitmask solvers handle.
pub const MAX_MASK_K: usize = 63;

fn trivial_outcome(profile: &PreferenceProfile, k: usize, stats: SearchStats) -> SolveOutcome {
    SolveOutcome::yes(trivial_bam(profile).padded(k), stats)
}

/// Brute force: every has-function over the ranked alternatives, and per
/// voter every cares set.
pub fn oracle_solve(profile: &PreferenceProfile, k: usize) -> Result<SolveOutcome> {
    oracle_solve_with(profile, k, &SearchConfig::default())
}

pub fn oracle_solve_with(
    profile: &PreferenceProfile,
    k: usize,
    cfg: &SearchConfig,
) -> Result<SolveOutcome> {
    let mut budget = cfg.budget();
    let m = profile.num_alternatives();
    if k >= m * m.saturating_sub(1) {
        return Ok(trivial_outcome(profile, k, budget.stats()));
    }
    let compact = Compact::new(profile);
    let mc = compact.m();
    if k * mc > MAX_MASK_K {
        return Err(BamError::Precondition(format!(
            "brute force over {mc} alternatives with k = {k} exceeds {MAX_MASK_K} bits"
        )));
    }
    let total = 1u64 << (k * mc);
    let threads = cfg.threads.max(1).min(total as usize);
    let found = if threads == 1 {
        oracle_range(&compact, k, 0, 1, total, &mut budget)?
    } else {
        let stop = AtomicBool::new(false);
        let result: Mutex<Option<Result<Found>>> = Mutex::new(None);
        let nodes = Mutex::new(0u64);
        std::thread::scope(|s| {
            for t in 0..threads {
                let (compact, stop, result, nodes) = (&compact, &stop, &result, &nodes);
                let mut local = cfg.budget();
                s.spawn(move || {
                    let out = oracle_worker(
                        compact,
                        k,
                        t as u64,
                        threads as u64,
                        total,
                        &mut local,
                        stop,
                    );
                    *nodes.lock().unwrap() += local.nodes();
                    match out {
                        Ok(None) => {}
                        Ok(Some(hit)) => {
                            stop.store(true, Ordering::Relaxed);
                            let mut slot = result.lock().unwrap();
                            // keep the lowest code for a stable witness
                            if !matches!(&*slot, Some(Ok((c, _))) if *c < hit.0) {
                                *slot = Some(Ok(hit));
                            }
                        }
                        Err(e) => {
                            stop.store(true, Ordering::Relaxed);
                            result.lock().unwrap().get_or_insert(Err(e));
                        }
                    }
                });
            }
        });
        budget.add_nodes(nodes.into_inner().unwrap());
        match result.into_inner().unwrap() {
            Some(Err(e)) => return Err(e),
            Some(Ok(hit)) => Some(hit),
            None => None,
        }
    };
    Ok(match found {
        Some((code, cares)) => {
            let word = full_mask(k);
            let has = (0..mc).map(|c| AttrSet::from_mask((code >> (c * k)) & word));
            let cares = cares.into_iter().map(AttrSet::from_mask);
            SolveOutcome::yes(compact.lift(profile, k, has, cares), budget.stats())
        }
        None => SolveOutcome::no(budget.stats()),
    })
}

fn oracle_range(
    compact: &Compact,
    k: usize,
    start: u64,
    step: u64,
    total: u64,
    budget: &mut Budget,
) -> Result<Option<Found>> {
    oracle_worker(
        compact,
        k,
        start,
        step,
        total,
        budget,
        &AtomicBool::new(false),
    )
}

fn oracle_worker(
    compact: &Compact,
    k: usize,
    start: u64,
    step: u64,
    total: u64,
    budget: &mut Budget,
    stop: &AtomicBool,
) -> Result<Option<Found>> {
    let word = full_mask(k);
    let cares_total = 1u64 << k;
    let mut order_has = Vec::new();
    let mut cares = Vec::with_capacity(compact.orders.len());
    let mut code = start;
    while code < total {
        budget.tick()?;
        if budget.nodes().is_multiple_of(4096) && stop.load(Ordering::Relaxed) {
            return Ok(None);
        }
        cares.clear();
        let all = compact.orders.iter().all(|order| {
            order_has.clear();
            order_has.extend(order.iter().map(|&c| (code >> (c * k)) & word));
            match (0..cares_total).find(|&cm| explains_mask(&order_has, cm)) {
                Some(cm) => {
                    cares.push(cm);
                    true
                }
                None => false,
            }
        });
        if all {
            return Ok(Some((code, cares.clone())));
        }
        code += step;
    }
    Ok(None)
}

/// Pruned complete search; same decision as [`oracle_solve`].
pub fn dfs_solve(
    profile: &PreferenceProfile,
    k: usize,
    cfg: &SearchConfig,
) -> Result<SolveOutcome> {
    if cfg.oracle_mode {
        return oracle_solve_with(profile, k, cfg);
    }
    let budget = cfg.budget();
    let compact = Compact::new(profile);
    let mc = compact.m();
    if k >= mc * mc.saturating_sub(1) {
        let model = compact_trivial(profile, &compact, k);
        return Ok(SolveOutcome::yes(model, budget.stats()));
    }
    if k > MAX_MASK_K {
        return Err(BamError::Precondition(format!(
            "search supports at most {MAX_MASK_K} attributes, got {k}"
        )));
    }
    let windows = match cardinality_windows(profile, k) {
        Ok(w) => w,
        Err(why) => {
            let reason = match why {
                crate::bounds::Infeasibility::Voter { .. } => {
                    "order length exceeds k+1".to_string()
                }
                other => other.to_string(),
            };
            return Ok(SolveOutcome::no_because(reason, budget.stats()));
        }
    };
    let mut dfs = Dfs::new(
        &compact,
        k,
        &windows.has_window,
        cfg.symmetry_breaking,
        budget,
    );
    let found = dfs.run()?;
    let stats = dfs.budget.stats();
    Ok(match found {
        Some(has) => {
            let cares: Vec<u64> = compact
                .orders
                .iter()
                .map(|o| {
                    let oh: Vec<u64> = o.iter().map(|&c| has[c]).collect();
                    feasible_cares_mask(&oh).expect("complete assignment passed the voter check")
                })
                .collect();
            let model = compact.lift(
                profile,
                k,
                has.into_iter().map(AttrSet::from_mask),
                cares.into_iter().map(AttrSet::from_mask),
            );
            SolveOutcome::yes(model, stats)
        }
        None => SolveOutcome::no(stats),
    })
}

/// Private-attribute model over the constraining alternatives only, padded
/// to `k`.
fn compact_trivial(profile: &PreferenceProfile, compact: &Compact, k: usize) -> AttributeModel {
    let mc = compact.m();
    let per = mc.saturating_sub(1);
    let has = (0..mc).map(|c| AttrSet::range(c * per, per));
    let cares = compact.orders.iter().map(|order| {
        let len = order.len();
        let mut set = AttrSet::new();
        for (rank, &c) in order.iter().enumerate() {
            set.union_with(&AttrSet::range(c * per, len - rank - 1));
        }
        set
    });
    compact.lift(profile, k, has, cares)
}

struct Dfs<'a> {
    compact: &'a Compact,
    k: usize,
    /// compact alternatives in assignment order
    sequence: Vec<usize>,
    /// candidate masks per compact alternative, in value order
    candidates: Vec<Vec<u64>>,
    /// voters to re-check after assigning each compact alternative
    watchers: Vec<Vec<usize>>,
    has: Vec<u64>,
    assigned: Vec<bool>,
    symmetry: bool,
    budget: Budget,
    scratch: Vec<u64>,
}

impl<'a> Dfs<'a> {
    fn new(
        compact: &'a Compact,
        k: usize,
        window: &[(usize, usize)],
        symmetry: bool,
        budget: Budget,
    ) -> Self {
        let mc = compact.m();
        let mut watchers = vec![Vec::new(); mc];
        for (v, order) in compact.orders.iter().enumerate() {
            for &c in order {
                watchers[c].push(v);
            }
        }
        let mut sequence: Vec<usize> = (0..mc).collect();
        sequence.sort_by_key(|&c| (std::cmp::Reverse(watchers[c].len()), c));

        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); k + 1];
        for mask in (0..=full_mask(k)).rev() {
            by_size[mask.count_ones() as usize].push(mask);
        }
        let candidates = (0..mc)
            .map(|c| {
                let (lo, hi) = window[compact.alts[c]];
                (lo..=hi.min(k))
                    .rev()
                    .flat_map(|s| by_size[s].iter().copied())
                    .collect()
            })
            .collect();
        Self {
            compact,
            k,
            sequence,
            candidates,
            watchers,
            has: vec![0; mc],
            assigned: vec![false; mc],
            symmetry,
            budget,
            scratch: Vec::new(),
        }
    }

    fn run(&mut self) -> Result<Option<Vec<u64>>> {
        let tied = full_mask(self.k.saturating_sub(1));
        if self.descend(0, tied)? {
            Ok(Some(self.has.clone()))
        } else {
            Ok(None)
        }
    }

    fn voter_ok(&mut self, v: usize) -> bool {
        self.scratch.clear();
        for &c in &self.compact.orders[v] {
            if self.assigned[c] {
                self.scratch.push(self.has[c]);
            }
        }
        feasible_cares_mask(&self.scratch).is_some()
    }

    fn descend(&mut self, depth: usize, tied: u64) -> Result<bool> {
        if depth == self.sequence.len() {
            return Ok(true);
        }
        let c = self.sequence[depth];
        let lanes = full_mask(self.k.saturating_sub(1));
        for i in 0..self.candidates[c].len() {
            let h = self.candidates[c][i];
            self.budget.tick()?;
            let next = if self.symmetry {
                // attribute j and j+1 still equal on all earlier alternatives
                // must not switch from 0 to 1 here
                if tied & !h & (h >> 1) & lanes != 0 {
                    continue;
                }
                tied & !(h ^ (h >> 1)) & lanes
            } else {
                tied
            };
            self.has[c] = h;
            self.assigned[c] = true;
            let mut ok = true;
            for w in 0..self.watchers[c].len() {
                let v = self.watchers[c][w];
                if !self.voter_ok(v) {
                    ok = false;
                    break;
                }
            }
            if ok && self.descend(depth + 1, next)? {
                return Ok(true);
            }
            self.assigned[c] = false;
        }
        self.has[c] = 0;
        Ok(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    TwoVoter,
    UniformLength,
    TwoSat,
    Search,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::TwoVoter => "twovoter",
            Engine::UniformLength => "uniform",
            Engine::TwoSat => "twosat",
            Engine::Search => "search",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinK {
    pub k: usize,
    pub witness: AttributeModel,
    pub stats: SearchStats,
    pub engine: Engine,
}

/// Smallest `k` admitting a model, with a witness.
pub fn solve_min_k(profile: &PreferenceProfile, cfg: &SearchConfig) -> Result<MinK> {
    let budget = cfg.budget();
    if profile.num_voters() == 2 {
        let (k, witness) = min_k_two_voters(profile)?;
        return Ok(MinK {
            k,
            witness,
            stats: budget.stats(),
            engine: Engine::TwoVoter,
        });
    }
    let lengths: Vec<usize> = profile
        .orders()
        .iter()
        .map(Vec::len)
        .filter(|&l| l >= 2)
        .collect();
    if let Some(&first) = lengths.first() {
        if lengths.iter().all(|&l| l == first) {
            let out = uniform_length_solve(profile, first - 1)?;
            if let Some(witness) = out.witness {
                return Ok(MinK {
                    k: first - 1,
                    witness,
                    stats: budget.stats(),
                    engine: Engine::UniformLength,
                });
            }
        }
    }
    let mut nodes = 0u64;
    let mut k = lower_bound_k(profile);
    loop {
        let (out, engine) = if k <= 2 {
            (solve_k_le_2(profile, k)?, Engine::TwoSat)
        } else {
            let mut step = cfg.clone();
            step.node_limit = cfg.node_limit.map(|n| n.saturating_sub(nodes).max(1));
            step.time_limit_ms = cfg
                .time_limit_ms
                .map(|t| t.saturating_sub(budget.stats().elapsed_ms).max(1));
            match dfs_solve(profile, k, &step) {
                Ok(out) => (out, Engine::Search),
                Err(BamError::ResourceLimit { nodes: n, .. }) => {
                    return Err(BamError::ResourceLimitAt {
                        k,
                        nodes: nodes + n,
                        elapsed_ms: budget.stats().elapsed_ms,
                    })
                }
                Err(e) => return Err(e),
            }
        };
        nodes += out.stats.nodes;
        if let Some(witness) = out.witness {
            return Ok(MinK {
                k,
                witness,
                stats: SearchStats {
                    nodes,
                    elapsed_ms: budget.stats().elapsed_ms,
                },
                engine,
            });
        }
        k += 1;
    }
}

/// Decides a fixed `k` with the cheapest applicable engine: two voters,
/// `k <= 2`, every constraining order of length `k + 1`, else the search.
pub fn solve_auto(
    profile: &PreferenceProfile,
    k: usize,
    cfg: &SearchConfig,
) -> Result<(SolveOutcome, Engine)> {
    if profile.num_voters() == 2 {
        let (min, witness) = min_k_two_voters(profile)?;
        let out = if k >= min {
            SolveOutcome::yes(witness.padded(k), SearchStats::default())
        } else {
            SolveOutcome::no_because(
                format!("two-voter minimum is {min}"),
                SearchStats::default(),
            )
        };
        return Ok((out, Engine::TwoVoter));
    }
    if k <= 2 {
        return Ok((solve_k_le_2(profile, k)?, Engine::TwoSat));
    }
    if is_uniform_length(profile, k) {
        return Ok((uniform_length_solve(profile, k)?, Engine::UniformLength));
    }
    Ok((dfs_solve(profile, k, cfg)?, Engine::Search))
}

/// Smallest `k` for which the brute force says YES, counting up from 0.
pub fn oracle_min_k(profile: &PreferenceProfile) -> Result<(usize, AttributeModel)> {
    let mut k = 0;
    loop {
        if let Some(w) = oracle_solve(profile, k)?.witness {
            return Ok((k, w));
        }
        k += 1;
    }
}
