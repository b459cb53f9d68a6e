//! BAM with a fixed cares-function or a fixed has-function.
//!
//! Both directions group attributes into types: attributes with the same
//! signature (the voters caring about them, or the alternatives having them)
//! are interchangeable, so a solution only needs a count per type.

mod blocks;
pub mod counting;

use std::collections::BTreeMap;

pub use counting::{counting_feasibility, CountingSystem, LinearConstraint};

use blocks::{BlockGap, BlockSystem};

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::outcome::SolveOutcome;
use crate::profile::PreferenceProfile;
use crate::reduce::{explains_mask, full_mask, Budget, Compact};

/// Per-voter subset enumeration is used up to this many attributes.
pub const ENUMERATION_THRESHOLD: usize = 20;

/// Cares-given instances use explicit per-alternative domains while no
/// alternative has more candidate count vectors than this.
pub const BLOCK_DOMAIN_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureKind {
    /// Signature = voters caring about the attribute.
    Voters,
    /// Signature = alternatives having the attribute.
    Alternatives,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeEntry {
    /// Sorted voter or alternative indices.
    pub signature: Vec<usize>,
    /// Attributes of this type, ascending.
    pub attributes: Vec<usize>,
}

impl TypeEntry {
    pub fn multiplicity(&self) -> usize {
        self.attributes.len()
    }

    pub fn contains(&self, member: usize) -> bool {
        self.signature.binary_search(&member).is_ok()
    }
}

/// Attributes `0..k` grouped by signature. The empty signature is kept as a
/// type of its own so multiplicities always sum to `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeTypeTable {
    pub kind: SignatureKind,
    pub k: usize,
    pub entries: Vec<TypeEntry>,
}

impl AttributeTypeTable {
    /// Types over the given voters, from their cares sets.
    pub fn from_cares(voters: &[usize], cares: &[AttrSet], k: usize) -> Self {
        Self::build(SignatureKind::Voters, k, voters, cares)
    }

    /// Types over the given alternatives, from their has sets.
    pub fn from_has(alts: &[usize], has: &[AttrSet], k: usize) -> Self {
        Self::build(SignatureKind::Alternatives, k, alts, has)
    }

    fn build(kind: SignatureKind, k: usize, members: &[usize], sets: &[AttrSet]) -> Self {
        let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for attr in 0..k {
            let mut signature: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&x| sets[x].contains(attr))
                .collect();
            signature.sort_unstable();
            signature.dedup();
            groups.entry(signature).or_default().push(attr);
        }
        let mut entries: Vec<TypeEntry> = groups
            .into_iter()
            .map(|(signature, attributes)| TypeEntry {
                signature,
                attributes,
            })
            .collect();
        entries.sort_by_key(|e| e.attributes[0]);
        Self { kind, k, entries }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(TypeEntry::multiplicity).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingleVoterMode {
    Enumerate,
    Typed,
}

fn check_sets(what: &str, sets: &[AttrSet], expected: usize, k: usize) -> Result<()> {
    if sets.len() != expected {
        return Err(BamError::InvalidInput(format!(
            "{what} function covers {} entries, expected {expected}",
            sets.len()
        )));
    }
    if let Some((i, s)) = sets.iter().enumerate().find(|(_, s)| !s.within(k)) {
        return Err(BamError::InvalidInput(format!(
            "{what} set #{i} uses attribute {} but k = {k}",
            s.max_index().map_or(0, |x| x + 1)
        )));
    }
    Ok(())
}

/// Finds a cares set making scores strictly decrease along `order`, if any.
///
/// `has` is indexed by alternative; only the alternatives in `order` are read.
pub fn solve_has_single_voter(
    order: &[usize],
    has: &[AttrSet],
    k: usize,
    mode: SingleVoterMode,
) -> Result<Option<AttrSet>> {
    if order.len() < 2 {
        return Ok(Some(AttrSet::new()));
    }
    match mode {
        SingleVoterMode::Enumerate => {
            if k > 63 {
                return Err(BamError::Precondition(format!(
                    "subset enumeration supports at most 63 attributes, got {k}"
                )));
            }
            let masks: Vec<u64> = order
                .iter()
                .map(|&a| has[a].to_mask().expect("has set within k") & full_mask(k))
                .collect();
            Ok(feasible_cares_mask(&masks).map(AttrSet::from_mask))
        }
        SingleVoterMode::Typed => Ok(typed_single_voter(order, has, k)),
    }
}

/// Subset enumeration over the attributes some ranked alternative has; the
/// others never change a score.
pub(crate) fn feasible_cares_mask(order_has: &[u64]) -> Option<u64> {
    if order_has.len() < 2 {
        return Some(0);
    }
    let relevant = order_has.iter().fold(0u64, |acc, &h| acc | h);
    if (relevant.count_ones() as usize) < order_has.len() - 1 {
        return None;
    }
    // descending submasks of `relevant`, ending with 0
    let mut cares = relevant;
    loop {
        if explains_mask(order_has, cares) {
            return Some(cares);
        }
        if cares == 0 {
            return None;
        }
        cares = (cares - 1) & relevant;
    }
}

fn typed_single_voter(order: &[usize], has: &[AttrSet], k: usize) -> Option<AttrSet> {
    let table = AttributeTypeTable::from_has(order, has, k);
    let upper = table
        .entries
        .iter()
        .map(|e| e.multiplicity() as u64)
        .collect();
    let mut system = CountingSystem::new(upper);
    for pair in order.windows(2) {
        let side = |alt: usize| -> Vec<usize> {
            (0..table.entries.len())
                .filter(|&t| table.entries[t].contains(alt))
                .collect()
        };
        system.add_strict_gap(&side(pair[0]), &side(pair[1]));
    }
    system.fix_unused_to_zero();
    let values = counting_feasibility(&system)?;
    let mut cares = AttrSet::new();
    for (entry, &count) in table.entries.iter().zip(&values) {
        for &attr in &entry.attributes[..count as usize] {
            cares.insert(attr);
        }
    }
    Some(cares)
}

/// Decides BAM with a fixed has-function, voter by voter.
pub fn solve_has_given(
    profile: &PreferenceProfile,
    has: &[AttrSet],
    k: usize,
) -> Result<SolveOutcome> {
    solve_has_given_with(profile, has, k, ENUMERATION_THRESHOLD)
}

/// As [`solve_has_given`] with an explicit enumeration threshold.
pub fn solve_has_given_with(
    profile: &PreferenceProfile,
    has: &[AttrSet],
    k: usize,
    threshold: usize,
) -> Result<SolveOutcome> {
    check_sets("has", has, profile.num_alternatives(), k)?;
    let budget = Budget::unlimited();
    let mode = if k > threshold.min(63) {
        SingleVoterMode::Typed
    } else {
        SingleVoterMode::Enumerate
    };
    let mut cares = Vec::with_capacity(profile.num_voters());
    for v in 0..profile.num_voters() {
        match solve_has_single_voter(profile.order(v), has, k, mode)? {
            Some(set) => cares.push(set),
            None => {
                return Ok(SolveOutcome::no_because(
                    format!("no cares set explains voter `{}`", profile.voter_name(v)),
                    budget.stats(),
                ))
            }
        }
    }
    let model = AttributeModel::new(k, has.to_vec(), cares)?;
    Ok(SolveOutcome::yes(model, budget.stats()))
}

/// Decides BAM with a fixed cares-function through per-type counts.
pub fn solve_cares_given(
    profile: &PreferenceProfile,
    cares: &[AttrSet],
    k: usize,
) -> Result<SolveOutcome> {
    solve_cares_given_with(profile, cares, k, BLOCK_DOMAIN_LIMIT)
}

/// As [`solve_cares_given`]; above `block_limit` count vectors per
/// alternative the linear counting engine is used instead.
pub fn solve_cares_given_with(
    profile: &PreferenceProfile,
    cares: &[AttrSet],
    k: usize,
    block_limit: u64,
) -> Result<SolveOutcome> {
    check_sets("cares", cares, profile.num_voters(), k)?;
    let mut budget = Budget::unlimited();
    let compact = Compact::new(profile);
    let table = AttributeTypeTable::from_cares(&compact.voters, cares, k);

    // x_{T,a} for nonempty T and alternatives ranked by some voter in T
    let mut var_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut upper = Vec::new();
    for (t, entry) in table.entries.iter().enumerate() {
        if entry.signature.is_empty() {
            continue;
        }
        let mut alts: Vec<usize> = entry
            .signature
            .iter()
            .flat_map(|&v| profile.order(v).iter().copied())
            .collect();
        alts.sort_unstable();
        alts.dedup();
        for a in alts {
            var_of.insert((t, a), upper.len());
            upper.push(entry.multiplicity() as u64);
        }
    }
    let mut gaps: Vec<(usize, Vec<usize>, usize, Vec<usize>)> = Vec::new();
    for &v in &compact.voters {
        let types: Vec<usize> = (0..table.entries.len())
            .filter(|&t| table.entries[t].contains(v))
            .collect();
        for pair in profile.order(v).windows(2) {
            let side =
                |a: usize| -> Vec<usize> { types.iter().map(|&t| var_of[&(t, a)]).collect() };
            gaps.push((pair[0], side(pair[0]), pair[1], side(pair[1])));
        }
    }

    // variables of one alternative, in index order
    let mut block_of = vec![(0, 0); upper.len()];
    let mut block_vars: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, _, b, _) in &gaps {
        block_vars.entry(*a).or_default();
        block_vars.entry(*b).or_default();
    }
    for (&(_, a), &x) in &var_of {
        block_vars.entry(a).or_default().push(x);
    }
    let block_alts: Vec<usize> = block_vars.keys().copied().collect();
    for (b, vars) in block_vars.values().enumerate() {
        for (pos, &x) in vars.iter().enumerate() {
            block_of[x] = (b, pos);
        }
    }
    let blocks = BlockSystem {
        uppers: block_vars
            .values()
            .map(|vars| vars.iter().map(|&x| upper[x]).collect())
            .collect(),
        gaps: gaps
            .iter()
            .map(|(a, left, b, right)| BlockGap {
                a: block_alts
                    .binary_search(a)
                    .expect("every compared alternative has a block"),
                left: left.iter().map(|&x| block_of[x].1).collect(),
                b: block_alts
                    .binary_search(b)
                    .expect("every compared alternative has a block"),
                right: right.iter().map(|&x| block_of[x].1).collect(),
            })
            .collect(),
    };
    let values = if blocks.max_domain() <= block_limit {
        blocks.solve(&mut budget)?.map(|per_block| {
            let mut values = vec![0; upper.len()];
            for (x, &(b, pos)) in block_of.iter().enumerate() {
                values[x] = per_block[b][pos];
            }
            values
        })
    } else {
        let mut system = CountingSystem::new(upper);
        for (_, left, _, right) in &gaps {
            system.add_strict_gap(left, right);
        }
        counting::counting_feasibility_limited(&system, &mut budget)?
    };
    let Some(values) = values else {
        return Ok(SolveOutcome::no_because(
            "no per-type attribute counts satisfy every voter",
            budget.stats(),
        ));
    };
    let mut has = vec![AttrSet::new(); profile.num_alternatives()];
    for (&(t, a), &x) in &var_of {
        for &attr in &table.entries[t].attributes[..values[x] as usize] {
            has[a].insert(attr);
        }
    }
    let model = AttributeModel::new(k, has, cares.to_vec())?;
    Ok(SolveOutcome::yes(model, budget.stats()))
}

/// Reference decision for BAM with a fixed cares-function: tries all
/// `(2^k)^m` has-functions over the ranked alternatives.
pub fn solve_cares_given_enumerate(
    profile: &PreferenceProfile,
    cares: &[AttrSet],
    k: usize,
    node_limit: Option<u64>,
) -> Result<SolveOutcome> {
    check_sets("cares", cares, profile.num_voters(), k)?;
    let compact = Compact::new(profile);
    let m = compact.m();
    if k * m > 63 {
        return Err(BamError::Precondition(format!(
            "has-function enumeration needs k·m <= 63, got {}",
            k * m
        )));
    }
    let mut budget = Budget::new(node_limit, None);
    let cares_masks: Vec<u64> = compact
        .voters
        .iter()
        .map(|&v| cares[v].to_mask().expect("within k"))
        .collect();
    let word = full_mask(k);
    let total: u64 = 1u64 << (k * m);
    let mut order_has = Vec::new();
    for code in 0..total {
        budget.tick()?;
        let has_of = |c: usize| (code >> (c * k)) & word;
        let ok = compact.orders.iter().zip(&cares_masks).all(|(order, &cm)| {
            order_has.clear();
            order_has.extend(order.iter().map(|&c| has_of(c)));
            explains_mask(&order_has, cm)
        });
        if ok {
            let has = (0..m).map(|c| AttrSet::from_mask(has_of(c)));
            let mut model = compact.lift(profile, k, has, std::iter::empty());
            for (v, set) in cares.iter().enumerate() {
                model.set_cares(v, set.clone());
            }
            return Ok(SolveOutcome::yes(model, budget.stats()));
        }
    }
    Ok(SolveOutcome::no(budget.stats()))
}
