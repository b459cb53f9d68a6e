//! Shared solver plumbing: the compact view of a profile and node/time budgets.

use std::time::{Duration, Instant};

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::outcome::SearchStats;
use crate::profile::PreferenceProfile;

/// The constraining part of a profile: orders of length >= 2, over the
/// alternatives they mention, renumbered densely.
pub(crate) struct Compact {
    /// compact alternative -> profile alternative
    pub alts: Vec<usize>,
    /// compact voter -> profile voter
    pub voters: Vec<usize>,
    pub orders: Vec<Vec<usize>>,
}

impl Compact {
    pub fn new(profile: &PreferenceProfile) -> Self {
        let mut to_compact = vec![usize::MAX; profile.num_alternatives()];
        let mut alts = Vec::new();
        let mut voters = Vec::new();
        let mut orders = Vec::new();
        for (v, order) in profile.orders().iter().enumerate() {
            if order.len() < 2 {
                continue;
            }
            let mapped = order
                .iter()
                .map(|&a| {
                    if to_compact[a] == usize::MAX {
                        to_compact[a] = alts.len();
                        alts.push(a);
                    }
                    to_compact[a]
                })
                .collect();
            voters.push(v);
            orders.push(mapped);
        }
        Self {
            alts,
            voters,
            orders,
        }
    }

    pub fn m(&self) -> usize {
        self.alts.len()
    }

    /// Expands compact has/cares sets into a model of the whole profile.
    /// Stripped alternatives and non-constraining voters get empty sets.
    pub fn lift(
        &self,
        profile: &PreferenceProfile,
        k: usize,
        has: impl IntoIterator<Item = AttrSet>,
        cares: impl IntoIterator<Item = AttrSet>,
    ) -> AttributeModel {
        let mut model = AttributeModel::empty(k, profile.num_alternatives(), profile.num_voters());
        for (c, set) in has.into_iter().enumerate() {
            model.set_has(self.alts[c], set);
        }
        for (v, set) in cares.into_iter().enumerate() {
            model.set_cares(self.voters[v], set);
        }
        model
    }
}

/// Node and wall-clock accounting for one solver call.
pub(crate) struct Budget {
    start: Instant,
    nodes: u64,
    node_limit: Option<u64>,
    time_limit: Option<Duration>,
}

impl Budget {
    pub fn new(node_limit: Option<u64>, time_limit_ms: Option<u64>) -> Self {
        Self {
            start: Instant::now(),
            nodes: 0,
            node_limit,
            time_limit: time_limit_ms.map(Duration::from_millis),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(None, None)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|limit| self.nodes > limit) {
            return Err(self.exceeded());
        }
        if self.nodes.is_multiple_of(1024)
            && self.time_limit.is_some_and(|t| self.start.elapsed() > t)
        {
            return Err(self.exceeded());
        }
        Ok(())
    }

    pub fn add_nodes(&mut self, n: u64) {
        self.nodes += n;
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }

    pub fn exceeded(&self) -> BamError {
        let s = self.stats();
        BamError::ResourceLimit {
            nodes: s.nodes,
            elapsed_ms: s.elapsed_ms,
        }
    }
}

/// Scores along an order strictly decrease under `cares`.
#[inline]
pub(crate) fn explains_mask(order_has: &[u64], cares: u64) -> bool {
    order_has
        .windows(2)
        .all(|w| (w[0] & cares).count_ones() > (w[1] & cares).count_ones())
}

/// All masks over `k` bits.
#[inline]
pub(crate) fn full_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}
