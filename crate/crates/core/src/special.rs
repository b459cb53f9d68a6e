//! Profiles where every constraining order has length exactly `k + 1`.
//!
//! Then every voter must care about all `k` attributes and scores along an
//! order are forced to `k, k-1, .., 0`, so each alternative needs one rank
//! shared by all voters ranking it.

use std::collections::BTreeSet;

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::outcome::{SearchStats, SolveOutcome};
use crate::profile::PreferenceProfile;

/// The ranks each alternative occupies across all constraining orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankConsistencyTable {
    pub ranks: Vec<BTreeSet<usize>>,
}

impl RankConsistencyTable {
    pub fn new(profile: &PreferenceProfile) -> Self {
        let mut ranks = vec![BTreeSet::new(); profile.num_alternatives()];
        for order in profile.orders().iter().filter(|o| o.len() >= 2) {
            for (r, &c) in order.iter().enumerate() {
                ranks[c].insert(r);
            }
        }
        Self { ranks }
    }

    pub fn is_consistent(&self) -> bool {
        self.ranks.iter().all(|r| r.len() <= 1)
    }

    /// First alternative found at two different ranks.
    pub fn conflict(&self) -> Option<usize> {
        self.ranks.iter().position(|r| r.len() > 1)
    }
}

/// True when every order of length at least 2 has length `k + 1`.
pub fn is_uniform_length(profile: &PreferenceProfile, k: usize) -> bool {
    profile
        .orders()
        .iter()
        .all(|o| o.len() < 2 || o.len() == k + 1)
}

pub fn uniform_length_solve(profile: &PreferenceProfile, k: usize) -> Result<SolveOutcome> {
    if !is_uniform_length(profile, k) {
        return Err(BamError::Precondition(format!(
            "every order of length at least 2 must have length {}",
            k + 1
        )));
    }
    let table = RankConsistencyTable::new(profile);
    if let Some(c) = table.conflict() {
        return Ok(SolveOutcome::no_because(
            format!(
                "alternative `{}` is ranked at different positions",
                profile.alternative_name(c)
            ),
            SearchStats::default(),
        ));
    }
    let has = table
        .ranks
        .iter()
        .map(|r| match r.first() {
            Some(&rank) => AttrSet::prefix(k - rank),
            None => AttrSet::new(),
        })
        .collect();
    let cares = profile
        .orders()
        .iter()
        .map(|o| {
            if o.len() >= 2 {
                AttrSet::prefix(k)
            } else {
                AttrSet::new()
            }
        })
        .collect();
    let model = AttributeModel::new(k, has, cares)?;
    Ok(SolveOutcome::yes(model, SearchStats::default()))
}
