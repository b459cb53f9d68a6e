use std::fmt;

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::profile::PreferenceProfile;

/// A `k`-attribute model: `has` per alternative and `cares` per voter,
/// both indexed like the profile they were built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeModel {
    k: usize,
    has: Vec<AttrSet>,
    cares: Vec<AttrSet>,
}

impl AttributeModel {
    pub fn new(k: usize, has: Vec<AttrSet>, cares: Vec<AttrSet>) -> Result<Self> {
        for (what, sets) in [("has", &has), ("cares", &cares)] {
            if let Some((i, s)) = sets.iter().enumerate().find(|(_, s)| !s.within(k)) {
                return Err(BamError::InvalidModel(format!(
                    "{what} set #{i} contains attribute {} outside 1..{k}",
                    s.max_index().map_or(0, |x| x + 1)
                )));
            }
        }
        Ok(Self { k, has, cares })
    }

    /// All sets empty.
    pub fn empty(k: usize, alternatives: usize, voters: usize) -> Self {
        Self {
            k,
            has: vec![AttrSet::new(); alternatives],
            cares: vec![AttrSet::new(); voters],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn has(&self, alt: usize) -> &AttrSet {
        &self.has[alt]
    }

    pub fn cares(&self, voter: usize) -> &AttrSet {
        &self.cares[voter]
    }

    pub fn has_sets(&self) -> &[AttrSet] {
        &self.has
    }

    pub fn cares_sets(&self) -> &[AttrSet] {
        &self.cares
    }

    pub fn set_has(&mut self, alt: usize, set: AttrSet) {
        assert!(set.within(self.k), "has set exceeds k = {}", self.k);
        self.has[alt] = set;
    }

    pub fn set_cares(&mut self, voter: usize, set: AttrSet) {
        assert!(set.within(self.k), "cares set exceeds k = {}", self.k);
        self.cares[voter] = set;
    }

    /// `|has(alt) ∩ cares(voter)|` by index.
    pub fn score_at(&self, voter: usize, alt: usize) -> usize {
        self.has[alt].intersection_len(&self.cares[voter])
    }

    /// Same model with extra attributes nobody has or cares about.
    pub fn padded(mut self, k: usize) -> Self {
        assert!(
            k >= self.k,
            "cannot pad a {}-attribute model down to {k}",
            self.k
        );
        self.k = k;
        self
    }

    fn check_shape(&self, profile: &PreferenceProfile) -> Result<()> {
        if self.has.len() != profile.num_alternatives() || self.cares.len() != profile.num_voters()
        {
            return Err(BamError::Lookup(format!(
                "model covers {} alternatives / {} voters, profile has {} / {}",
                self.has.len(),
                self.cares.len(),
                profile.num_alternatives(),
                profile.num_voters()
            )));
        }
        Ok(())
    }
}

/// Score of `alt` for `voter`, resolved by identifier.
pub fn score(
    profile: &PreferenceProfile,
    model: &AttributeModel,
    voter: &str,
    alt: &str,
) -> Result<usize> {
    model.check_shape(profile)?;
    let v = profile.lookup_voter(voter)?;
    let a = profile.lookup_alternative(alt)?;
    Ok(model.score_at(v, a))
}

/// A voter whose order is not explained: `better ≻ worse` but the scores
/// are not strictly decreasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub voter: usize,
    pub better: usize,
    pub worse: usize,
    pub better_score: usize,
    pub worse_score: usize,
}

impl Violation {
    pub fn describe(&self, profile: &PreferenceProfile) -> String {
        format!(
            "voter `{}` prefers `{}` (score {}) to `{}` (score {})",
            profile.voter_name(self.voter),
            profile.alternative_name(self.better),
            self.better_score,
            profile.alternative_name(self.worse),
            self.worse_score
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Explained,
    Violated(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Explained)
    }

    pub fn violation(&self) -> Option<Violation> {
        match self {
            Verdict::Explained => None,
            Verdict::Violated(v) => Some(*v),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Explained => write!(f, "explained"),
            Verdict::Violated(v) => write!(
                f,
                "violated by voter #{} on ({}, {})",
                v.voter, v.better, v.worse
            ),
        }
    }
}

/// Checks that the model explains every voter.
///
/// Only adjacent pairs are compared: scores along an order strictly
/// decrease iff every adjacent pair does. The reported violation is the
/// first one in voter order, then order position.
pub fn verify(profile: &PreferenceProfile, model: &AttributeModel) -> Result<Verdict> {
    model.check_shape(profile)?;
    for v in 0..profile.num_voters() {
        for pair in profile.order(v).windows(2) {
            let (better, worse) = (pair[0], pair[1]);
            let (sb, sw) = (model.score_at(v, better), model.score_at(v, worse));
            if sb <= sw {
                return Ok(Verdict::Violated(Violation {
                    voter: v,
                    better,
                    worse,
                    better_score: sb,
                    worse_score: sw,
                }));
            }
        }
    }
    Ok(Verdict::Explained)
}
