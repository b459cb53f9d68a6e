//! Exact minimum number of attributes for profiles with two voters.
//!
//! Attributes split into three types: cared about by `u` only, by `w` only,
//! or by both. Each alternative needs `λ_v(c) = |≻_v| - rank_v(c) - 1`
//! points from voter `v`, and the algorithm distributes these over the types
//! so that the per-type maxima add up to as little as possible.

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::profile::PreferenceProfile;

/// Intermediate and final per-type values, indexed by alternative.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeScores {
    pub lambda_u: Vec<usize>,
    pub lambda_w: Vec<usize>,
    pub ranked_u: Vec<bool>,
    pub ranked_w: Vec<bool>,
    pub t_u: Vec<usize>,
    pub t_w: Vec<usize>,
    pub t_uw: Vec<usize>,
    pub conv: Vec<usize>,
    pub s_u: Vec<usize>,
    pub s_w: Vec<usize>,
    pub s_uw: Vec<usize>,
    pub m_u: usize,
    pub m_w: usize,
    pub m_uw: usize,
    pub k: usize,
}

impl TypeScores {
    /// Checks the tightness and range invariants; returns the first failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        if self.k != self.m_u + self.m_w + self.m_uw {
            return Err(format!(
                "k = {} but M sum to {}",
                self.k,
                self.m_u + self.m_w + self.m_uw
            ));
        }
        for c in 0..self.lambda_u.len() {
            if self.ranked_u[c] && self.s_u[c] + self.s_uw[c] != self.lambda_u[c] {
                return Err(format!("alternative #{c}: S_u + S_uw != λ_u"));
            }
            if self.ranked_w[c] && self.s_w[c] + self.s_uw[c] != self.lambda_w[c] {
                return Err(format!("alternative #{c}: S_w + S_uw != λ_w"));
            }
            if self.s_u[c] > self.m_u || self.s_w[c] > self.m_w || self.s_uw[c] > self.m_uw {
                return Err(format!(
                    "alternative #{c}: a type count exceeds its maximum"
                ));
            }
        }
        Ok(())
    }

    /// Human-readable table of all values.
    pub fn table(&self, profile: &PreferenceProfile) -> String {
        let mut out = format!(
            "M_u={} M_w={} M_uw={} k={}\n{:<12} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4}\n",
            self.m_u, self.m_w, self.m_uw, self.k, "alternative", "λ_u", "λ_w", "t_u", "t_w", "t_uw", "conv", "S_u",
            "S_w", "S_uw"
        );
        for c in 0..self.lambda_u.len() {
            out.push_str(&format!(
                "{:<12} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>4}\n",
                profile.alternative_name(c),
                self.lambda_u[c],
                self.lambda_w[c],
                self.t_u[c],
                self.t_w[c],
                self.t_uw[c],
                self.conv[c],
                self.s_u[c],
                self.s_w[c],
                self.s_uw[c]
            ));
        }
        out
    }
}

fn require_two(profile: &PreferenceProfile) -> Result<()> {
    if profile.num_voters() != 2 {
        return Err(BamError::Precondition(format!(
            "two-voter algorithm needs exactly 2 voters, got {}",
            profile.num_voters()
        )));
    }
    Ok(())
}

pub fn value_computation(profile: &PreferenceProfile) -> Result<TypeScores> {
    value_computation_counted(profile).map(|(s, _)| s)
}

/// As [`value_computation`], also returning the number of per-alternative
/// arithmetic steps performed.
pub fn value_computation_counted(profile: &PreferenceProfile) -> Result<(TypeScores, u64)> {
    require_two(profile)?;
    let m = profile.num_alternatives();
    let mut ops = 0u64;
    let mut s = TypeScores {
        lambda_u: vec![0; m],
        lambda_w: vec![0; m],
        ranked_u: vec![false; m],
        ranked_w: vec![false; m],
        t_u: vec![0; m],
        t_w: vec![0; m],
        t_uw: vec![0; m],
        conv: vec![0; m],
        s_u: vec![0; m],
        s_w: vec![0; m],
        s_uw: vec![0; m],
        ..TypeScores::default()
    };
    for (lambda, ranked, order) in [
        (&mut s.lambda_u, &mut s.ranked_u, profile.order(0)),
        (&mut s.lambda_w, &mut s.ranked_w, profile.order(1)),
    ] {
        for (rank, &c) in order.iter().enumerate() {
            lambda[c] = order.len() - rank - 1;
            ranked[c] = true;
            ops += 1;
        }
    }

    for c in 0..m {
        if s.ranked_u[c] && s.ranked_w[c] {
            s.t_uw[c] = s.lambda_u[c].min(s.lambda_w[c]);
            s.t_u[c] = s.lambda_u[c] - s.t_uw[c];
            s.t_w[c] = s.lambda_w[c] - s.t_uw[c];
            s.m_u = s.m_u.max(s.t_u[c]);
            s.m_w = s.m_w.max(s.t_w[c]);
        }
        ops += 1;
    }

    for c in 0..m {
        match (s.ranked_u[c], s.ranked_w[c]) {
            (true, true) => {
                s.conv[c] = (s.m_w - s.t_w[c]).min(s.m_u - s.t_u[c]).min(s.t_uw[c]);
                s.s_uw[c] = s.t_uw[c] - s.conv[c];
                s.s_u[c] = s.t_u[c] + s.conv[c];
                s.s_w[c] = s.t_w[c] + s.conv[c];
            }
            (true, false) => {
                s.s_u[c] = s.lambda_u[c].min(s.m_u);
                s.s_uw[c] = s.lambda_u[c] - s.s_u[c];
            }
            (false, true) => {
                s.s_w[c] = s.lambda_w[c].min(s.m_w);
                s.s_uw[c] = s.lambda_w[c] - s.s_w[c];
            }
            (false, false) => {}
        }
        s.m_uw = s.m_uw.max(s.s_uw[c]);
        ops += 1;
    }
    s.k = s.m_u + s.m_w + s.m_uw;
    Ok((s, ops))
}

/// Minimum `k` and a model attaining it. Attribute layout: the shared type
/// first, then `u`'s, then `w`'s; alternatives take a prefix of each type.
pub fn min_k_two_voters(profile: &PreferenceProfile) -> Result<(usize, AttributeModel)> {
    let s = value_computation(profile)?;
    let (uw, u, w) = (0, s.m_uw, s.m_uw + s.m_u);
    let has = (0..profile.num_alternatives())
        .map(|c| {
            let mut set = AttrSet::range(uw, s.s_uw[c]);
            set.union_with(&AttrSet::range(u, s.s_u[c]));
            set.union_with(&AttrSet::range(w, s.s_w[c]));
            set
        })
        .collect();
    let cares = vec![AttrSet::prefix(s.m_uw + s.m_u), {
        let mut set = AttrSet::prefix(s.m_uw);
        set.union_with(&AttrSet::range(w, s.m_w));
        set
    }];
    Ok((s.k, AttributeModel::new(s.k, has, cares)?))
}
