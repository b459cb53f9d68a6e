//! Bounds on the number of attributes and per-alternative cardinality windows.
//!
//! In any `k`-attribute model a voter with an order of length `L` cares about
//! at least `L - 1` attributes, and an alternative at rank `r` of that order
//! has between `L - r - 1` and `k - r` attributes. Combining the two sides of
//! the has-window across two voters yields a lower bound on `k`.

use std::fmt;

use crate::attrs::AttrSet;
use crate::model::AttributeModel;
use crate::profile::PreferenceProfile;

/// Lower bound on the minimum number of attributes. Sound, not tight.
pub fn lower_bound_k(profile: &PreferenceProfile) -> usize {
    let rv = profile.rank_view();
    let constraining: Vec<usize> = (0..profile.num_voters())
        .filter(|&v| rv.len(v) >= 2)
        .collect();
    let mut best = constraining
        .iter()
        .map(|&v| rv.len(v) - 1)
        .max()
        .unwrap_or(0);
    for c in 0..profile.num_alternatives() {
        for &v in &constraining {
            let Some(rank_v) = rv.rank(v, c) else {
                continue;
            };
            for &w in &constraining {
                let Some(rank_w) = rv.rank(w, c) else {
                    continue;
                };
                if rank_v >= rank_w {
                    best = best.max(rv.len(w) - rank_w + rank_v - 1);
                }
            }
        }
    }
    best
}

/// Attribute count for which a model always exists: `min((m-1)m, (m-1)n)`.
pub fn upper_bound_k(profile: &PreferenceProfile) -> usize {
    let m = profile.num_alternatives();
    if m <= 1 {
        return 0;
    }
    (m - 1) * m.min(profile.num_voters())
}

/// Every alternative gets `m - 1` private attributes and each voter cares
/// about as many of them as the alternative's position requires.
///
/// Attribute `i` (0-based) of alternative `c` is index `c * (m - 1) + i`.
pub fn trivial_bam(profile: &PreferenceProfile) -> AttributeModel {
    let m = profile.num_alternatives();
    let per = m.saturating_sub(1);
    let k = per * m;
    let has = (0..m).map(|c| AttrSet::range(c * per, per)).collect();
    let cares = profile
        .orders()
        .iter()
        .map(|order| {
            let len = order.len();
            let mut set = AttrSet::new();
            for (rank, &c) in order.iter().enumerate() {
                set.union_with(&AttrSet::range(c * per, len - rank - 1));
            }
            set
        })
        .collect();
    AttributeModel::new(k, has, cares).expect("private attributes stay within k")
}

/// Necessary cardinalities at a fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityWindows {
    pub k: usize,
    /// `|≻_v| - 1`, or 0 for orders of length at most one.
    pub min_cares: Vec<usize>,
    /// Per alternative, the intersection over all voters ranking it of
    /// `[|≻_v| - rank_v(c) - 1, k - rank_v(c)]`. Unranked: `[0, k]`.
    pub has_window: Vec<(usize, usize)>,
}

impl CardinalityWindows {
    pub fn allows(&self, alt: usize, size: usize) -> bool {
        let (lo, hi) = self.has_window[alt];
        lo <= size && size <= hi
    }
}

/// Why no `k`-attribute model can exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infeasibility {
    /// The voter's order needs more distinct scores than `k` allows.
    Voter {
        voter: usize,
        min_cares: usize,
        k: usize,
    },
    /// The alternative's has-window is empty; `high` is negative when the
    /// alternative sits at a rank deeper than `k`.
    Alternative { alt: usize, low: usize, high: i64 },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Infeasibility::Voter {
                voter,
                min_cares,
                k,
            } => write!(
                f,
                "voter #{voter} needs at least {min_cares} cared attributes but k = {k}"
            ),
            Infeasibility::Alternative { alt, low, high } => write!(
                f,
                "alternative #{alt} needs between {low} and {high} attributes"
            ),
        }
    }
}

pub fn cardinality_windows(
    profile: &PreferenceProfile,
    k: usize,
) -> Result<CardinalityWindows, Infeasibility> {
    let rv = profile.rank_view();
    let mut min_cares = Vec::with_capacity(profile.num_voters());
    for v in 0..profile.num_voters() {
        let need = rv.len(v).saturating_sub(1);
        if need > k {
            return Err(Infeasibility::Voter {
                voter: v,
                min_cares: need,
                k,
            });
        }
        min_cares.push(need);
    }
    let mut has_window = Vec::with_capacity(profile.num_alternatives());
    for c in 0..profile.num_alternatives() {
        let mut low = 0usize;
        let mut high = k as i64;
        for v in 0..profile.num_voters() {
            if let Some(rank) = rv.rank(v, c) {
                low = low.max(rv.len(v) - rank - 1);
                high = high.min(k as i64 - rank as i64);
            }
        }
        if (low as i64) > high {
            return Err(Infeasibility::Alternative { alt: c, low, high });
        }
        has_window.push((low, high as usize));
    }
    Ok(CardinalityWindows {
        k,
        min_cares,
        has_window,
    })
}
