use std::collections::HashMap;

use crate::error::{BamError, Result};

/// Alternatives, voters, and one strict (possibly incomplete) order per voter.
///
/// Orders are stored as alternative indices, most preferred first. The
/// profile is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    alternatives: Vec<String>,
    voters: Vec<String>,
    orders: Vec<Vec<usize>>,
    alt_index: HashMap<String, usize>,
    voter_index: HashMap<String, usize>,
}

fn index_names(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(BamError::InvalidProfile(format!(
                "duplicate {what} `{name}`"
            )));
        }
    }
    Ok(index)
}

impl PreferenceProfile {
    /// Builds a profile from named orders, one `(voter, order)` pair per voter.
    pub fn new<S: AsRef<str>>(alternatives: &[S], voters: &[(S, Vec<S>)]) -> Result<Self> {
        let alternatives: Vec<String> =
            alternatives.iter().map(|a| a.as_ref().to_owned()).collect();
        let alt_index = index_names(&alternatives, "alternative")?;
        let mut names = Vec::with_capacity(voters.len());
        let mut orders = Vec::with_capacity(voters.len());
        for (voter, order) in voters {
            names.push(voter.as_ref().to_owned());
            let order = order
                .iter()
                .map(|a| {
                    alt_index.get(a.as_ref()).copied().ok_or_else(|| {
                        BamError::InvalidProfile(format!(
                            "voter `{}` ranks unknown alternative `{}`",
                            voter.as_ref(),
                            a.as_ref()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            orders.push(order);
        }
        Self::from_indices(alternatives, names, orders)
    }

    pub fn from_indices(
        alternatives: Vec<String>,
        voters: Vec<String>,
        orders: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if voters.len() != orders.len() {
            return Err(BamError::InvalidProfile(format!(
                "{} voters but {} orders",
                voters.len(),
                orders.len()
            )));
        }
        let alt_index = index_names(&alternatives, "alternative")?;
        let voter_index = index_names(&voters, "voter")?;
        let m = alternatives.len();
        for (v, order) in orders.iter().enumerate() {
            let mut seen = vec![false; m];
            for &a in order {
                if a >= m {
                    return Err(BamError::InvalidProfile(format!(
                        "voter `{}` ranks alternative index {a} out of range",
                        voters[v]
                    )));
                }
                if std::mem::replace(&mut seen[a], true) {
                    return Err(BamError::InvalidProfile(format!(
                        "voter `{}` ranks `{}` twice",
                        voters[v], alternatives[a]
                    )));
                }
            }
        }
        Ok(Self {
            alternatives,
            voters,
            orders,
            alt_index,
            voter_index,
        })
    }

    /// Convenience constructor: alternatives are collected in order of first
    /// appearance and voters are named `v1..vn`.
    pub fn from_orders(orders: &[&[&str]]) -> Result<Self> {
        let mut alternatives: Vec<&str> = Vec::new();
        for order in orders {
            for a in order.iter() {
                if !alternatives.contains(a) {
                    alternatives.push(a);
                }
            }
        }
        let voters: Vec<(String, Vec<String>)> = orders
            .iter()
            .enumerate()
            .map(|(i, o)| {
                (
                    format!("v{}", i + 1),
                    o.iter().map(|s| s.to_string()).collect(),
                )
            })
            .collect();
        let alternatives: Vec<String> = alternatives.into_iter().map(str::to_owned).collect();
        Self::new(&alternatives, &voters)
    }

    pub fn num_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn voters(&self) -> &[String] {
        &self.voters
    }

    pub fn order(&self, voter: usize) -> &[usize] {
        &self.orders[voter]
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn alternative_index(&self, name: &str) -> Option<usize> {
        self.alt_index.get(name).copied()
    }

    pub fn voter_index(&self, name: &str) -> Option<usize> {
        self.voter_index.get(name).copied()
    }

    pub fn alternative_name(&self, alt: usize) -> &str {
        &self.alternatives[alt]
    }

    pub fn voter_name(&self, voter: usize) -> &str {
        &self.voters[voter]
    }

    pub(crate) fn lookup_alternative(&self, name: &str) -> Result<usize> {
        self.alternative_index(name)
            .ok_or_else(|| BamError::Lookup(format!("unknown alternative `{name}`")))
    }

    pub(crate) fn lookup_voter(&self, name: &str) -> Result<usize> {
        self.voter_index(name)
            .ok_or_else(|| BamError::Lookup(format!("unknown voter `{name}`")))
    }

    pub fn max_order_len(&self) -> usize {
        self.orders.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Which alternatives appear in at least one order.
    pub fn ranked_mask(&self) -> Vec<bool> {
        let mut ranked = vec![false; self.alternatives.len()];
        for &a in self.orders.iter().flatten() {
            ranked[a] = true;
        }
        ranked
    }

    /// The same profile with one voter dropped.
    pub fn without_voter(&self, voter: usize) -> Self {
        let mut voters = self.voters.clone();
        let mut orders = self.orders.clone();
        voters.remove(voter);
        orders.remove(voter);
        Self::from_indices(self.alternatives.clone(), voters, orders)
            .expect("sub-profile of a valid profile is valid")
    }

    pub fn rank_view(&self) -> RankView {
        let m = self.alternatives.len();
        let ranks = self
            .orders
            .iter()
            .map(|order| {
                let mut row = vec![None; m];
                for (r, &a) in order.iter().enumerate() {
                    row[a] = Some(r);
                }
                row
            })
            .collect();
        let lengths = self.orders.iter().map(Vec::len).collect();
        RankView { ranks, lengths }
    }
}

/// Per-voter ranks (number of alternatives preferred) and order lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankView {
    ranks: Vec<Vec<Option<usize>>>,
    lengths: Vec<usize>,
}

impl RankView {
    /// `None` when the voter does not rank the alternative.
    pub fn rank(&self, voter: usize, alt: usize) -> Option<usize> {
        self.ranks[voter][alt]
    }

    pub fn len(&self, voter: usize) -> usize {
        self.lengths[voter]
    }

    pub fn num_voters(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_incomplete_order() {
        let p =
            PreferenceProfile::new(&["1", "2", "3", "4"], &[("v", vec!["3", "1", "2"])]).unwrap();
        let rv = p.rank_view();
        assert_eq!(rv.rank(0, p.alternative_index("2").unwrap()), Some(2));
        assert_eq!(rv.rank(0, p.alternative_index("3").unwrap()), Some(0));
        assert_eq!(rv.rank(0, p.alternative_index("4").unwrap()), None);
        assert_eq!(rv.len(0), 3);
    }

    #[test]
    fn empty_order_has_no_ranks() {
        let p = PreferenceProfile::new(&["a"], &[("v", vec![])]).unwrap();
        let rv = p.rank_view();
        assert_eq!(rv.len(0), 0);
        assert_eq!(rv.rank(0, 0), None);
    }

    #[test]
    fn pair_ranks() {
        let p = PreferenceProfile::from_orders(&[&["a", "b"]]).unwrap();
        let rv = p.rank_view();
        assert_eq!(rv.rank(0, 0), Some(0));
        assert_eq!(rv.rank(0, 1), Some(1));
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(
            PreferenceProfile::new(&["a", "b"], &[("v", vec!["a", "a"])]),
            Err(BamError::InvalidProfile(_))
        ));
        assert!(PreferenceProfile::new(&["a"], &[("v", vec!["z"])]).is_err());
        assert!(PreferenceProfile::new(&["a", "a"], &[("v", vec![])]).is_err());
        assert!(PreferenceProfile::new(&["a"], &[("v", vec![]), ("v", vec![])]).is_err());
    }
}
