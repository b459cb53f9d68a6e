//! Feasibility for strict-gap systems whose variables split into blocks,
//! each gap comparing a sum inside one block with a sum inside another.
//!
//! Every block gets an explicit domain of value vectors, so gaps become
//! binary constraints and arc consistency reduces to comparing each value's
//! projected sum against the other side's minimum or maximum.

use std::collections::VecDeque;

use crate::error::Result;
use crate::reduce::Budget;

/// `Σ left ≥ 1 + Σ right`, with `left` inside `blocks[a]` and `right` inside
/// `blocks[b]`; positions index into the respective block.
#[derive(Debug, Clone)]
pub(crate) struct BlockGap {
    pub a: usize,
    pub left: Vec<usize>,
    pub b: usize,
    pub right: Vec<usize>,
}

pub(crate) struct BlockSystem {
    /// Per block, the upper bound of each of its variables.
    pub uppers: Vec<Vec<u64>>,
    pub gaps: Vec<BlockGap>,
}

impl BlockSystem {
    /// Domain size of the largest block, saturating.
    pub fn max_domain(&self) -> u64 {
        self.uppers
            .iter()
            .map(|u| u.iter().fold(1u64, |acc, &x| acc.saturating_mul(x + 1)))
            .max()
            .unwrap_or(1)
    }

    /// Values per block, or `None` when no assignment satisfies every gap.
    pub fn solve(&self, budget: &mut Budget) -> Result<Option<Vec<Vec<u64>>>> {
        let values: Vec<Vec<Vec<u64>>> = self.uppers.iter().map(|u| enumerate(u)).collect();
        // per gap side, the projected sum of every value of that block
        let sums: Vec<(Vec<u64>, Vec<u64>)> = self
            .gaps
            .iter()
            .map(|g| {
                (
                    project(&values[g.a], &g.left),
                    project(&values[g.b], &g.right),
                )
            })
            .collect();
        let mut watch = vec![Vec::new(); self.uppers.len()];
        for (i, g) in self.gaps.iter().enumerate() {
            watch[g.a].push(i);
            watch[g.b].push(i);
        }
        let search = Search {
            system: self,
            sums,
            watch,
        };
        let domains: Vec<Vec<usize>> = values
            .iter()
            .map(|v| (0..v.len()).rev().collect())
            .collect();
        let all: Vec<usize> = (0..self.uppers.len()).collect();
        let Some(domains) = search.propagate(domains, all) else {
            return Ok(None);
        };
        Ok(search.branch(domains, budget)?.map(|d| {
            d.iter()
                .zip(&values)
                .map(|(dom, vals)| vals[dom[0]].clone())
                .collect()
        }))
    }
}

fn enumerate(uppers: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &u in uppers {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=u).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn project(values: &[Vec<u64>], positions: &[usize]) -> Vec<u64> {
    values
        .iter()
        .map(|v| positions.iter().map(|&p| v[p]).sum())
        .collect()
}

struct Search<'a> {
    system: &'a BlockSystem,
    sums: Vec<(Vec<u64>, Vec<u64>)>,
    watch: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn propagate(&self, mut d: Vec<Vec<usize>>, seeds: Vec<usize>) -> Option<Vec<Vec<usize>>> {
        let mut queue: VecDeque<usize> = seeds.into();
        let mut queued = vec![false; d.len()];
        for &s in &queue {
            queued[s] = true;
        }
        while let Some(x) = queue.pop_front() {
            queued[x] = false;
            for &gi in &self.watch[x] {
                let g = &self.system.gaps[gi];
                let (left, right) = &self.sums[gi];
                let min_right = d[g.b].iter().map(|&i| right[i]).min()?;
                let before = d[g.a].len();
                d[g.a].retain(|&i| left[i] > min_right);
                let max_left = d[g.a].iter().map(|&i| left[i]).max()?;
                let changed_a = d[g.a].len() != before;
                let before = d[g.b].len();
                d[g.b].retain(|&i| right[i] < max_left);
                if d[g.b].is_empty() {
                    return None;
                }
                let changed_b = d[g.b].len() != before;
                for (blk, changed) in [(g.a, changed_a), (g.b, changed_b)] {
                    if changed && !queued[blk] {
                        queued[blk] = true;
                        queue.push_back(blk);
                    }
                }
            }
        }
        Some(d)
    }

    fn branch(&self, d: Vec<Vec<usize>>, budget: &mut Budget) -> Result<Option<Vec<Vec<usize>>>> {
        budget.tick()?;
        let Some(x) = (0..d.len())
            .filter(|&x| d[x].len() > 1)
            .min_by_key(|&x| d[x].len())
        else {
            return Ok(Some(d));
        };
        for &value in &d[x] {
            let mut next = d.clone();
            next[x] = vec![value];
            if let Some(next) = self.propagate(next, vec![x]) {
                if let Some(found) = self.branch(next, budget)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}
