//! Bounded-integer feasibility for the per-type counting systems.
//!
//! Variables are non-negative integers with an upper bound; constraints are
//! linear inequalities `Σ coef·x >= rhs`. The decision is a complete
//! depth-first search with bounds propagation on every constraint.

use crate::error::Result;
use crate::reduce::Budget;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    /// `(variable, coefficient)`, variables distinct, coefficients non-zero.
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

impl LinearConstraint {
    pub fn eval(&self, values: &[u64]) -> i64 {
        self.terms.iter().map(|&(x, c)| c * values[x] as i64).sum()
    }
}

/// Variables with domains `[0, upper[i]]` and linear `>=` constraints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountingSystem {
    pub upper: Vec<u64>,
    pub constraints: Vec<LinearConstraint>,
}

impl CountingSystem {
    pub fn new(upper: Vec<u64>) -> Self {
        Self {
            upper,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.upper.len()
    }

    /// Adds `Σ coef·x >= rhs`, merging repeated variables and dropping
    /// cancelled ones.
    pub fn add_constraint(&mut self, terms: impl IntoIterator<Item = (usize, i64)>, rhs: i64) {
        let mut merged: Vec<(usize, i64)> = Vec::new();
        for (x, c) in terms {
            assert!(
                x < self.upper.len(),
                "constraint references undeclared variable {x}"
            );
            match merged.iter_mut().find(|(y, _)| *y == x) {
                Some(t) => t.1 += c,
                None => merged.push((x, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        merged.sort_unstable();
        self.constraints
            .push(LinearConstraint { terms: merged, rhs });
    }

    /// `Σ left >= 1 + Σ right`
    pub fn add_strict_gap(&mut self, left: &[usize], right: &[usize]) {
        let terms = left
            .iter()
            .map(|&x| (x, 1))
            .chain(right.iter().map(|&x| (x, -1)));
        self.add_constraint(terms, 1);
    }

    /// Pins variables that occur in no constraint to zero.
    pub fn fix_unused_to_zero(&mut self) {
        let mut used = vec![false; self.upper.len()];
        for c in &self.constraints {
            for &(x, _) in &c.terms {
                used[x] = true;
            }
        }
        for (u, used) in self.upper.iter_mut().zip(used) {
            if !used {
                *u = 0;
            }
        }
    }

    pub fn is_satisfied(&self, values: &[u64]) -> bool {
        values.len() == self.upper.len()
            && values.iter().zip(&self.upper).all(|(v, u)| v <= u)
            && self.constraints.iter().all(|c| c.eval(values) >= c.rhs)
    }
}

/// Complete feasibility decision; returns a satisfying valuation if one exists.
pub fn counting_feasibility(system: &CountingSystem) -> Option<Vec<u64>> {
    counting_feasibility_limited(system, &mut Budget::unlimited()).expect("no limit set")
}

pub(crate) fn counting_feasibility_limited(
    system: &CountingSystem,
    budget: &mut Budget,
) -> Result<Option<Vec<u64>>> {
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); system.num_vars()];
    for (i, c) in system.constraints.iter().enumerate() {
        for &(x, _) in &c.terms {
            watch[x].push(i);
        }
    }
    let engine = Engine { system, watch };
    let lo = vec![0i64; system.num_vars()];
    let hi: Vec<i64> = system.upper.iter().map(|&u| u as i64).collect();
    let found = engine.search(Domains { lo, hi }, budget)?;
    Ok(found.map(|d| d.lo.into_iter().map(|v| v as u64).collect()))
}

#[derive(Clone)]
struct Domains {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

struct Engine<'a> {
    system: &'a CountingSystem,
    watch: Vec<Vec<usize>>,
}

impl Engine<'_> {
    /// Bounds propagation to a fixpoint. Returns false on a wipe-out.
    fn propagate(&self, d: &mut Domains, seeds: impl IntoIterator<Item = usize>) -> bool {
        let n = self.system.constraints.len();
        let mut queued = vec![false; n];
        let mut queue: Vec<usize> = Vec::new();
        for i in seeds {
            if !queued[i] {
                queued[i] = true;
                queue.push(i);
            }
        }
        while let Some(i) = queue.pop() {
            queued[i] = false;
            let c = &self.system.constraints[i];
            let max: i64 = c
                .terms
                .iter()
                .map(|&(x, k)| if k > 0 { k * d.hi[x] } else { k * d.lo[x] })
                .sum();
            if max < c.rhs {
                return false;
            }
            let slack = max - c.rhs;
            for &(x, k) in &c.terms {
                // Lowering this term's contribution by more than `slack`
                // makes the constraint unsatisfiable.
                let changed = if k > 0 {
                    let need = d.hi[x] - slack / k;
                    if need > d.lo[x] {
                        d.lo[x] = need;
                        true
                    } else {
                        false
                    }
                } else {
                    let cap = d.lo[x] + slack / (-k);
                    if cap < d.hi[x] {
                        d.hi[x] = cap;
                        true
                    } else {
                        false
                    }
                };
                if changed {
                    if d.lo[x] > d.hi[x] {
                        return false;
                    }
                    for &j in &self.watch[x] {
                        if j != i && !queued[j] {
                            queued[j] = true;
                            queue.push(j);
                        }
                    }
                }
            }
        }
        true
    }

    fn search(&self, mut d: Domains, budget: &mut Budget) -> Result<Option<Domains>> {
        budget.tick()?;
        if !self.propagate(&mut d, 0..self.system.constraints.len()) {
            return Ok(None);
        }
        self.branch(d, budget)
    }

    fn branch(&self, d: Domains, budget: &mut Budget) -> Result<Option<Domains>> {
        // fail-first: smallest open domain
        let pick = (0..d.lo.len())
            .filter(|&x| d.lo[x] < d.hi[x])
            .min_by_key(|&x| (d.hi[x] - d.lo[x], x));
        let Some(x) = pick else {
            return Ok(Some(d));
        };
        for value in (d.lo[x]..=d.hi[x]).rev() {
            budget.tick()?;
            let mut child = d.clone();
            child.lo[x] = value;
            child.hi[x] = value;
            if !self.propagate(&mut child, self.watch[x].iter().copied()) {
                continue;
            }
            if let Some(found) = self.branch(child, budget)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}
