//! Models with at most two attributes.
//!
//! With `k = 2` every order has length at most 3 and the has-sets of each
//! alternative are two Booleans `h_{a,1}`, `h_{a,2}`. The constraints on them
//! are all binary clauses, decided through the implication graph.

use std::fmt::Write as _;

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::outcome::{SearchStats, SolveOutcome};
use crate::profile::PreferenceProfile;
use crate::special::uniform_length_solve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Self {
            positive: !self.positive,
            ..self
        }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

pub type Clause = (Literal, Literal);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwoSatInstance {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl TwoSatInstance {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn add(&mut self, a: Literal, b: Literal) {
        assert!(
            a.var < self.num_vars && b.var < self.num_vars,
            "literal out of range"
        );
        self.clauses.push((a, b));
    }

    pub fn add_unit(&mut self, a: Literal) {
        self.add(a, a);
    }

    /// DIMACS text with 1-based variables.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for (a, b) in &self.clauses {
            let lit = |l: &Literal| {
                let v = l.var as i64 + 1;
                if l.positive {
                    v
                } else {
                    -v
                }
            };
            let _ = writeln!(out, "{} {} 0", lit(a), lit(b));
        }
        out
    }
}

/// Variable of `h_{a,i}` for `i ∈ {1, 2}`.
pub fn h(alt: usize, i: usize) -> usize {
    debug_assert!(i == 1 || i == 2);
    2 * alt + i - 1
}

pub fn encode_k2(profile: &PreferenceProfile) -> Result<TwoSatInstance> {
    let mut inst = TwoSatInstance::new(2 * profile.num_alternatives());
    for (v, order) in profile.orders().iter().enumerate() {
        match order.len() {
            0 | 1 => {}
            2 => {
                let (d, e) = (order[0], order[1]);
                inst.add(Literal::pos(h(d, 1)), Literal::pos(h(d, 2)));
                inst.add(Literal::neg(h(e, 1)), Literal::neg(h(e, 2)));
                inst.add(Literal::pos(h(d, 1)), Literal::neg(h(e, 2)));
                inst.add(Literal::pos(h(d, 2)), Literal::neg(h(e, 1)));
            }
            3 => {
                let (a, b, c) = (order[0], order[1], order[2]);
                inst.add_unit(Literal::pos(h(a, 1)));
                inst.add_unit(Literal::pos(h(a, 2)));
                inst.add(Literal::neg(h(b, 1)), Literal::neg(h(b, 2)));
                inst.add(Literal::pos(h(b, 1)), Literal::pos(h(b, 2)));
                inst.add_unit(Literal::neg(h(c, 1)));
                inst.add_unit(Literal::neg(h(c, 2)));
            }
            len => {
                return Err(BamError::Precondition(format!(
                    "voter `{}` ranks {len} alternatives; the encoding needs at most 3",
                    profile.voter_name(v)
                )))
            }
        }
    }
    Ok(inst)
}

/// Satisfiability through strongly connected components of the implication
/// graph. Returns an assignment when satisfiable; with no clauses it is all
/// false.
pub fn twosat_decide(inst: &TwoSatInstance) -> Option<Vec<bool>> {
    let nodes = 2 * inst.num_vars;
    let mut graph = vec![Vec::new(); nodes];
    for &(a, b) in &inst.clauses {
        graph[a.negated().node()].push(b.node());
        graph[b.negated().node()].push(a.node());
    }
    let comp = tarjan(&graph);
    // Tarjan numbers components in reverse topological order, so a literal
    // is true when its component comes before its negation's.
    (0..inst.num_vars)
        .map(|x| {
            let (p, n) = (comp[2 * x], comp[2 * x + 1]);
            (p != n).then_some(p < n)
        })
        .collect()
}

fn tarjan(graph: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // iterative DFS: (node, next edge position)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    // Roots in reverse so that, with no edges, every negative literal node
    // closes its component before the positive one.
    for root in (0..n).rev() {
        if index[root] != UNSEEN {
            continue;
        }
        frames.push((root, 0));
        while let Some(&mut (u, ref mut pos)) = frames.last_mut() {
            if *pos == 0 && index[u] == UNSEEN {
                index[u] = next_index;
                low[u] = next_index;
                next_index += 1;
                stack.push(u);
                on_stack[u] = true;
            }
            if let Some(&w) = graph[u].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().expect("component root on stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == u {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Decides `k ∈ {0, 1, 2}`.
pub fn solve_k_le_2(profile: &PreferenceProfile, k: usize) -> Result<SolveOutcome> {
    let stats = SearchStats::default();
    let longest = profile.max_order_len();
    match k {
        0 => {
            if longest >= 2 {
                return Ok(SolveOutcome::no_because("order length exceeds k+1", stats));
            }
            let model = AttributeModel::empty(0, profile.num_alternatives(), profile.num_voters());
            Ok(SolveOutcome::yes(model, stats))
        }
        1 => {
            if longest >= 3 {
                return Ok(SolveOutcome::no_because("order length exceeds k+1", stats));
            }
            uniform_length_solve(profile, 1)
        }
        2 => {
            if longest >= 4 {
                return Ok(SolveOutcome::no_because("order length exceeds k+1", stats));
            }
            let inst = encode_k2(profile)?;
            let Some(assignment) = twosat_decide(&inst) else {
                return Ok(SolveOutcome::no_because(
                    "the 2-SAT encoding is unsatisfiable",
                    stats,
                ));
            };
            let has: Vec<AttrSet> = (0..profile.num_alternatives())
                .map(|c| {
                    let mut s = AttrSet::new();
                    for i in [1, 2] {
                        if assignment[h(c, i)] {
                            s.insert(i - 1);
                        }
                    }
                    s
                })
                .collect();
            let cares = profile
                .orders()
                .iter()
                .map(|o| {
                    if o.len() >= 2 {
                        has[o[0]].clone()
                    } else {
                        AttrSet::new()
                    }
                })
                .collect();
            let model = AttributeModel::new(2, has, cares)?;
            Ok(SolveOutcome::yes(model, stats))
        }
        _ => Err(BamError::Precondition(format!(
            "the two-attribute solver handles k <= 2, got {k}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::verify;

    fn lits(inst: &TwoSatInstance) -> Vec<(i64, i64)> {
        let f = |l: Literal| {
            if l.positive {
                l.var as i64 + 1
            } else {
                -(l.var as i64 + 1)
            }
        };
        inst.clauses.iter().map(|&(a, b)| (f(a), f(b))).collect()
    }

    #[test]
    fn encode_length_three() {
        let p = PreferenceProfile::from_orders(&[&["a", "b", "c"]]).unwrap();
        let inst = encode_k2(&p).unwrap();
        // h_{a,1}=1 h_{a,2}=2 h_{b,1}=3 h_{b,2}=4 h_{c,1}=5 h_{c,2}=6
        assert_eq!(
            lits(&inst),
            vec![(1, 1), (2, 2), (-3, -4), (3, 4), (-5, -5), (-6, -6)]
        );
    }

    #[test]
    fn encode_length_two() {
        let p = PreferenceProfile::from_orders(&[&["d", "e"]]).unwrap();
        let inst = encode_k2(&p).unwrap();
        assert_eq!(lits(&inst), vec![(1, 2), (-3, -4), (1, -4), (2, -3)]);
    }

    #[test]
    fn encode_skips_short_orders_and_rejects_long_ones() {
        let p = PreferenceProfile::new(&["a", "b"], &[("v", vec!["a"]), ("w", vec![])]).unwrap();
        assert!(encode_k2(&p).unwrap().clauses.is_empty());
        let long = PreferenceProfile::from_orders(&[&["a", "b", "c", "d"]]).unwrap();
        assert!(matches!(encode_k2(&long), Err(BamError::Precondition(_))));
    }

    #[test]
    fn decide_contradiction_and_empty() {
        let mut inst = TwoSatInstance::new(1);
        inst.add_unit(Literal::pos(0));
        inst.add_unit(Literal::neg(0));
        assert_eq!(twosat_decide(&inst), None);
        assert_eq!(twosat_decide(&TwoSatInstance::new(3)), Some(vec![false; 3]));
    }

    #[test]
    fn decide_assignment_satisfies_clauses() {
        let mut inst = TwoSatInstance::new(3);
        inst.add(Literal::pos(0), Literal::pos(1));
        inst.add(Literal::neg(0), Literal::pos(2));
        inst.add(Literal::neg(1), Literal::neg(2));
        inst.add_unit(Literal::pos(2));
        let a = twosat_decide(&inst).unwrap();
        for (x, y) in &inst.clauses {
            assert!(a[x.var] == x.positive || a[y.var] == y.positive);
        }
    }

    #[test]
    fn cycle_is_unsatisfiable() {
        let p =
            PreferenceProfile::from_orders(&[&["c1", "c2"], &["c2", "c3"], &["c3", "c1"]]).unwrap();
        assert_eq!(twosat_decide(&encode_k2(&p).unwrap()), None);
        assert!(!solve_k_le_2(&p, 2).unwrap().is_yes());
    }

    #[test]
    fn reversed_pair_at_two() {
        let p = PreferenceProfile::from_orders(&[&["a", "b"], &["b", "a"]]).unwrap();
        let out = solve_k_le_2(&p, 2).unwrap();
        assert!(verify(&p, &out.witness.unwrap()).unwrap().holds());
        assert!(!solve_k_le_2(&p, 1).unwrap().is_yes());
    }

    #[test]
    fn length_rules() {
        let p = PreferenceProfile::from_orders(&[&["a", "b", "c", "d"]]).unwrap();
        let out = solve_k_le_2(&p, 2).unwrap();
        assert_eq!(out.reason.as_deref(), Some("order length exceeds k+1"));
        let pair = PreferenceProfile::from_orders(&[&["a", "b"]]).unwrap();
        assert!(!solve_k_le_2(&pair, 0).unwrap().is_yes());
        assert!(solve_k_le_2(&pair, 1).unwrap().is_yes());
        assert!(matches!(
            solve_k_le_2(&pair, 3),
            Err(BamError::Precondition(_))
        ));
    }
}
