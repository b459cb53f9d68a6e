//! Instance generators for the hardness constructions, with extraction of
//! source-problem solutions from model witnesses.
//!
//! - 3-Coloring to BAM with `k = 3`,
//! - 3-SAT to BAM with given cares and three alternatives,
//! - 3-SAT to BAM with given cares and `k = 6`,
//! - RXC3 to BAM with given has and a single voter.
//!
//! Generated identifiers use only letters, digits, `_` and `.` so they
//! survive the text formats.

use std::collections::BTreeSet;

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::profile::PreferenceProfile;

/// A generated instance. `has` is set for has-given instances, `cares` for
/// cares-given instances, neither for plain BAM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub profile: PreferenceProfile,
    pub k: usize,
    pub has: Option<Vec<AttrSet>>,
    pub cares: Option<Vec<AttrSet>>,
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || c == ':' || c == '>' || c == '#')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInstance {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl GraphInstance {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !valid_token(v) {
                return Err(BamError::InvalidInput(format!(
                    "bad vertex identifier `{v}`"
                )));
            }
            if !seen.insert(v.as_str()) {
                return Err(BamError::InvalidInput(format!("duplicate vertex `{v}`")));
            }
        }
        let mut pairs = BTreeSet::new();
        let mut degree = vec![0usize; vertices.len()];
        for &(u, w) in &edges {
            if u >= vertices.len() || w >= vertices.len() {
                return Err(BamError::InvalidInput(format!(
                    "edge ({u}, {w}) references an unknown vertex"
                )));
            }
            if u == w {
                return Err(BamError::InvalidInput(format!(
                    "self-loop at `{}`",
                    vertices[u]
                )));
            }
            if !pairs.insert((u.min(w), u.max(w))) {
                return Err(BamError::InvalidInput(format!(
                    "duplicate edge {{{}, {}}}",
                    vertices[u], vertices[w]
                )));
            }
            degree[u] += 1;
            degree[w] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d == 0) {
            return Err(BamError::InvalidInput(format!(
                "vertex `{}` is isolated",
                vertices[v]
            )));
        }
        Ok(Self { vertices, edges })
    }

    /// Vertices in order of first appearance.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let index = |name: &str, vertices: &mut Vec<String>| match vertices
            .iter()
            .position(|v| v == name)
        {
            Some(i) => i,
            None => {
                vertices.push(name.to_string());
                vertices.len() - 1
            }
        };
        let pairs = edges
            .iter()
            .map(|(u, w)| {
                (
                    index(u.as_ref(), &mut vertices),
                    index(w.as_ref(), &mut vertices),
                )
            })
            .collect();
        Self::new(vertices, pairs)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<(String, String)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i.to_string(), j.to_string())))
            .collect();
        Self::from_edges(&edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<(String, String)> = (1..=n)
            .map(|i| (i.to_string(), (i % n + 1).to_string()))
            .collect();
        Self::from_edges(&edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertices.len()
            && self.edges.iter().all(|&(u, w)| colors[u] != colors[w])
    }
}

fn vertex_alt(v: &str) -> String {
    format!("x_{v}")
}

/// 3-Coloring to BAM at `k = 3`. Every order has length two.
pub fn coloring_to_bam(g: &GraphInstance) -> ReductionInstance {
    let mut alternatives: Vec<String> = g.vertices.iter().map(|v| vertex_alt(v)).collect();
    for group in ["d1", "d2"] {
        alternatives.extend((1..=3).map(|j| format!("{group}_{j}")));
    }
    alternatives.push("d3".to_string());

    let mut voters: Vec<(String, Vec<String>)> = Vec::new();
    let pair = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
    for v in &g.vertices {
        for j in 1..=3 {
            voters.push((
                format!("u_{v}_{j}"),
                pair(&format!("d2_{j}"), &vertex_alt(v)),
            ));
        }
    }
    for (e, &(u, w)) in g.edges.iter().enumerate() {
        let (u, w) = (vertex_alt(&g.vertices[u]), vertex_alt(&g.vertices[w]));
        voters.push((format!("e{}_a", e + 1), pair(&u, &w)));
        voters.push((format!("e{}_b", e + 1), pair(&w, &u)));
    }
    let mut dummy = |group: usize, orders: Vec<(String, String)>| {
        for (i, (a, b)) in orders.into_iter().enumerate() {
            voters.push((format!("V{group}_{}", i + 1), pair(&a, &b)));
        }
    };
    let within = |g: &str| -> Vec<(String, String)> {
        [(1, 2), (1, 3), (2, 3)]
            .iter()
            .flat_map(|&(i, j)| {
                let (a, b) = (format!("{g}_{i}"), format!("{g}_{j}"));
                [(a.clone(), b.clone()), (b, a)]
            })
            .collect()
    };
    dummy(1, within("d1"));
    dummy(
        2,
        (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (format!("d2_{i}"), format!("d1_{j}"))))
            .collect(),
    );
    dummy(3, within("d2"));
    dummy(
        4,
        (1..=3)
            .map(|j| ("d3".to_string(), format!("d2_{j}")))
            .collect(),
    );

    let profile =
        PreferenceProfile::new(&alternatives, &voters).expect("generated profile is well formed");
    ReductionInstance {
        profile,
        k: 3,
        has: None,
        cares: None,
    }
}

/// Color `z ∈ {1,2,3}` of each vertex, read from `has(x_u) = {z}`.
pub fn extract_coloring(
    g: &GraphInstance,
    inst: &ReductionInstance,
    witness: &AttributeModel,
) -> Result<Vec<usize>> {
    let colors = g
        .vertices
        .iter()
        .map(|v| {
            let alt = inst.profile.lookup_alternative(&vertex_alt(v))?;
            let has = witness.has(alt);
            match (has.len(), has.max_index()) {
                (1, Some(z)) => Ok(z + 1),
                _ => Err(BamError::Extraction(format!(
                    "vertex `{v}` has {} attributes, expected exactly one",
                    has.len()
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if !g.is_proper_coloring(&colors) {
        return Err(BamError::Extraction(
            "extracted coloring is not proper".into(),
        ));
    }
    Ok(colors)
}

/// 3-CNF over variables `1..=num_vars`; literals are `±i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl CnfInstance {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(BamError::InvalidInput(format!(
                        "clause {} has literal {lit} outside ±1..{num_vars}",
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Variable count taken as the largest variable mentioned.
    pub fn from_clauses(clauses: Vec<[i32; 3]>) -> Result<Self> {
        let n = clauses
            .iter()
            .flatten()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        Self::new(n, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars
            && self.clauses.iter().all(|c| {
                c.iter()
                    .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
            })
    }
}

/// `α_x` and `α_¬x` for variable `i` (1-based).
fn literal_attr(lit: i32) -> usize {
    let i = lit.unsigned_abs() as usize - 1;
    2 * i + usize::from(lit < 0)
}

/// 3-SAT to BAM with given cares over alternatives `d0`, `d2`, `c`.
pub fn sat_to_cares_m3(f: &CnfInstance) -> ReductionInstance {
    let alternatives = ["d0", "d2", "c"];
    let mut voters: Vec<(String, Vec<&str>)> = Vec::new();
    let mut cares = Vec::new();
    for i in 1..=f.num_vars as i32 {
        voters.push((format!("v_x{i}"), vec!["d2", "c", "d0"]));
        cares.push([literal_attr(i), literal_attr(-i)].into_iter().collect());
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        voters.push((format!("v_C{}", j + 1), vec!["c", "d0"]));
        cares.push(clause.iter().map(|&l| literal_attr(l)).collect());
    }
    let voters: Vec<(String, Vec<String>)> = voters
        .into_iter()
        .map(|(v, o)| (v, o.into_iter().map(String::from).collect()))
        .collect();
    let alternatives: Vec<String> = alternatives.iter().map(|s| s.to_string()).collect();
    ReductionInstance {
        profile: PreferenceProfile::new(&alternatives, &voters)
            .expect("generated profile is well formed"),
        k: 2 * f.num_vars,
        has: None,
        cares: Some(cares),
    }
}

/// `ν(x) = 1` iff `α_x ∈ has(c)`.
pub fn extract_assignment_m3(
    f: &CnfInstance,
    inst: &ReductionInstance,
    witness: &AttributeModel,
) -> Result<Vec<bool>> {
    let c = inst.profile.lookup_alternative("c")?;
    let nu: Vec<bool> = (1..=f.num_vars as i32)
        .map(|i| witness.has(c).contains(literal_attr(i)))
        .collect();
    check_assignment(f, nu)
}

fn check_assignment(f: &CnfInstance, nu: Vec<bool>) -> Result<Vec<bool>> {
    if f.satisfied_by(&nu) {
        Ok(nu)
    } else {
        Err(BamError::Extraction(
            "extracted assignment does not satisfy the formula".into(),
        ))
    }
}

/// Attribute indices of the six-attribute construction.
pub mod k6 {
    pub const NUM: [usize; 3] = [0, 1, 2];
    pub const VAR: usize = 3;
    pub const T: usize = 4;
    pub const F: usize = 5;
}

/// 3-SAT to BAM with given cares at `k = 6`.
pub fn sat_to_cares_k6(f: &CnfInstance) -> ReductionInstance {
    use k6::*;
    let var_alt = |i: usize| format!("a_x{i}");
    let clause_alt = |j: usize| format!("a_C{j}");
    let mut alternatives: Vec<String> = (1..=f.num_vars).map(var_alt).collect();
    alternatives.extend((1..=f.clauses.len()).map(clause_alt));
    alternatives.extend((1..=4).map(|i| format!("d{i}")));

    let nums: AttrSet = NUM.into_iter().collect();
    let mut voters: Vec<(String, Vec<String>)> = Vec::new();
    let mut cares: Vec<AttrSet> = Vec::new();
    let mut add = |name: String, order: &[&str], set: AttrSet| {
        voters.push((name, order.iter().map(|s| s.to_string()).collect()));
        cares.push(set);
    };
    for i in 1..=f.num_vars {
        let ax = var_alt(i);
        add(
            format!("v_x{i}_1"),
            &[&ax, "d1"],
            [VAR].into_iter().collect(),
        );
        add(
            format!("v_x{i}_2"),
            &["d1", &ax, "d2"],
            [T, F].into_iter().collect(),
        );
        add(format!("v_x{i}_3"), &["d1", "d2", "d3", &ax], nums.clone());
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let ac = clause_alt(j + 1);
        add(
            format!("v_C{}_Var", j + 1),
            &["d2", &ac],
            [VAR].into_iter().collect(),
        );
        add(format!("v_C{}_Num", j + 1), &[&ac, "d4"], nums.clone());
        for (i, &lit) in clause.iter().enumerate() {
            let ax = var_alt(lit.unsigned_abs() as usize);
            let truth = if lit > 0 { T } else { F };
            add(
                format!("v_C{}_{}", j + 1, i + 1),
                &[&ax, &ac],
                [NUM[i], VAR, truth].into_iter().collect(),
            );
        }
    }
    ReductionInstance {
        profile: PreferenceProfile::new(&alternatives, &voters)
            .expect("generated profile is well formed"),
        k: 6,
        has: None,
        cares: Some(cares),
    }
}

/// `ν(x) = 1` iff `α_T ∈ has(a_x)`.
pub fn extract_assignment_k6(
    f: &CnfInstance,
    inst: &ReductionInstance,
    witness: &AttributeModel,
) -> Result<Vec<bool>> {
    let nu = (1..=f.num_vars)
        .map(|i| {
            let a = inst.profile.lookup_alternative(&format!("a_x{i}"))?;
            Ok(witness.has(a).contains(k6::T))
        })
        .collect::<Result<Vec<_>>>()?;
    check_assignment(f, nu)
}

/// RXC3: elements `0..3q`, `3q` subsets of size three, every element in
/// exactly three subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rxc3Instance {
    q: usize,
    subsets: Vec<[usize; 3]>,
}

impl Rxc3Instance {
    pub fn new(q: usize, subsets: Vec<[usize; 3]>) -> Result<Self> {
        if q == 0 {
            return Err(BamError::InvalidInput("q must be positive".into()));
        }
        if subsets.len() != 3 * q {
            return Err(BamError::InvalidInput(format!(
                "expected {} subsets, got {}",
                3 * q,
                subsets.len()
            )));
        }
        let mut count = vec![0usize; 3 * q];
        for (j, s) in subsets.iter().enumerate() {
            if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
                return Err(BamError::InvalidInput(format!(
                    "subset {} repeats an element",
                    j + 1
                )));
            }
            for &x in s {
                if x >= 3 * q {
                    return Err(BamError::InvalidInput(format!(
                        "subset {} has element {} outside 1..{}",
                        j + 1,
                        x + 1,
                        3 * q
                    )));
                }
                count[x] += 1;
            }
        }
        if let Some(x) = count.iter().position(|&c| c != 3) {
            return Err(BamError::InvalidInput(format!(
                "element {} occurs in {} subsets, expected 3",
                x + 1,
                count[x]
            )));
        }
        Ok(Self { q, subsets })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn subsets(&self) -> &[[usize; 3]] {
        &self.subsets
    }

    pub fn is_exact_cover(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![0usize; 3 * self.q];
        for &j in chosen {
            match self.subsets.get(j) {
                Some(s) => s.iter().for_each(|&x| hit[x] += 1),
                None => return false,
            }
        }
        hit.iter().all(|&h| h == 1)
    }
}

/// Private dummy attributes of element `i` (1-based).
fn element_dummies(q: usize, i: usize) -> usize {
    if i < q {
        i - 1
    } else {
        i
    }
}

/// RXC3 to BAM with given has and one voter.
pub fn rxc3_to_has(r: &Rxc3Instance) -> ReductionInstance {
    let q = r.q;
    let n = 3 * q;
    let mut next = n;
    let mut element_has = vec![AttrSet::new(); n];
    for (j, s) in r.subsets.iter().enumerate() {
        for &x in s {
            element_has[x].insert(j);
        }
    }
    for (x, set) in element_has.iter_mut().enumerate() {
        let d = element_dummies(q, x + 1);
        set.union_with(&AttrSet::range(next, d));
        next += d;
    }
    let d2 = AttrSet::range(next, n + 2);
    let k = next + n + 2;

    let mut alternatives: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    alternatives.extend(["d2", "d1", "d0"].map(String::from));
    let mut has = element_has;
    has.push(d2);
    has.push(AttrSet::prefix(n));
    has.push(AttrSet::new());

    let mut order = vec!["d2".to_string()];
    order.extend((q..=n).rev().map(|i| format!("a{i}")));
    order.push("d1".into());
    order.extend((1..q).rev().map(|i| format!("a{i}")));
    order.push("d0".into());
    let profile = PreferenceProfile::new(&alternatives, &[("v".to_string(), order)])
        .expect("generated profile is well formed");
    ReductionInstance {
        profile,
        k,
        has: Some(has),
        cares: None,
    }
}

/// Subsets `S_j` with `α_j ∈ cares(v)`, as 0-based indices.
pub fn extract_cover(r: &Rxc3Instance, witness: &AttributeModel) -> Result<Vec<usize>> {
    let cares = witness.cares(0);
    let chosen: Vec<usize> = (0..3 * r.q).filter(|&j| cares.contains(j)).collect();
    if !r.is_exact_cover(&chosen) {
        return Err(BamError::Extraction(format!(
            "chosen subsets {:?} are not an exact cover",
            chosen.iter().map(|j| j + 1).collect::<Vec<_>>()
        )));
    }
    Ok(chosen)
}
