//! Source-problem text inputs for `generate`.
//!
//! - edge list: one `u w` pair per line,
//! - clause list: one `±i ±j ±k` clause per line; a trailing `0`, `c`
//!   comment lines and a `p cnf` header are accepted,
//! - RXC3 set list: a `q: <int>` header, then one `i j k` subset per line
//!   with 1-based elements.
//!
//! `#` starts a comment line in all three.

use bam_core::reductions::{CnfInstance, GraphInstance, Rxc3Instance};
use bam_core::BamError;

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edges(text: &str) -> Result<GraphInstance, BamError> {
    let mut edges = Vec::new();
    for (no, line) in lines(text) {
        let ends: Vec<&str> = line.split_whitespace().collect();
        let [u, w] = ends[..] else {
            return Err(BamError::parse(no, format!("expected `u w`, got `{line}`")));
        };
        edges.push((u.to_string(), w.to_string()));
    }
    GraphInstance::from_edges(&edges)
}

pub fn parse_clauses(text: &str) -> Result<CnfInstance, BamError> {
    let mut declared = None;
    let mut clauses = Vec::new();
    for (no, line) in lines(text) {
        if line.starts_with('c') {
            continue;
        }
        if let Some(header) = line.strip_prefix("p cnf") {
            let vars = header
                .split_whitespace()
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| BamError::parse(no, "bad `p cnf` header"))?;
            declared = Some(vars);
            continue;
        }
        let mut lits = Vec::new();
        for token in line.split_whitespace() {
            let lit: i32 = token
                .parse()
                .map_err(|_| BamError::parse(no, format!("bad literal `{token}`")))?;
            lits.push(lit);
        }
        if lits.last() == Some(&0) {
            lits.pop();
        }
        let [a, b, c] = lits[..] else {
            return Err(BamError::parse(
                no,
                format!("expected three literals, got {}", lits.len()),
            ));
        };
        if a == 0 || b == 0 || c == 0 {
            return Err(BamError::parse(no, "literal 0 inside a clause"));
        }
        clauses.push([a, b, c]);
    }
    match declared {
        Some(vars) => CnfInstance::new(vars, clauses),
        None => CnfInstance::from_clauses(clauses),
    }
}

pub fn parse_sets(text: &str) -> Result<Rxc3Instance, BamError> {
    let mut q = None;
    let mut subsets = Vec::new();
    for (no, line) in lines(text) {
        if let Some(value) = line.strip_prefix("q:") {
            q = Some(
                value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| BamError::parse(no, format!("bad q `{}`", value.trim())))?,
            );
            continue;
        }
        let mut elems = Vec::new();
        for token in line.split_whitespace() {
            let x: usize = token
                .parse()
                .map_err(|_| BamError::parse(no, format!("bad element `{token}`")))?;
            if x == 0 {
                return Err(BamError::parse(no, "elements are numbered from 1"));
            }
            elems.push(x - 1);
        }
        let [a, b, c] = elems[..] else {
            return Err(BamError::parse(
                no,
                format!("expected three elements, got {}", elems.len()),
            ));
        };
        subsets.push([a, b, c]);
    }
    let q = q.ok_or_else(|| BamError::parse(0, "missing `q:` header"))?;
    Rxc3Instance::new(q, subsets)
}
