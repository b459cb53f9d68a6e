//! Line-based text formats.
//!
//! Profile:
//!
//! ```text
//! # comment
//! alternatives: a b c
//! voter v: a > b > c
//! voter w:
//! ```
//!
//! Model (attributes 1-based, omitted lines mean the empty set):
//!
//! ```text
//! k: 3
//! has a: 1 2
//! cares v: 1
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::attrs::AttrSet;
use crate::error::{BamError, Result};
use crate::model::AttributeModel;
use crate::profile::PreferenceProfile;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && !s.contains(|c: char| c.is_whitespace() || c == ':' || c == '>' || c == '#')
}

/// Splits `head rest: tail` into (`rest`, `tail`) for a given keyword.
fn keyed<'a>(line: &'a str, keyword: &str) -> Option<(&'a str, &'a str)> {
    let rest = line.strip_prefix(keyword)?;
    if !rest.starts_with(char::is_whitespace) {
        return None;
    }
    let (id, tail) = rest.split_once(':')?;
    Some((id.trim(), tail.trim()))
}

pub fn parse_profile(text: &str) -> Result<PreferenceProfile> {
    let mut alternatives: Option<Vec<String>> = None;
    let mut voters: Vec<String> = Vec::new();
    let mut orders: Vec<Vec<usize>> = Vec::new();
    let mut voter_seen = HashSet::new();
    for (no, line) in content_lines(text) {
        if let Some(list) = line.strip_prefix("alternatives:") {
            if alternatives.is_some() {
                return Err(BamError::parse(no, "second `alternatives:` line"));
            }
            let ids: Vec<String> = list.split_whitespace().map(String::from).collect();
            let mut seen = HashSet::new();
            for id in &ids {
                if !valid_id(id) {
                    return Err(BamError::parse(
                        no,
                        format!("bad alternative identifier `{id}`"),
                    ));
                }
                if !seen.insert(id.as_str()) {
                    return Err(BamError::parse(no, format!("duplicate alternative `{id}`")));
                }
            }
            alternatives = Some(ids);
        } else if let Some((id, tail)) = keyed(line, "voter") {
            let Some(alts) = &alternatives else {
                return Err(BamError::parse(
                    no,
                    "voter line before the `alternatives:` line",
                ));
            };
            if !valid_id(id) {
                return Err(BamError::parse(no, format!("bad voter identifier `{id}`")));
            }
            if !voter_seen.insert(id.to_string()) {
                return Err(BamError::parse(no, format!("duplicate voter `{id}`")));
            }
            let mut order = Vec::new();
            if !tail.is_empty() {
                for name in tail.split('>').map(str::trim) {
                    let Some(a) = alts.iter().position(|x| x == name) else {
                        return Err(BamError::parse(no, format!("unknown alternative `{name}`")));
                    };
                    if order.contains(&a) {
                        return Err(BamError::parse(
                            no,
                            format!("`{name}` appears twice in the order"),
                        ));
                    }
                    order.push(a);
                }
            }
            voters.push(id.to_string());
            orders.push(order);
        } else {
            return Err(BamError::parse(no, format!("unrecognized line `{line}`")));
        }
    }
    let alternatives =
        alternatives.ok_or_else(|| BamError::parse(0, "missing `alternatives:` line"))?;
    PreferenceProfile::from_indices(alternatives, voters, orders)
}

pub fn write_profile(profile: &PreferenceProfile) -> String {
    let mut out = String::from("alternatives:");
    for a in profile.alternatives() {
        out.push(' ');
        out.push_str(a);
    }
    out.push('\n');
    for v in 0..profile.num_voters() {
        let names: Vec<&str> = profile
            .order(v)
            .iter()
            .map(|&a| profile.alternative_name(a))
            .collect();
        if names.is_empty() {
            let _ = writeln!(out, "voter {}:", profile.voter_name(v));
        } else {
            let _ = writeln!(
                out,
                "voter {}: {}",
                profile.voter_name(v),
                names.join(" > ")
            );
        }
    }
    out
}

/// A parsed model file. Sets for undeclared entries are empty; the
/// `*_declared` flags tell a cares-only or has-only file apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelText {
    pub k: usize,
    pub has: Vec<AttrSet>,
    pub cares: Vec<AttrSet>,
    pub has_declared: Vec<bool>,
    pub cares_declared: Vec<bool>,
}

impl ModelText {
    pub fn any_has(&self) -> bool {
        self.has_declared.iter().any(|&d| d)
    }

    pub fn any_cares(&self) -> bool {
        self.cares_declared.iter().any(|&d| d)
    }

    pub fn into_model(self) -> AttributeModel {
        AttributeModel::new(self.k, self.has, self.cares).expect("indices checked while parsing")
    }
}

pub fn parse_model(text: &str, profile: &PreferenceProfile) -> Result<ModelText> {
    let mut k: Option<usize> = None;
    let mut has = vec![AttrSet::new(); profile.num_alternatives()];
    let mut cares = vec![AttrSet::new(); profile.num_voters()];
    let mut has_declared = vec![false; profile.num_alternatives()];
    let mut cares_declared = vec![false; profile.num_voters()];
    for (no, line) in content_lines(text) {
        if let Some(value) = line.strip_prefix("k:") {
            if k.is_some() {
                return Err(BamError::parse(no, "second `k:` line"));
            }
            k = Some(value.trim().parse().map_err(|_| {
                BamError::parse(no, format!("bad attribute count `{}`", value.trim()))
            })?);
            continue;
        }
        let (is_has, id, tail) = if let Some((id, tail)) = keyed(line, "has") {
            (true, id, tail)
        } else if let Some((id, tail)) = keyed(line, "cares") {
            (false, id, tail)
        } else {
            return Err(BamError::parse(no, format!("unrecognized line `{line}`")));
        };
        let Some(k) = k else {
            return Err(BamError::parse(no, "`k:` must come before has/cares lines"));
        };
        let (slot, declared) = if is_has {
            let a = profile
                .alternative_index(id)
                .ok_or_else(|| BamError::parse(no, format!("unknown alternative `{id}`")))?;
            (&mut has[a], &mut has_declared[a])
        } else {
            let v = profile
                .voter_index(id)
                .ok_or_else(|| BamError::parse(no, format!("unknown voter `{id}`")))?;
            (&mut cares[v], &mut cares_declared[v])
        };
        if *declared {
            return Err(BamError::parse(no, format!("second line for `{id}`")));
        }
        *declared = true;
        for token in tail.split_whitespace() {
            let i: usize = token
                .parse()
                .map_err(|_| BamError::parse(no, format!("bad attribute index `{token}`")))?;
            if i == 0 || i > k {
                return Err(BamError::parse(no, format!("attribute {i} outside 1..{k}")));
            }
            slot.insert(i - 1);
        }
    }
    let k = k.ok_or_else(|| BamError::parse(0, "missing `k:` line"))?;
    Ok(ModelText {
        k,
        has,
        cares,
        has_declared,
        cares_declared,
    })
}

fn write_set(out: &mut String, keyword: &str, id: &str, set: &AttrSet) {
    let _ = write!(out, "{keyword} {id}:");
    for i in set.iter() {
        let _ = write!(out, " {}", i + 1);
    }
    out.push('\n');
}

/// Canonical form: every alternative and voter gets a line.
pub fn write_model(profile: &PreferenceProfile, model: &AttributeModel) -> String {
    write_model_parts(
        profile,
        model.k(),
        Some(model.has_sets()),
        Some(model.cares_sets()),
    )
}

/// Writes only the given halves, e.g. a cares-only file for a cares-given
/// instance.
pub fn write_model_parts(
    profile: &PreferenceProfile,
    k: usize,
    has: Option<&[AttrSet]>,
    cares: Option<&[AttrSet]>,
) -> String {
    let mut out = format!("k: {k}\n");
    if let Some(has) = has {
        for (a, set) in has.iter().enumerate() {
            write_set(&mut out, "has", profile.alternative_name(a), set);
        }
    }
    if let Some(cares) = cares {
        for (v, set) in cares.iter().enumerate() {
            write_set(&mut out, "cares", profile.voter_name(v), set);
        }
    }
    out
}
