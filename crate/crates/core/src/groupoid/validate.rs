use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::GroupoidJson;
use crate::error::{Error, Result};

/// A single failed groupoid axiom, naming the morphisms involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingComposite { g: String, f: String },
    ConflictingComposite { g: String, f: String },
    NonComposablePair { g: String, f: String },
    CompositeEndpoints { g: String, f: String, composite: String },
    MissingIdentity { object: String },
    IdentityEndpoints { object: String, morphism: String },
    IdentityLaw { object: String, morphism: String },
    MissingInverse { morphism: String },
    InverseEndpoints { morphism: String, inverse: String },
    InverseLaw { morphism: String, inverse: String },
    NonAssociative { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingComposite { g, f } => write!(out, "missing composite {g}∘{f}"),
            Violation::ConflictingComposite { g, f } => write!(out, "conflicting entries for {g}∘{f}"),
            Violation::NonComposablePair { g, f } => write!(out, "composite {g}∘{f} given for a non-composable pair"),
            Violation::CompositeEndpoints { g, f, composite } => {
                write!(out, "composite {g}∘{f} = {composite} has wrong endpoints")
            }
            Violation::MissingIdentity { object } => write!(out, "missing identity at {object}"),
            Violation::IdentityEndpoints { object, morphism } => {
                write!(out, "identity {morphism} of {object} is not a loop at {object}")
            }
            Violation::IdentityLaw { object, morphism } => {
                write!(out, "identity law fails for id_{object} against {morphism}")
            }
            Violation::MissingInverse { morphism } => write!(out, "missing inverse for {morphism}"),
            Violation::InverseEndpoints { morphism, inverse } => {
                write!(out, "inverse {inverse} of {morphism} has wrong endpoints")
            }
            Violation::InverseLaw { morphism, inverse } => write!(out, "{inverse} is not inverse to {morphism}"),
            Violation::NonAssociative { h, g, f } => write!(out, "({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(out, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(out, "{}", parts.join("; "))
    }
}

/// Checks the groupoid axioms on a wire-form table.
///
/// Unknown or duplicated identifiers are a structural error (`Err`); a
/// well-formed table that breaks an axiom yields `Ok` with violations.
pub fn validate_groupoid(raw: &GroupoidJson) -> Result<ValidationReport> {
    let mut obj: HashMap<&str, usize> = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj.insert(o, i).is_some() {
            return Err(Error::Structural(format!("duplicate object identifier `{o}`")));
        }
    }
    let object = |name: &str| obj.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_owned()));

    let mut mor: HashMap<&str, usize> = HashMap::new();
    let mut ends = Vec::with_capacity(raw.morphisms.len());
    for (i, m) in raw.morphisms.iter().enumerate() {
        if mor.insert(&m.id, i).is_some() {
            return Err(Error::Structural(format!("duplicate morphism identifier `{}`", m.id)));
        }
        ends.push((object(&m.src)?, object(&m.dst)?));
    }
    let morphism = |name: &str| {
        mor.get(name)
            .copied()
            .ok_or_else(|| Error::Structural(format!("unknown morphism `{name}`")))
    };
    let name = |i: usize| raw.morphisms[i].id.clone();
    let obj_name = |x: usize| raw.objects[x].clone();

    let mut violations = Vec::new();

    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for [g, f, gf] in &raw.compose {
        let (g, f, gf) = (morphism(g)?, morphism(f)?, morphism(gf)?);
        if let Some(prev) = table.insert((g, f), gf) {
            if prev != gf {
                violations.push(Violation::ConflictingComposite { g: name(g), f: name(f) });
            }
        }
    }
    let mut pairs: Vec<_> = table.iter().map(|(&k, &v)| (k, v)).collect();
    pairs.sort_unstable();
    for ((g, f), gf) in pairs {
        if ends[f].1 != ends[g].0 {
            violations.push(Violation::NonComposablePair { g: name(g), f: name(f) });
        } else if ends[gf] != (ends[f].0, ends[g].1) {
            violations.push(Violation::CompositeEndpoints { g: name(g), f: name(f), composite: name(gf) });
        }
    }
    for f in 0..ends.len() {
        for g in 0..ends.len() {
            if ends[f].1 == ends[g].0 && !table.contains_key(&(g, f)) {
                violations.push(Violation::MissingComposite { g: name(g), f: name(f) });
            }
        }
    }
    let comp = |g: usize, f: usize| table.get(&(g, f)).copied();

    let mut identities = vec![None; raw.objects.len()];
    for (o, m) in &raw.identities {
        let (x, e) = (object(o)?, morphism(m)?);
        identities[x] = Some(e);
    }
    for (x, id) in identities.iter().enumerate() {
        let Some(e) = *id else {
            violations.push(Violation::MissingIdentity { object: obj_name(x) });
            continue;
        };
        if ends[e] != (x, x) {
            violations.push(Violation::IdentityEndpoints { object: obj_name(x), morphism: name(e) });
            continue;
        }
        for (f, &(s, t)) in ends.iter().enumerate() {
            if s == x && comp(f, e).is_some_and(|r| r != f) {
                violations.push(Violation::IdentityLaw { object: obj_name(x), morphism: name(f) });
            }
            if t == x && comp(e, f).is_some_and(|r| r != f) {
                violations.push(Violation::IdentityLaw { object: obj_name(x), morphism: name(f) });
            }
        }
    }

    let mut inverses = vec![None; ends.len()];
    for (m, inv) in &raw.inverses {
        inverses[morphism(m)?] = Some(morphism(inv)?);
    }
    for (f, inv) in inverses.iter().enumerate() {
        let Some(g) = *inv else {
            violations.push(Violation::MissingInverse { morphism: name(f) });
            continue;
        };
        if ends[g] != (ends[f].1, ends[f].0) {
            violations.push(Violation::InverseEndpoints { morphism: name(f), inverse: name(g) });
            continue;
        }
        let left = comp(g, f).zip(identities[ends[f].0]).is_some_and(|(a, b)| a == b);
        let right = comp(f, g).zip(identities[ends[f].1]).is_some_and(|(a, b)| a == b);
        if !(left && right) {
            violations.push(Violation::InverseLaw { morphism: name(f), inverse: name(g) });
        }
    }

    // Associativity over all composable triples whose composites are present.
    let n = raw.objects.len();
    let mut by_src = vec![Vec::new(); n];
    for (f, &(s, _)) in ends.iter().enumerate() {
        by_src[s].push(f);
    }
    for f in 0..ends.len() {
        for &g in &by_src[ends[f].1] {
            for &h in &by_src[ends[g].1] {
                let lhs = comp(h, g).and_then(|hg| comp(hg, f));
                let rhs = comp(g, f).and_then(|gf| comp(h, gf));
                if let (Some(a), Some(b)) = (lhs, rhs) {
                    if a != b {
                        violations.push(Violation::NonAssociative { h: name(h), g: name(g), f: name(f) });
                    }
                }
            }
        }
    }

    Ok(ValidationReport { violations })
}
