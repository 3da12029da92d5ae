use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context};
use serde_json::{json, Value};

use gpdkit::algebra::morita_check;
use gpdkit::fixtures::groupoid;
use gpdkit::groupoid::{enumerate_functors, validate_groupoid, FunctorFilter, FunctorJson, GroupoidJson};
use gpdkit::model::mapping_cylinder_factorization;
use gpdkit::nerve::{
    classification_level, classification_size, components_bijective, homology_through, nerve, FiniteCategory, Marking,
    TruncatedSimplicialSet, MAX_CLASSIFICATION_DIMENSION, MAX_CLASSIFICATION_LENGTH,
};
use gpdkit::sample::{enumerate_sample, FiniteSampleCategory};
use gpdkit::{Error, Groupoid, GroupoidFunctor};

use crate::RunConfig;

pub struct Report {
    pub body: Value,
    pub pass: bool,
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))
}

fn read_functor(path: &Path) -> anyhow::Result<GroupoidFunctor> {
    let raw: FunctorJson = serde_json::from_value(read_json(path)?).with_context(|| format!("{} is not a functor file", path.display()))?;
    GroupoidFunctor::from_json(&raw).with_context(|| format!("{} is not a functor", path.display()))
}

/// Violations as data where the error carries them, the message otherwise.
fn failure(e: &Error) -> Value {
    match e {
        Error::Axioms(report) => json!({"message": e.to_string(), "violations": report.violations}),
        Error::FunctorLaws(violations) => json!({"message": e.to_string(), "violations": violations}),
        _ => json!({"message": e.to_string()}),
    }
}

pub fn validate(config: &RunConfig, input: &Path) -> anyhow::Result<Report> {
    let value = read_json(input)?;
    if value.get("source").is_some() {
        let raw: FunctorJson = serde_json::from_value(value).context("not a functor file")?;
        let (valid, detail) = match GroupoidFunctor::from_json(&raw) {
            Ok(f) => (true, json!({"cofibration": f.is_cofibration(), "equivalence": f.is_equivalence()})),
            Err(e) => (false, failure(&e)),
        };
        return Ok(Report { body: json!({"config": config, "kind": "functor", "valid": valid, "detail": detail}), pass: valid });
    }
    let raw: GroupoidJson = serde_json::from_value(value).context("not a groupoid file")?;
    let detail = match validate_groupoid(&raw) {
        Ok(report) if report.is_ok() => {
            let g = Groupoid::from_json(&raw)?;
            json!({"objects": g.object_count(), "morphisms": g.morphism_count(), "connected": g.is_connected()})
        }
        Ok(report) => json!({"message": report.to_string(), "violations": report.violations}),
        Err(e) => failure(&e),
    };
    let valid = detail.get("violations").is_none() && detail.get("message").is_none();
    Ok(Report { body: json!({"config": config, "kind": "groupoid", "valid": valid, "detail": detail}), pass: valid })
}

pub fn factor(config: &RunConfig, input: &Path) -> anyhow::Result<Report> {
    let f = read_functor(input)?;
    let fact = match mapping_cylinder_factorization(&f, config.bound) {
        Ok(fact) => fact,
        Err(e) => return Ok(Report { body: json!({"config": config, "error": failure(&e)}), pass: false }),
    };
    let mut body = json!({"config": config, "factorization": fact.to_json()});
    if let Some(reason) = fact.unverified_reason() {
        body["warning"] = json!(format!("checks unverified: {reason}"));
    }
    Ok(Report { body, pass: !fact.checks().any_fail() })
}

pub fn morita(config: &RunConfig, input: &Path) -> anyhow::Result<Report> {
    let f = read_functor(input)?;
    Ok(match morita_check(&f, config.tolerance, config.seed) {
        Ok(r) => Report { pass: r.k0_iso, body: json!({"config": config, "report": r}) },
        Err(e) => Report { body: json!({"config": config, "error": failure(&e)}), pass: false },
    })
}

fn side(x: &TruncatedSimplicialSet, category: &FiniteCategory) -> Value {
    json!({
        "objects": category.object_count(),
        "arrows": category.arrow_count(),
        "simplices": x.counts(),
        "homology": homology_through(x, 1),
    })
}

fn dot(sample: &FiniteSampleCategory, d: usize) -> anyhow::Result<String> {
    let mut out = String::new();
    for (name, marking) in [("w", Marking::Weak), ("wc", Marking::AcyclicCofibrations)] {
        let category = FiniteCategory::marked(sample, marking)?;
        let x = nerve(&category, d.min(1))?;
        out += &x.to_dot(name, |s| sample.name(s[0]).to_owned(), |s| sample.describe(s[0]));
    }
    Ok(out)
}

/// Level `k` compares the nerve of `k`-chains of cofibrations under acyclic
/// cofibrations with that of all `k`-chains under weak equivalences.
pub fn nerve_suite(config: &RunConfig, names: &[String], levels: usize, budget: u128, dot_path: Option<&Path>) -> anyhow::Result<Report> {
    if levels > MAX_CLASSIFICATION_LENGTH {
        bail!("--levels is at most {MAX_CLASSIFICATION_LENGTH}");
    }
    if !(2..=MAX_CLASSIFICATION_DIMENSION).contains(&config.truncation) {
        bail!("nerve-suite needs 2 ≤ --dim ≤ {MAX_CLASSIFICATION_DIMENSION} to determine H0 and H1");
    }
    let mut names = names.to_vec();
    names.sort();
    names.dedup();
    let groupoids = names.iter().map(|n| Ok((n.clone(), groupoid(n)?))).collect::<anyhow::Result<Vec<_>>>()?;
    let sample = enumerate_sample(&groupoids)?;
    if let Some(path) = dot_path {
        std::fs::write(path, dot(&sample, config.truncation)?).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let mut pass = true;
    let mut reports = Vec::new();
    for k in 0..=levels {
        let level = match classification_level(&sample, k, config.truncation, budget) {
            Ok(level) => level,
            Err(e @ Error::Budget { .. }) => {
                let (weak, cofibrations) = classification_size(&sample, k, config.truncation);
                reports.push(json!({"length": k, "error": e.to_string(), "size": {"weak": weak, "cofibration": cofibrations}}));
                pass = false;
                break;
            }
            Err(e) => return Err(e.into()),
        };
        let (hw, hc) = (homology_through(&level.nerve, 1), homology_through(&level.cofibration_nerve, 1));
        let agree = hc.agrees_with(&hw, 1);
        let injective = level.comparison.is_injective();
        let bijective = components_bijective(&level.cofibration_nerve, &level.nerve, &level.comparison);
        pass &= agree && injective && bijective;
        reports.push(json!({
            "length": k,
            "weak": side(&level.nerve, &level.chains),
            "cofibration": side(&level.cofibration_nerve, &level.cofibration_chains),
            "h0_h1_agree": agree,
            "comparison_injective": injective,
            "components_bijective": bijective,
        }));
    }
    let body = json!({
        "config": config,
        "sample": names,
        "sample_morphisms": sample.morphism_count(),
        "levels": reports,
        "pass": pass,
    });
    Ok(Report { body, pass })
}

pub fn fixture(name: &str, to: Option<&str>, pick: usize, cofibration: bool, equivalence: bool) -> anyhow::Result<Report> {
    let source = groupoid(name)?;
    let Some(to) = to else {
        return Ok(Report { body: serde_json::to_value(source.to_json())?, pass: true });
    };
    let (a, b) = (Arc::new(source), Arc::new(groupoid(to)?));
    let filter = FunctorFilter { injective_on_objects: cofibration, ..FunctorFilter::default() };
    let found: Vec<GroupoidFunctor> = enumerate_functors(&a, &b, filter).into_iter().filter(|f| !equivalence || f.is_equivalence()).collect();
    let Some(f) = found.get(pick) else {
        bail!("only {} functors {name} → {to} pass the filters", found.len());
    };
    Ok(Report { body: serde_json::to_value(f.to_json())?, pass: true })
}
