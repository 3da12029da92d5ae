use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gpdkit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpdkit")).args(args).current_dir(dir).output().expect("binary runs")
}

fn run(args: &[&str], dir: &Path) -> (i32, Value) {
    let out = gpdkit(args, dir);
    let code = out.status.code().expect("exit code");
    let body = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, body)
}

/// Writes `gpdkit fixture …` output to `file` and returns its path.
fn fixture(dir: &Path, file: &str, args: &[&str]) -> PathBuf {
    let out = gpdkit(&[&["fixture"], args].concat(), dir);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(file);
    std::fs::write(&path, out.stdout).unwrap();
    path
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_accepts_codiscrete_two() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "cd2.json", &["codiscrete2"]);
    let (code, body) = run(&["validate", path(&file)], dir.path());
    assert_eq!(code, 0);
    assert_eq!(body["valid"], true);
    assert_eq!(body["detail"]["morphisms"], 4);
}

#[test]
fn validate_names_a_missing_inverse() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "cd2.json", &["codiscrete2"]);
    let mut g: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    g["inverses"].as_object_mut().unwrap().remove("a>b");
    std::fs::write(&file, g.to_string()).unwrap();
    let (code, body) = run(&["validate", path(&file)], dir.path());
    assert_eq!(code, 1);
    assert_eq!(body["detail"]["violations"][0]["kind"], "missing_inverse");
    assert_eq!(body["detail"]["violations"][0]["morphism"], "a>b");
}

#[test]
fn validate_rejects_malformed_json() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"objects\": [").unwrap();
    assert_eq!(gpdkit(&["validate", "bad.json"], dir.path()).status.code(), Some(2));
    assert_eq!(gpdkit(&["validate", "missing.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn validate_checks_functor_laws() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "f.json", &["BZ2", "--to", "BZ2", "--pick", "1"]);
    let (code, body) = run(&["validate", path(&file)], dir.path());
    assert_eq!((code, &body["kind"], &body["detail"]["equivalence"]), (0, &"functor".into(), &true.into()));
    // send the generator of Z/2 to the identity but keep its square
    let mut f: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let map = f["onMorphisms"].as_object_mut().unwrap();
    let keys: Vec<String> = map.keys().cloned().collect();
    let (identity, generator) = (map[&keys[0]].clone(), map[&keys[1]].clone());
    map[&keys[0]] = generator;
    map[&keys[1]] = identity;
    std::fs::write(&file, f.to_string()).unwrap();
    let (code, body) = run(&["validate", path(&file)], dir.path());
    assert_eq!(code, 1);
    assert!(!body["detail"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn factor_collapse_of_z2() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "f.json", &["BZ2", "--to", "B1"]);
    let (code, body) = run(&["factor", path(&file)], dir.path());
    assert_eq!(code, 0);
    let f = &body["factorization"];
    assert_eq!(f["middle"]["concrete"]["objects"].as_array().unwrap().len(), 2);
    for check in ["first_is_cofibration", "second_is_equivalence", "composite_is_original"] {
        assert_eq!(f["checks"][check], "pass");
    }
    assert!(body.get("warning").is_none());
}

#[test]
fn factor_identity_on_a_point_is_an_interval() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "id.json", &["B1", "--to", "B1"]);
    let (code, body) = run(&["factor", path(&file)], dir.path());
    assert_eq!(code, 0);
    let middle = &body["factorization"]["middle"]["concrete"];
    assert_eq!(middle["objects"].as_array().unwrap().len(), 2);
    assert_eq!(middle["morphisms"].as_array().unwrap().len(), 4);
}

#[test]
fn factor_beyond_the_bound_warns() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "id.json", &["B1", "--to", "B1"]);
    let (code, body) = run(&["factor", "--bound", "2", path(&file)], dir.path());
    assert_eq!(code, 0);
    assert!(body["warning"].as_str().unwrap().contains("unverified"));
    assert_eq!(body["factorization"]["checks"]["second_is_equivalence"], "unverified");
    assert!(body["factorization"]["middle"].get("presented").is_some());
}

#[test]
fn morita_acyclic_cofibration() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "f.json", &["BZ2", "--to", "codiscrete2xZ2", "--cofibration", "--equivalence"]);
    let (code, body) = run(&["morita", path(&file)], dir.path());
    assert_eq!(code, 0);
    assert_eq!(body["report"]["acyclic_cofibration"], true);
    assert_eq!(body["report"]["k0_iso"], true);
}

#[test]
fn morita_points_into_an_interval() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "f.json", &["discrete2", "--to", "codiscrete2", "--cofibration"]);
    let (code, body) = run(&["morita", path(&file)], dir.path());
    assert_eq!(code, 1);
    assert_eq!(body["report"]["k0_iso"], false);
    assert_eq!(body["report"]["k0"]["matrix"], serde_json::json!([[1, 1]]));
}

#[test]
fn morita_rejects_non_cofibrations() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "f.json", &["discrete2", "--to", "B1"]);
    let (code, body) = run(&["morita", path(&file)], dir.path());
    assert_eq!(code, 1);
    assert!(body["error"]["message"].as_str().unwrap().contains("not multiplicative"));
}

#[test]
fn nerve_suite_on_a_point() {
    let dir = TempDir::new().unwrap();
    let (code, body) = run(&["nerve-suite", "B1"], dir.path());
    assert_eq!(code, 0);
    for level in body["levels"].as_array().unwrap() {
        assert_eq!(level["weak"]["simplices"], level["cofibration"]["simplices"]);
        assert_eq!(level["h0_h1_agree"], true);
    }
}

#[test]
fn nerve_suite_on_three_fixtures() {
    let dir = TempDir::new().unwrap();
    let (code, body) = run(&["nerve-suite", "codiscrete2", "BZ2", "B1"], dir.path());
    assert_eq!(body["sample"], serde_json::json!(["B1", "BZ2", "codiscrete2"]));
    let levels = body["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    // chains of length 0: the swap of codiscrete2 survives only among acyclic cofibrations
    assert_eq!(levels[0]["h0_h1_agree"], false);
    assert_eq!(levels[0]["cofibration"]["homology"]["groups"][1]["torsion"], serde_json::json!([2]));
    assert_eq!(levels[1]["h0_h1_agree"], true);
    assert!(levels.iter().all(|l| l["comparison_injective"] == true && l["components_bijective"] == true));
    assert_eq!(code, 1);
}

#[test]
fn nerve_suite_budget_overflow() {
    let dir = TempDir::new().unwrap();
    let (code, body) = run(&["nerve-suite", "B1", "codiscrete2", "--budget", "10"], dir.path());
    assert_eq!(code, 1);
    let level = &body["levels"][0];
    assert!(level["error"].as_str().unwrap().contains("budget"));
    assert!(level["size"]["weak"]["estimate"].as_u64().unwrap() > 10);
}

#[test]
fn nerve_suite_writes_dot() {
    let dir = TempDir::new().unwrap();
    assert_eq!(gpdkit(&["nerve-suite", "B1", "codiscrete2", "--levels", "0", "--dot", "n.dot"], dir.path()).status.code(), Some(1));
    let dot = std::fs::read_to_string(dir.path().join("n.dot")).unwrap();
    assert!(dot.starts_with("digraph \"w\""));
    assert!(dot.contains("digraph \"wc\""));
}

#[test]
fn reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "f.json", &["BZ2", "--to", "codiscrete2xZ2", "--cofibration", "--equivalence"]);
    for args in [vec!["morita", "--seed", "7", path(&file)], vec!["nerve-suite", "B1", "codiscrete2"], vec!["factor", path(&file)]] {
        let (a, b) = (gpdkit(&args, dir.path()), gpdkit(&args, dir.path()));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn reports_embed_the_run_config() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "f.json", &["BZ2", "--to", "codiscrete2xZ2", "--cofibration", "--equivalence"]);
    let out = gpdkit(&["morita", "--seed", "3", "--tol", "1e-8", "--out", "r.json", path(&file)], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    let config = &body["config"];
    assert_eq!((config["command"].as_str(), config["seed"].as_u64(), config["tolerance"].as_f64()), (Some("morita"), Some(3), Some(1e-8)));
    assert_eq!(config["output"], "r.json");
    assert_eq!(body["report"]["seed"], 3);
}

#[test]
fn bad_flags_and_names_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let file = fixture(dir.path(), "g.json", &["B1"]);
    for args in [
        vec!["validate", "--tol", "0", path(&file)],
        vec!["validate", "--bound", "0", path(&file)],
        vec!["nerve-suite", "Bfoo"],
        vec!["nerve-suite", "B1", "--dim", "1"],
        vec!["fixture", "BZ2", "--to", "B1", "--pick", "5"],
        vec!["factor", path(&file)],
    ] {
        assert_eq!(gpdkit(&args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}
