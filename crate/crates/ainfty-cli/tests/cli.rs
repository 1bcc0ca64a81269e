use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ainfty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainfty")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn fixture(dir: &TempDir, name: &str, degree: i64) -> PathBuf {
    let p = dir.path().join(format!("{name}-{degree}.json"));
    let o = ainfty(&["fixture", name, "--degree", &degree.to_string(), "-o", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn edit(path: &Path, f: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    let out = path.with_extension("edited.json");
    std::fs::write(&out, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    out
}

#[test]
fn every_fixture_validates() {
    let dir = TempDir::new().unwrap();
    for name in ["ground-ring", "dual-numbers", "a2", "a3", "mu3", "zero-object", "split-summand", "torsion-unit", "shifted-summand"] {
        for degree in [0, 1, 2] {
            let p = fixture(&dir, name, degree);
            let o = ainfty(&["validate", s(&p)]);
            assert_eq!(code(&o), 0, "{name}({degree}): {}", stdout(&o));
            assert!(stdout(&o).ends_with("verdict: pass\n"));
        }
    }
}

#[test]
fn negated_product_is_reported_with_a_witness() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "dual-numbers", 1);
    let bad = edit(&p, |v| {
        let t = &mut v["operations"]["2"][1];
        let c = t["coeff"].as_i64().unwrap();
        t["coeff"] = (-c).into();
    });
    let o = ainfty(&["validate", s(&bad)]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("witness: relation on ("), "{out}");
    assert!(out.ends_with("verdict: fail\n"));
    let o = ainfty(&["validate", s(&bad), "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(!v["details"]["ainf"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn undeclared_generator_is_a_schema_error() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "ground-ring", 0);
    let bad = edit(&p, |v| v["operations"]["2"][0]["output"] = "f".into());
    let o = ainfty(&["validate", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("operations.2[0].output: undeclared generator `f`"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_files_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{\n  \"format\": 1,\n  \"objects\": [\n}").unwrap();
    let o = ainfty(&["validate", s(&p)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = ainfty(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn hochschild_of_the_ground_ring() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "ground-ring", 0);
    let o = ainfty(&["hh", s(&p), "--max-length", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("degree 0: Z (stable)"), "{out}");
    let v: Value = serde_json::from_slice(&ainfty(&["hh", s(&p), "--max-length", "3", "--json"]).stdout).unwrap();
    for g in v["details"]["groups"].as_array().unwrap() {
        assert_eq!(g["stable"], true);
        let expect = if g["degree"] == 0 { 1 } else { 0 };
        assert_eq!(g["free_rank"], expect);
        assert!(g["torsion"].as_array().unwrap().is_empty());
    }
    let o = ainfty(&["hh", s(&p), "--degrees", "-1..0", "--ring", "F2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ring F2"));
    assert_eq!(stdout(&o).matches("degree ").count(), 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "mu3", 0);
    for args in [vec!["validate", s(&p)], vec!["hh", s(&p), "--json"], vec!["generate", s(&p), "--json"]] {
        let a = ainfty(&args);
        let b = ainfty(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
    let a = ainfty(&["fixture", "dual-numbers", "--degree", "2"]);
    let b = ainfty(&["fixture", "dual-numbers", "--degree", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generate_then_replay_in_another_process() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "ground-ring", 0);
    let cert = dir.path().join("cert.json");
    let o = ainfty(&["generate", s(&p), "-o", s(&cert)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("tau = e⊗e\n") && out.contains("h = 0\n"), "{out}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["tau"], serde_json::json!([{"p": "e", "a": [], "q": "e", "coeff": 1}]));
    assert_eq!(v["h"], serde_json::json!({}));

    let o = ainfty(&["replay", s(&p), s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = ainfty(&["validate", s(&p), "--certificate", s(&cert)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("certificate: replays"));

    // a tampered coefficient no longer replays
    let bad = edit(&cert, |v| v["tau"][0]["coeff"] = 2.into());
    let o = ainfty(&["replay", s(&p), s(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: certificate does not replay"));
    // a certificate for another category is rejected outright
    let other = fixture(&dir, "dual-numbers", 0);
    assert_eq!(code(&ainfty(&["replay", s(&other), s(&cert)])), 2);
}

#[test]
fn split_summand_certificate_replays() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "split-summand", 0);
    let cert = dir.path().join("cert.json");
    let o = ainfty(&["generate", s(&p), "--object", "K", "--subcategory", "L", "--max-length", "1", "-o", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&ainfty(&["replay", s(&p), s(&cert)])), 0);
}

#[test]
fn zero_subcategory_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "zero-object", 0);
    let o = ainfty(&["generate", s(&p), "--object", "K", "--subcategory", "Z", "--max-length", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with("verdict: inconclusive\n"));
}

#[test]
fn cardy_checks() {
    let dir = TempDir::new().unwrap();
    for n in 0..3 {
        let p = fixture(&dir, "shifted-summand", n);
        for len in ["1", "2", "3"] {
            let o = ainfty(&["cardy", s(&p), "--max-length", len]);
            assert_eq!(code(&o), 0, "n={n} N={len}: {}", stdout(&o));
            let o = ainfty(&["cardy", s(&p), "--max-length", len, "--solve"]);
            assert_eq!(code(&o), 0);
        }
    }
    // OC = 0 leaves a discrepancy that no homotopy removes
    let p = fixture(&dir, "ground-ring", 0);
    let bad = edit(&p, |v| v["cardy"] = serde_json::json!({"oc": "zero"}));
    let o = ainfty(&["cardy", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: homotopy equation on e "), "{}", stdout(&o));
    assert_eq!(code(&ainfty(&["cardy", s(&bad), "--solve"])), 1);
    // OC given entry by entry
    let ok = edit(&p, |v| v["cardy"] = serde_json::json!({"oc": [{"from": "e", "to": "e", "coeff": 1}]}));
    assert_eq!(code(&ainfty(&["cardy", s(&ok)])), 0);
}

#[test]
fn invalid_flag_combinations() {
    let dir = TempDir::new().unwrap();
    let p = fixture(&dir, "ground-ring", 0);
    let with_h = edit(&p, |v| v["cardy"] = serde_json::json!({"homotopy": []}));
    let o = ainfty(&["cardy", s(&with_h), "--solve"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--solve"));
    assert_eq!(code(&ainfty(&["strata", "R_4", "--ring", "F2"])), 2);
    assert_eq!(code(&ainfty(&["hh", s(&p), "--degrees", "3..1"])), 2);
    assert_eq!(code(&ainfty(&["hh", s(&p), "--subcategory", "Q"])), 2);
    assert_eq!(code(&ainfty(&["cardy", s(&fixture(&dir, "a2", 0))])), 2);
    assert_eq!(code(&ainfty(&["validate"])), 2);
}

#[test]
fn strata_tables() {
    let o = ainfty(&["strata", "R_4"]);
    assert_eq!(code(&o), 0);
    let rows = stdout(&o).lines().filter(|l| l.starts_with("  ")).count();
    assert_eq!(rows, 5);
    for (space, n) in [("R_3", 2), ("R_5", 9)] {
        let v: Value = serde_json::from_slice(&ainfty(&["strata", space, "--json"]).stdout).unwrap();
        assert_eq!(v["details"]["strata"].as_array().unwrap().len(), n);
    }
    let o = ainfty(&["strata", "R_{1|1|1}", "--equation", "bimodule-map"]);
    assert_eq!(code(&o), 0);
    let o = ainfty(&["strata", "R^1_3", "--equation", "hochschild", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["details"]["bijection"]["passed"], true);
    assert_eq!(code(&ainfty(&["strata", "R_1"])), 2);
    assert_eq!(code(&ainfty(&["strata", "R_3", "--equation", "hochschild"])), 2);
}

#[test]
fn signs() {
    let o = ainfty(&["sign", "cardy", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("cardy[1] = -1"));
    let o = ainfty(&["sign", "first-input", "-1"]);
    assert!(stdout(&o).contains("= +1"), "{}", stdout(&o));
    assert_eq!(code(&ainfty(&["sign", "spade"])), 2);
    assert_eq!(code(&ainfty(&["sign", "cardy"])), 2);
}

#[test]
fn unknown_fixture() {
    let o = ainfty(&["fixture", "nope"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("ground-ring"));
}
