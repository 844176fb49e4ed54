//! End-to-end runs of the binary against the shipped fixtures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn catmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catmon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn enumerate_catalan_counts() {
    let out = catmon(&["enumerate-catalan", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_json(&out);
    assert_eq!(body["count"], 5);
    assert_eq!(body["catalan_number"], 5);

    let out = catmon(&["enumerate-catalan", "3", "--list", "--nondegenerate"]);
    let body = stdout_json(&out);
    assert_eq!(body["count"], 4);
    assert_eq!(body["simplices"].as_array().unwrap().len(), 4);
}

#[test]
fn check_skew_pentagon_failure_exits_one() {
    let path = fixture("z2_skew_alpha_one.json");
    let out = catmon(&["check-skew", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let body = stdout_json(&out);
    assert_eq!(body["status"], "fail");
    assert!(body["failures"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["check"] == "pentagon"));
}

#[test]
fn check_skew_strict_passes() {
    let path = fixture("z2_skew_discrete.json");
    let out = catmon(&["check-skew", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["status"], "pass");
}

#[test]
fn check_lax_bad_iota_fails_unitality() {
    let path = fixture("z3_lax_bad_iota.json");
    let out = catmon(&["check-lax", path.to_str().unwrap(), "--arity-bound", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let body = stdout_json(&out);
    assert!(body["failures"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["check"].as_str().unwrap().starts_with("unitality")));
}

#[test]
fn roundtrip_lax_z2() {
    let path = fixture("z2_monoid.json");
    let out = catmon(&[
        "roundtrip-lax",
        path.to_str().unwrap(),
        "--max-dim",
        "6",
        "--arity-bound",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["status"], "pass");
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("recovered == input"), "{summary}");
}

#[test]
fn classify_lax_bad_iota_reports_dagger_witness() {
    let path = fixture("z3_lax_bad_iota.json");
    let out = catmon(&["classify-lax", path.to_str().unwrap(), "--max-dim", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let body = stdout_json(&out);
    let failures = body["failures"].as_array().unwrap();
    let dagger = failures.iter().find(|f| f["check"] == "dagger").unwrap();

    // the named witness re-checks in isolation
    let witness = serde_json::json!({
        "simplex": dagger["witness"]["simplex"],
        "A": dagger["witness"]["A"],
        "B": dagger["witness"]["B"],
    });
    let out = catmon(&[
        "classify-lax",
        path.to_str().unwrap(),
        "--max-dim",
        "4",
        "--witness",
        &witness.to_string(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let body = stdout_json(&out);
    assert_eq!(body["failures"].as_array().unwrap().len(), 1);
}

#[test]
fn classify_skew_path_failure_exits_one() {
    let path = fixture("z2_skew_alpha_one.json");
    let out = catmon(&["classify-skew", path.to_str().unwrap(), "--max-dim", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let body = stdout_json(&out);
    assert!(body["failures"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["check"] == "path-search"));
}

#[test]
fn check_sigma_fixture_passes() {
    let path = fixture("sigma_indiscrete.json");
    let out = catmon(&["check-sigma", path.to_str().unwrap(), "--max-dim", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_deterministic_across_runs_and_workers() {
    let path = fixture("z2_monoid.json");
    let run = |workers: &str| {
        let out = catmon(&[
            "classify-lax",
            path.to_str().unwrap(),
            "--max-dim",
            "4",
            "--workers",
            workers,
        ]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let first = run("1");
    let second = run("1");
    let four = run("4");
    assert_eq!(first, second);
    assert_eq!(first, four);
}

#[test]
fn parse_errors_exit_two() {
    let out = catmon(&["check-lax", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join("catmon-bad-fixture.json");
    std::fs::write(&dir, "{\"kind\": \"nope\"}").unwrap();
    let out = catmon(&["check-lax", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_mapdata_roundtrips_classified_output() {
    // classify a fixture in-process, write the map data, re-check it
    use catalan_monoidal::classify::{lax_classify, LaxStructure, StrictReading};
    use catalan_monoidal::fincat::Monoid;
    let s =
        LaxStructure::strict_from_monoid(&Monoid::cyclic(2), StrictReading::OneObject, 3).unwrap();
    let d = lax_classify(&s, 3).unwrap();
    let mut value = serde_json::to_value(d.to_wire()).unwrap();
    value["kind"] = serde_json::json!("mapdata");
    let path = std::env::temp_dir().join("catmon-mapdata-fixture.json");
    std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();
    let out = catmon(&["check-mapdata", path.to_str().unwrap(), "--max-dim", "3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn explicit_skew_tables_parse_and_classify() {
    let path = fixture("chain_skew_explicit.json");
    let out = catmon(&["check-skew", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = catmon(&["classify-skew", path.to_str().unwrap(), "--max-dim", "4"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_json(&out)["status"], "pass");
}

#[test]
fn explicit_lax_tables_parse_and_check() {
    let path = fixture("chain_lax_explicit.json");
    let out = catmon(&["check-lax", path.to_str().unwrap(), "--arity-bound", "1"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
