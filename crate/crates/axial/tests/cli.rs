use std::path::Path;
use std::process::Command;

use axial::{AlgebraJson, DerivedTableJson};
use axial_core::field::{RatFunc, Rational};
use axial_core::universal::{build_symbolic, build_universal, UniversalParams};
use serde_json::Value;

fn axial(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_axial")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const POINT: [&str; 8] = ["--alpha", "1/2", "--beta", "3", "--gamma", "-2", "--psi", "5/3"];

#[test]
fn build_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a.json");
    let (code, report) = axial(&["build", "--alpha", "1", "--beta", "1", "--gamma", "1", "--psi", "0", "--out", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["result"]["dim"], 9);
    let saved: AlgebraJson = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let expected = build_universal(&UniversalParams::from_ints(1, 1, 1, 0)).unwrap();
    assert_eq!(saved.to_algebra(&Rational::zero()).unwrap(), expected);
}

#[test]
fn round_trip_matches_in_memory() {
    let dir = tempfile::tempdir().unwrap();
    for field in ["q", "fp:11"] {
        let file = dir.path().join(format!("{}.json", field.replace(':', "")));
        let mut args = vec!["build", "--field", field, "--out", path_str(&file)];
        args.extend(POINT);
        assert_eq!(axial(&args).0, 0);
        for suite in ["fusion", "jordan", "frobenius", "seress"] {
            let mut direct = vec!["verify", suite, "--field", field];
            direct.extend(POINT);
            let (c1, r1) = axial(&direct);
            let (c2, r2) = axial(&["verify", suite, "--algebra", path_str(&file)]);
            assert_eq!((c1, c2), (0, 0), "{field} {suite}");
            assert_eq!(r1["result"], r2["result"], "{field} {suite}");
            assert_eq!(r1["passed"], true);
        }
    }
}

#[test]
fn symbolic_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sym.json");
    assert_eq!(axial(&["build", "--out", path_str(&file)]).0, 0);
    let saved: AlgebraJson = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(saved.to_algebra(&RatFunc::zero()).unwrap(), build_symbolic());
    let (c1, r1) = axial(&["verify", "seress", "--symbolic"]);
    let (c2, r2) = axial(&["verify", "seress", "--algebra", path_str(&file)]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(r1["result"], r2["result"]);
}

#[test]
fn symbolic_jordan_passes() {
    let (code, report) = axial(&["verify", "jordan", "--symbolic"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["checked"], 1485);
}

#[test]
fn radical_at_origin() {
    let (code, report) = axial(&["radical", "--alpha", "0", "--beta", "0", "--gamma", "0", "--psi", "0"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["rank"], 3);
    assert_eq!(report["result"]["case"], "ψ=α=β=γ=0");
    assert_eq!(report["result"]["radical_basis"].as_array().unwrap().len(), 6);
}

#[test]
fn derived_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("table.json");
    let (code, report) = axial(&["derive", "--eta", "1/2", "--out", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["complete"], true);
    let table: DerivedTableJson = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(table.eta, "1/2");
    assert_eq!(table.to_algebra().unwrap(), build_symbolic());
}

#[test]
fn quotient_file_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q.json");
    let (code, report) =
        axial(&["quotient", "--alpha", "0", "--beta", "0", "--gamma", "2", "--psi", "0", "--out", path_str(&file)]);
    assert_eq!(code, 0);
    let dim = report["result"]["dim"].as_u64().unwrap();
    assert_eq!(Some(dim as usize), report["result"]["radical"]["rank"].as_u64().map(|r| r as usize));
    let (code, report) = axial(&["verify", "jordan", "--algebra", path_str(&file)]);
    assert_eq!(code, 0, "{report}");
}

#[test]
fn failing_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let alg = build_universal(&UniversalParams::from_ints(1, 2, 3, 4)).unwrap();
    let mut j = AlgebraJson::from_algebra(&alg, None);
    // ab * ab picks up an extra c
    let cell = j.constants.iter_mut().find(|c| c.i == 3 && c.j == 3).unwrap();
    cell.terms.push((2, "1".into()));
    std::fs::write(&file, serde_json::to_string(&j).unwrap()).unwrap();
    let (code, report) = axial(&["verify", "jordan", "--algebra", path_str(&file)]);
    assert_eq!(code, 1);
    assert_eq!(report["passed"], false);
    assert!(!report["result"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["nonsense"],
        vec!["radical"],
        vec!["radical", "--alpha", "1"],
        vec!["radical", "--alpha", "0.5", "--beta", "0", "--gamma", "0", "--psi", "0"],
        vec!["iso", "--alpha", "1", "--beta", "1", "--gamma", "1", "--psi", "2", "--field", "fp:9"],
        vec!["derive", "--eta", "1/3"],
        vec!["verify", "fusion", "--sampled", "3"],
        vec!["verify", "jordan", "--algebra", path_str(&missing)],
    ];
    for args in cases {
        assert_eq!(axial(&args).0, 2, "{args:?}");
    }
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_axial"))
        .args(["verify", "seress", "--alpha", "1", "--beta", "2", "--gamma", "3", "--psi", "4"])
        .env("AXIAL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_axial"))
        .args(["relations"])
        .env("AXIAL_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
