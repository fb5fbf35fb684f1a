use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn hasse(args: &[&str]) -> (bool, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hasse")).args(args).env_remove("RUST_BACKTRACE").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.success(), v, String::from_utf8(out.stderr).unwrap())
}

fn write_tmp(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hasse-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn hilbert_symbols() {
    assert_eq!(hasse(&["hilbert", "-a", "-1", "-b", "-1", "--place", "2"]).1, -1);
    assert_eq!(hasse(&["hilbert", "-a", "-1", "-b", "-1", "--place", "inf"]).1, -1);
    assert_eq!(hasse(&["hilbert", "-a", "-1", "-b", "-1", "--place", "3"]).1, 1);
    assert!(!hasse(&["hilbert", "-a", "2", "-b", "3", "--place", "4"]).0);
}

#[test]
fn hamilton_class() {
    let (ok, v, _) = hasse(&["quaternion-class", "-a", "-1", "-b", "-1"]);
    assert!(ok);
    assert_eq!(v["inv"]["2:0"], "1/2");
    assert_eq!(v["inv"]["inf:real:0"], "1/2");
    assert!(!hasse(&["quaternion-class", "-a", "0", "-b", "1"]).0);
}

#[test]
fn decomposition() {
    let (ok, v, _) = hasse(&["field", "decompose", "--conductor", "5", "--gens", "-1", "--prime", "11"]);
    assert!(ok);
    assert_eq!((v["e"].as_u64(), v["f"].as_u64(), v["g"].as_u64()), (Some(1), Some(1), Some(2)));
}

#[test]
fn q8_table_and_rationality() {
    let (ok, v, _) = hasse(&["group", "char-table", "--builtin", "Q8"]);
    assert!(ok);
    assert_eq!(v["order"], 8);
    assert_eq!(v["characters"].as_array().unwrap().len(), 5);

    let (ok, v, _) = hasse(&["group", "rationality", "--builtin", "Q8", "--char", "4"]);
    assert!(ok);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["frobenius_schur"], -1);
    assert_eq!(v["field_of_rationality"]["conductor"], 1);
    assert_eq!(v["schur"]["kind"], "quaternion");
    assert_eq!(v["schur"]["class"]["inv"]["2:0"], "1/2");

    assert!(!hasse(&["group", "rationality", "--builtin", "Q8", "--char", "9"]).0);
    assert!(!hasse(&["group", "char-table", "--builtin", "X7"]).0);
}

#[test]
fn group_from_table_file() {
    let path = write_tmp("c2.json", r#"{"order": 2, "table": [[0, 1], [1, 0]]}"#);
    let (ok, v, _) = hasse(&["group", "char-table", "--table", path.to_str().unwrap()]);
    assert!(ok);
    assert_eq!(v["characters"][1], serde_json::json!(["1", "-1"]));
    let bad = write_tmp("bad.json", r#"{"order": 2, "table": [[0, 1], [0, 1]]}"#);
    assert!(!hasse(&["group", "char-table", "--table", bad.to_str().unwrap()]).0);
}

#[test]
fn constraints_solve_and_check() {
    let sc = write_tmp(
        "s.json",
        r#"{"n": 2, "p": 3, "field": {"conductor": 1, "generators": []}, "duality_type": "symplectic"}"#,
    );
    let s = sc.to_str().unwrap();
    let (ok, v, _) = hasse(&["constraints", "solve", "--scenario", s]);
    assert!(ok);
    assert_eq!(v["status"], "consistent");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 2);

    let orth = write_tmp(
        "o.json",
        r#"{"n": 2, "p": 3, "field": {"conductor": 1, "generators": []}, "duality_type": "orthogonal"}"#,
    );
    let (ok, v, _) = hasse(&["constraints", "solve", "--scenario", orth.to_str().unwrap(), "--conjecture"]);
    assert!(ok);
    assert_eq!(v["status"], "inconsistent");
    assert_eq!(v["violated"], "conjecture");

    let (ok, _, err) = hasse(&["constraints", "solve", "--scenario", s, "--max-candidates", "1"]);
    assert!(!ok);
    assert!(err.contains("exceeds"));

    let good = write_tmp("good.json", r#"{"jl": {"3:0": "1/2", "inf:real:0": "1/2"}, "lp": {}}"#);
    let (ok, v, _) = hasse(&["constraints", "check", "--scenario", s, "--pair", good.to_str().unwrap()]);
    assert!(ok);
    assert_eq!(v["passed"], true);

    let bad = write_tmp("bad.json", r#"{"jl": {"3:0": "1/2"}, "lp": {}}"#);
    let (ok, v, _) = hasse(&["constraints", "check", "--scenario", s, "--pair", bad.to_str().unwrap()]);
    assert!(ok);
    assert_eq!(v["passed"], false);
}
