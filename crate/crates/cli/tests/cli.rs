use std::path::Path;
use std::process::{Command, Output};

fn ainf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainf")).args(args).env("AINF_WORKDIR", dir).output().unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn check_ainfty_passes_on_lambda1() {
    let dir = tempfile::tempdir().unwrap();
    let out = ainf(dir.path(), &["check-ainfty", "--algebra", "lambda1", "--arity", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdict"], true);
    assert_eq!(cert["parameters"]["arity"], "6");
    assert_eq!(cert["schema_version"], 1);
}

#[test]
fn relative_outputs_land_in_the_workdir() {
    let dir = tempfile::tempdir().unwrap();
    let out = ainf(dir.path(), &["verify-section4", "--max-weight", "4", "--out", "s4.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert = json(&dir.path().join("s4.json"));
    assert_eq!(cert["verdict"], true);
    assert_eq!(cert["pipeline"], "verify-section4");
}

#[test]
fn exported_algebras_check_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = ainf(dir.path(), &["export-algebra", "--algebra", "tensor(lambda1,dual_numbers)", "--out", "t.json"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ainf(dir.path(), &["check-ainfty", "--input", "t.json", "--arity", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn malformed_coefficient_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    ainf(dir.path(), &["export-algebra", "--algebra", "dual_numbers", "--out", "d.json"]);
    let p = dir.path().join("d.json");
    let mut doc = json(&p);
    doc["operations"][0]["entries"][0]["output"][0][1] = "1/0".into();
    std::fs::write(&p, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = ainf(dir.path(), &["check-ainfty", "--input", "d.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");
}

#[test]
fn failing_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    ainf(dir.path(), &["export-algebra", "--algebra", "truncated_poly(4)", "--out", "p.json"]);
    let p = dir.path().join("p.json");
    let mut doc = json(&p);
    let entries = doc["operations"][0]["entries"].as_array_mut().unwrap();
    let e = entries.iter_mut().find(|e| e["inputs"] == serde_json::json!(["x", "x2"])).unwrap();
    e["output"] = serde_json::json!([["x3", "2"]]);
    std::fs::write(&p, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = ainf(dir.path(), &["check-ainfty", "--input", "p.json", "--arity", "3", "--out", "c.json"]);
    assert_eq!(out.status.code(), Some(1));
    let cert = json(&dir.path().join("c.json"));
    assert_eq!(cert["verdict"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL relations"));
}

#[test]
fn bad_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert_ne!(ainf(dir.path(), &["hochschild", "--algebra", "lambda1", "--bogus"]).status.code(), Some(0));
    assert_ne!(ainf(dir.path(), &["hochschild", "--algebra", "lambda1", "--max-weight", "0"]).status.code(), Some(0));
    assert_eq!(ainf(dir.path(), &["hochschild", "--algebra", "nope"]).status.code(), Some(2));
}

#[test]
fn solve_morphism_writes_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let out = ainf(
        dir.path(),
        &[
            "solve-morphism",
            "--target-arity",
            "3",
            "--weight-bound",
            "8",
            "--length-bound",
            "5",
            "--prefix-out",
            "g.json",
            "--out",
            "s.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let g = json(&dir.path().join("g.json"));
    assert_eq!(g["arity"], 3);
    let cert = json(&dir.path().join("s.json"));
    assert_eq!(cert["parameters"]["weight_bound"], "8");
    assert_eq!(cert["data"]["prefix_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn run_all_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = serde_json::json!({
        "check_arity": 5, "hochschild_weight": 3, "ext_truncation": 6, "c_bound": 8,
        "periodic_depth": 8, "weight_bound": 8, "length_bound": 5, "solver_arity": 3,
        "certify_arity": 4, "section4_weight": 2
    });
    std::fs::write(dir.path().join("cfg.json"), cfg.to_string()).unwrap();
    for run in ["a", "b"] {
        let out = ainf(dir.path(), &["--config", "cfg.json", "run-all", "--out-dir", run]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let mut names: Vec<_> = std::fs::read_dir(dir.path().join("a")).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() > 10);
    for n in names {
        let a = std::fs::read(dir.path().join("a").join(&n)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(&n)).unwrap();
        assert_eq!(a, b, "{n:?} differs");
    }
    assert_eq!(json(&dir.path().join("a/summary.json"))["verdict"], true);
}
