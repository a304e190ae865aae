use std::path::Path;
use std::process::{Command, Output};

fn orbitcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitcone"))
        .args(args)
        .env_remove("ORBITCONE_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn write_spec(dir: &Path, d: &str) -> String {
    let path = dir.join("osc.json");
    let spec = format!(
        r#"{{"base": {{"dim": 2, "c": [], "kappa": [[1, 0], [0, 1]]}}, "omega": [[0, 1], [-1, 0]], "D": {d}, "delta": [0, 0]}}"#
    );
    std::fs::write(&path, spec).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn cox_hull_a2_member() {
    let out = orbitcone(&["cox-hull", "--system", "A2", "--v", "0,1,2", "--u", "1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["info"]["member"], true);
    assert_eq!(r["config"]["params"]["v"], "0,1,2");
}

#[test]
fn cox_hull_accepts_fractions_and_negatives() {
    let out = orbitcone(&["cox", "hull", "--system", "A2", "--v", "-1,1/2,3", "--u", "5,5,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["info"]["member"], false);
}

#[test]
fn schurhorn_csv_columns() {
    let out = orbitcone(&["schurhorn", "--n", "5", "--trials", "1000", "--seed", "42", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("trial,max_slack,inside"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 1000);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["duality", "--trials", "20", "--seed", "7"];
    let a = orbitcone(&args);
    let b = orbitcone(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["config"]["seed"], 7);
    assert_eq!(r["config"]["trials"], 20);
    assert!(r.get("wall_time_ms").is_none());
}

#[test]
fn seed_from_environment_and_flag_precedence() {
    let run = |env: &str, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbitcone"));
        cmd.args(["maxnorm", "--nmax", "3"]).args(extra).env("ORBITCONE_SEED", env);
        json(&cmd.output().unwrap())["config"]["seed"].clone()
    };
    assert_eq!(run("99", &[]), 99);
    assert_eq!(run("99", &["--seed", "5"]), 5);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 3, "trials": 4, "tolerances": {"slack": 1e-9}}"#).unwrap();
    let out = orbitcone(&["schurhorn", "--n", "3", "--config", cfg.to_str().unwrap(), "--trials", "6"]);
    let r = json(&out);
    assert_eq!(r["config"]["seed"], 3);
    assert_eq!(r["config"]["trials"], 6);
    assert_eq!(r["summary"]["total"], 7);
}

#[test]
fn pec_matches_oscillator_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let rot = write_spec(dir.path(), "[[0, 1], [-1, 0]]");
    let out = orbitcone(&["dext", "pec", "--spec", &rot]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["info"]["pec"]["pass"], true);

    let flipped = write_spec(dir.path(), "[[0, -1], [1, 0]]");
    let out = orbitcone(&["pec", "--spec", &flipped]);
    let r = json(&out);
    assert_eq!(r["info"]["pec"]["pass"], false);
    assert_eq!(out.status.code(), Some(1));
    let agree = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "PEC verdict matches ω(Dx,y) > 0").unwrap();
    assert_eq!(agree["pass"], true);
}

#[test]
fn dext_orbit_and_check_on_oscillator() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "[[0, 1], [-1, 0]]");
    let out = orbitcone(&["dext", "orbit", "--spec", &spec, "--levels", "0.5,2", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["summary"]["total"], 4);
    assert_eq!(orbitcone(&["dext", "check", "--spec", &spec]).status.code(), Some(0));
}

#[test]
fn schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"base": {"dim": 2, "c": []}, "omega": [[0, 1], [1, 0]], "D": [[0, 0], [0, 0]]}"#).unwrap();
    let out = orbitcone(&["dext", "build", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("antisymmetric"));

    let missing = orbitcone(&["dext", "pec", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/spec.json"));

    assert_eq!(orbitcone(&["cox-hull", "--v", "1,x", "--u", "0,0,0"]).status.code(), Some(2));
}

#[test]
fn out_file_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = orbitcone(&["maxnorm", "--nmax", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["summary"]["passed"], 3);
}
