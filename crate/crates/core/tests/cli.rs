use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_genusforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("genusforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn witten_genus_from_file() {
    let p = fixture("k3.json", r#"{"dim": 4, "numbers": {"p1": "-48"}, "spin": true}"#);
    let o = run(&["genus", "compute", "--spec", p.to_str().unwrap(), "--genus", "witten", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let values: Vec<&str> = v["results"]["series"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["2/1", "0/1", "-48/1", "0/1", "-144/1"]);
    assert_eq!(v["mode"], "exact");
}

#[test]
fn theta_t_law_passes() {
    let o = run(&["theta", "check", "--law", "T", "--kind", "theta", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["results"]["max_residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn lattice_report_names_the_sign() {
    let o = run(&["theta", "check", "--law", "lattice", "--kind", "theta1", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["results"]["lattice"]["holds"], serde_json::json!(["Negative"]));
    assert!(v["warnings"][0].as_str().unwrap().contains("negative"));
}

#[test]
fn failing_verdict_exits_one() {
    let o = run(&["jacobi", "verify", "--model", "catalog:single_point", "--subgroup", "sl2z", "--tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["verdicts"][0]["passed"], false);
    assert!(v["verdicts"][0]["value"].as_f64().unwrap() >= 1e-20);
}

#[test]
fn passing_jacobi_and_catalog_selftest() {
    let o = run(&["jacobi", "verify", "--model", "catalog:single_point", "--subgroup", "sl2z", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["catalog", "selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn schema_errors_exit_two_with_path() {
    let p = fixture(
        "bad_model.json",
        r#"{"mode": "FOLIATED", "p": 1, "r": 0, "components": [{"dimN": 0, "moving_F": [{"rank": 1, "mm": 1}]}]}"#,
    );
    let o = run(&["equivariant", "H", "--model", p.to_str().unwrap(), "--t", "0.1", "--tau", "1i"]);
    assert_eq!(o.status.code(), Some(2));
    let msg = json(&o)["error"].as_str().unwrap().to_string();
    assert!(msg.contains("components[0].moving_F[0]"), "{msg}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["catalog", "show", "hp2"]).status.code(), Some(2));
    assert_eq!(run(&["equivariant", "H", "--model", "catalog:s2_rotation", "--t", "x", "--tau", "1i"]).status.code(), Some(2));
    let o = bin().args(["catalog", "list"]).env("GENUSFORGE_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_cap_and_text_format() {
    let o = bin()
        .args(["--format", "text", "equivariant", "H", "--model", "catalog:s2rot_x_t2", "--t", "0.1+0.02i", "--tau", "1.1i"])
        .env("GENUSFORGE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("PASS  dual_path_difference"), "{out}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["equivariant", "G", "--model", "catalog:s2xs2_rotation", "--t", "0.2", "--tau", "0.1+1.2i", "--exact"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
