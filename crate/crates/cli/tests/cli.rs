use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn opnorm(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_opnorm"));
    cmd.args(args).env_remove("OPNORM_SEED");
    if let Some(s) = seed {
        cmd.env("OPNORM_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn config(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str, body: &str) -> String {
    let p: PathBuf = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn prop5_config_passes() {
    let cfg = scratch(
        "prop5.json",
        r#"{"seed": 42, "suites": [{"suite": "prop5", "norm": {"constructor": "mult_norm_l2", "grid_size": 8}}]}"#,
    );
    let out = opnorm(&["run", &cfg], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["suites"][0]["name"], "prop5");
    assert!(v["suites"][0]["checks"].as_u64().unwrap() >= 2000);
}

#[test]
fn default_config_passes() {
    let out = opnorm(&["run", &config("default.json")], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["suite_count"], 10);
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    for n in ["axioms-lh", "axioms-ck", "prop5", "prop6", "theorem-b1", "gelfand", "cor-a9", "embed-a6"] {
        assert!(names.contains(&n), "{n} missing");
    }
}

#[test]
fn adversarial_config_fails_with_witness() {
    let out = opnorm(&["run", &config("adversarial.json"), "--format", "json"], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    let w = &v["suites"][0]["witnesses"][0];
    assert_eq!(w["check"], "positivity");
    assert!(w["witness"]["x"].is_array() && w["witness"]["vector"].is_array());
}

#[test]
fn text_format_marks_failures() {
    let out = opnorm(&["run", &config("adversarial.json")], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[FAIL] axioms-lh") && text.contains("witness (positivity)"));
}

#[test]
fn malformed_config_exits_2() {
    let cfg = scratch("broken.json", r#"{"seed": 1, "suites": [ {"suite": "prop5" "#);
    let out = opnorm(&["run", &cfg], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json:1:"));
}

#[test]
fn invalid_parameter_names_its_path() {
    let cfg = scratch(
        "bad_grid.json",
        r#"{"seed": 1, "suites": [{"suite": "axioms-lh", "norm": {"constructor": "mult_norm_l2", "grid_size": 0}}]}"#,
    );
    let out = opnorm(&["run", &cfg], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("suites[0].norm.grid_size"));
}

#[test]
fn missing_config_exits_2() {
    let out = opnorm(&["run", "/nonexistent/opnorm.json"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_suite_list_passes_vacuously() {
    let cfg = scratch("empty.json", r#"{"seed": 3, "suites": []}"#);
    let out = opnorm(&["run", &cfg], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite_count"], 0);
    assert!(v["notes"][0].as_str().unwrap().contains("vacuous"));
}

#[test]
fn seed_override_from_environment() {
    let cfg = scratch(
        "seeded.json",
        r#"{"seed": 3, "suites": [{"suite": "prop5", "pairs": 50, "norm": {"constructor": "mult_norm_ck", "grid_size": 4}}]}"#,
    );
    let plain = json(&opnorm(&["run", &cfg], None));
    let over = opnorm(&["run", &cfg], Some("99"));
    assert_eq!(over.status.code(), Some(0));
    let over = json(&over);
    assert_eq!(plain["seed"], 3);
    assert_eq!(over["seed"], 99);
    assert_ne!(plain["suites"][0]["seed"], over["suites"][0]["seed"]);
    assert!(over["notes"][0].as_str().unwrap().contains("OPNORM_SEED"));
    assert_eq!(opnorm(&["run", &cfg], Some("abc")).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let cfg = scratch("out.json", r#"{"seed": 3, "suites": [{"suite": "prop6", "matrices": 5}]}"#);
    let dest = Path::new(env!("CARGO_TARGET_TMPDIR")).join("report.json");
    let out = opnorm(&["run", &cfg, "--output", &dest.display().to_string()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dest).unwrap()).unwrap();
    assert_eq!(v["suites"][0]["name"], "prop6");
}

#[test]
fn describe_known_and_unknown() {
    let out = opnorm(&["describe", "embed-a6"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verifies:"));
    assert_eq!(opnorm(&["describe", "no-such-suite"], None).status.code(), Some(2));
}

#[test]
fn version_prints_schema() {
    let out = opnorm(&["version"], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("opnorm "));
}
