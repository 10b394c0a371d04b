use std::path::PathBuf;
use std::process::{Command, Output};

fn specs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_advclass-ne")).args(args).output().unwrap()
}

fn spec(name: &str) -> String {
    specs().join(name).to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_two_feature_game() {
    let out = run(&["solve", &spec("two_feature.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["case"], "iii");
    assert_eq!(doc["verification"]["passed"], true);
    assert!((doc["payoffs"]["defender"].as_f64().unwrap() + 5.172).abs() < 1e-9);
}

#[test]
fn zero_noise_level_is_a_model_error() {
    let out = run(&["solve", &spec("zero_noise.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_spec_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"p\": 0.2,\n \"c_d\": }").unwrap();
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["solve", "/nonexistent/spec.json"]).status.code(), Some(2));
}

#[test]
fn verify_accepts_solve_output() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["two_feature.json", "reference_binomial.json"] {
        let doc = dir.path().join(format!("solved-{name}"));
        let out = run(&["solve", &spec(name), "--out", doc.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let out = run(&["verify", &spec(name), doc.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn verify_rejects_a_non_equilibrium() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("uniform.json");
    let beta: serde_json::Map<String, serde_json::Value> = [">=2", ">=3", ">=4", ">=4.1", ">=5.1", ">=6.1", "never"]
        .iter()
        .map(|l| (l.to_string(), serde_json::json!(1.0 / 7.0)))
        .collect();
    let doc = serde_json::json!({ "alpha": { "a2-high": 1.0 }, "beta": beta });
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["verify", &spec("two_feature.json"), path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verification"]["passed"], false);
}

#[test]
fn verify_reports_unknown_labels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.json");
    std::fs::write(&path, r#"{"alpha": {"a9-high": 1.0}, "beta": {"never": 1.0}}"#).unwrap();
    let out = run(&["verify", &spec("two_feature.json"), path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a9-high"));
}

#[test]
fn false_alarm_sweep_has_one_row_per_grid_point() {
    let out = run(&["sweep", &spec("reference_binomial.json"), "--param", "c_fa", "--grid", "50:300:10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param,value,k,attacker_payoff_lo,attacker_payoff_hi,defender_payoff,verified");
    assert_eq!(lines.len(), 27);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn degenerate_prior_grid_points_become_error_rows() {
    let out = run(&["sweep", &spec("reference_binomial.json"), "--param", "p", "--grid", "0:1:0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "p,0,,,,,error");
    assert!(lines[2].starts_with("p,0.5,") && lines[2].ends_with(",true"));
    assert_eq!(lines[3], "p,1,,,,,error");
}

#[test]
fn scenario_csv() {
    let out = run(&["scenario"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("scenario,defender_payoff,attacker_payoff\n1,-5.46,"));
}

#[test]
fn fuzz_passes_and_is_reproducible() {
    let a = run(&["fuzz", "--seed", "11", "--count", "40", "--json"]);
    let b = run(&["fuzz", "--seed", "11", "--count", "40", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["sweep", &spec("reference_binomial.json"), "--param", "c_a", "--grid", "1:20:1"];
    let one = Command::new(env!("CARGO_BIN_EXE_advclass-ne")).args(args).env("ADVCLASS_NE_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_advclass-ne")).args(args).env("ADVCLASS_NE_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, many.stdout);
}
