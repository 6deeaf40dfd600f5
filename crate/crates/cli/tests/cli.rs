use std::io::Write;
use std::process::{Command, Output, Stdio};

use satake_core::cone::{ConeJson, RationalCone};
use satake_core::exec::Exec;
use satake_core::fans::build_fan_ft;
use satake_core::{ParabolicSubset, RootDatum};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satake-fans"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_satake-fans"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn num_cones(v: &Value) -> usize {
    v["cones"].as_array().unwrap().len()
}

#[test]
fn fan_sizes_in_rank_one_and_two() {
    assert_eq!(num_cones(&json(&["fan", "-r", "A2", "--samples", "50"])), 13);
    assert_eq!(num_cones(&json(&["fan", "-r", "A2", "--type", "2", "--samples", "50"])), 7);
    assert_eq!(num_cones(&json(&["fan", "-r", "B2", "--samples", "50"])), 17);
    assert_eq!(num_cones(&json(&["fan", "-r", "G2", "--type", "1", "--samples", "50"])), 13);
}

#[test]
fn degenerate_type_warns_and_collapses() {
    let out = run(&["--json", "fan", "-r", "A1", "--type", "1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(num_cones(&v), 1);
}

#[test]
fn fan_cones_round_trip_through_json() {
    let v = json(&["fan", "-r", "B2", "--type", "1", "--samples", "20"]);
    let rd = RootDatum::new("B2").unwrap();
    let fan = build_fan_ft(&rd, ParabolicSubset::parse("1", 2).unwrap(), Exec::Sequential).unwrap();
    let cones = v["cones"].as_array().unwrap();
    assert_eq!(cones.len(), fan.cones().len());
    for (c, expected) in cones.iter().zip(fan.cones()) {
        let cj: ConeJson = serde_json::from_value(c.clone()).unwrap();
        let back = RationalCone::from_json(2, &cj).unwrap();
        assert_eq!(&back, expected);
    }
}

#[test]
fn classify_sequence_examples() {
    let v = json(&["classify-seq", "--a", "0,1,2", "--b", "1,0,0"]);
    assert_eq!(v["limit"]["exps"], serde_json::json!(["0", "-inf", "-inf"]));

    // Equal growth rates: the limit keeps the offsets.
    let v = json(&["classify-seq", "--a", "0,-1/2,3", "--b", "1,1,0"]);
    assert_eq!(v["limit"]["exps"], serde_json::json!(["0", "-1/2", "-inf"]));

    // Constant sequences converge to their own class.
    let v = json(&["classify-seq", "--a", "2,5", "--b", "0,0"]);
    assert_eq!(v["limit"]["exps"], serde_json::json!(["-3", "0"]));

    let out = run_stdin(&["--json", "classify-seq", "--input", "-"], r#"{"a": ["0", "1"], "b": ["-1", "0"]}"#);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["limit"]["exps"], serde_json::json!(["-inf", "0"]));
}

#[test]
fn classify_sequence_from_json() {
    let cases = [
        (r#"{"a": ["0", "0", "0"], "b": ["2", "2", "1"]}"#, serde_json::json!([0, 1]), serde_json::json!(["0", "0", "-inf"])),
        (r#"{"a": ["0"], "b": ["0"]}"#, serde_json::json!([0]), serde_json::json!(["0"])),
        (r#"{"a": ["5", "0"], "b": ["1", "1"]}"#, serde_json::json!([0, 1]), serde_json::json!(["0", "-5"])),
    ];
    for (input, index_set, limit) in cases {
        let out = run_stdin(&["--json", "classify-seq", "--input", "-"], input);
        assert!(out.status.success(), "{input}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["index_set"], index_set, "{input}");
        assert_eq!(v["limit"]["exps"], limit, "{input}");
    }
    let out = run_stdin(&["classify-seq", "--input", "-"], r#"{"a": ["#);
    assert_eq!(out.status.code(), Some(2));
    let out = run_stdin(&["classify-seq", "--input", "-"], r#"{"a": ["1"], "b": ["1", "2"]}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seminorm_round_trips_through_json() {
    let v = json(&["seminorm", "--exps", "0,1,-inf,1/2"]);
    let input = serde_json::json!({ "exps": v["seminorm"]["exps"], "q": v["q"] }).to_string();
    let out = run_stdin(&["--json", "seminorm", "--input", "-"], &input);
    assert!(out.status.success());
    let w: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, w);
    assert_eq!(v["class"]["exps"], serde_json::json!(["-1", "0", "-inf", "-1/2"]));
}

#[test]
fn seminorm_rejects_the_zero_seminorm() {
    let out = run(&["seminorm", "--exps", "-inf,-inf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn admissible_and_weights() {
    let v = json(&["admissible", "-r", "A2", "--highest-weight", "1,0"]);
    assert_eq!(v["fan_equal"], Value::Bool(true));
    let v = json(&["weights", "-r", "B2", "--highest-weight", "0,1"]);
    assert_eq!(v["count"], 4);
    let v = json(&["weights", "-r", "A2", "--highest-weight", "1,0", "--basis-word", "1"]);
    assert!(v["basis_highest_weight"].is_array());
}

#[test]
fn embed_matches_the_fan() {
    let v = json(&["embed", "-r", "A2", "--highest-weight", "1,0", "--point", "1,-1/2", "--probe", "3"]);
    assert_eq!(v["fan_match"], Value::Bool(true));
    assert_eq!(v["weights"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_passes_and_injected_faults_fail() {
    let out = run(&["verify", "--only", "sequence-limits,cone-chain"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    for id in ["sequence-limits", "cone-chain", "pullback-fan"] {
        let out = run(&["verify", "--only", id, "--inject-fault", id]);
        assert_eq!(out.status.code(), Some(1), "{id}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["fan", "-r", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["fan", "-r", "A2", "--type", "7"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--only", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["admissible", "-r", "A2", "--highest-weight", "1"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "fan", "-r", "B2", "--type", "2", "--samples", "40", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    let c = run(&seq);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v1 = run(&["--json", "verify", "--only", "representatives"]);
    let v2 = run(&["--json", "verify", "--only", "representatives", "--sequential"]);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["parallel"] = Value::Null;
        v
    };
    assert_eq!(strip(&v1), strip(&v2));
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("satake-fans-{}.json", std::process::id()));
    let out = run(&["--json", "-o", path.to_str().unwrap(), "relevant", "-r", "A2", "--type", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["parabolics"].as_array().unwrap().len(), 4);
}
