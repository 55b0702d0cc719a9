use std::process::{Command, Output};

use serde_json::Value;

fn farey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = farey(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn expand_example() {
    let v = json(&["expand", "--x", "2/1", "--t", "5/7"]);
    assert_eq!(v["digits"], serde_json::json!([1, 1, 3]));
    assert_eq!(v["status"], "Finite");
}

#[test]
fn expand_reports_certified_infinite_for_half() {
    let v = json(&["expand", "--x", "1/2", "--t", "1/2", "--max-steps", "500"]);
    assert_eq!(v["status"], "CertifiedInfinite");
    assert!(v["reason"]["kind"].is_string());
}

#[test]
fn usage_errors_exit_two_with_synopsis() {
    for args in [
        &["expand", "--x", "0.5", "--t", "1/3"][..],
        &["tree", "--variant", "sideways", "--depth", "2"],
        &["density", "--alpha", "1/2"],
        &["--threads", "0", "tree", "--variant", "forward", "--depth", "1"],
        &["roots"],
    ] {
        let out = farey(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = farey(&["expand", "--x", "0.5", "--t", "1/3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn failing_verdict_exits_one() {
    // The pole-limit halving bound does not hold on random vertices.
    let out = farey(&["verify", "--suite", "halving", "--samples", "3", "--steps", "6", "--max-n", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failed = v["results"].as_array().unwrap().iter().find(|c| c["passed"] == false).unwrap();
    assert!(!failed["detail"].is_null());
}

#[test]
fn verify_structure_passes() {
    let v = json(&["verify", "--suite", "structure", "--depth", "6"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["failures"], 0);
}

#[test]
fn scatter_csv_header() {
    let out = farey(&["scatter", "--variant", "forward", "--depth", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("level,side,re,im"));
    assert!(text.lines().count() > 1);
}

#[test]
fn single_thread_runs_are_byte_identical() {
    let args = ["--threads", "1", "verify", "--suite", "roundtrip", "--max-den", "20", "--depth", "6"];
    let a = farey(&args);
    let b = farey(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn backward_tree_uses_branch_words() {
    let v = json(&["tree", "--variant", "backward", "--depth", "2"]);
    let nodes = v.as_array().unwrap();
    assert_eq!(nodes.len(), 3);
    assert_eq!(nodes[1]["branchWord"], "1");
    assert_eq!(nodes[2]["p"], serde_json::json!(["2"]));
    assert_eq!(nodes[2]["q"], serde_json::json!(["2", "1"]));
}

#[test]
fn eval_label_encloses_value() {
    // [2]_1 = 1/2.
    let v = json(&["eval-label", "--digits", "2", "--x", "1"]);
    let text = v.to_string();
    assert!(text.contains("1/2"), "{text}");
}

#[test]
fn dynamics_reports_entropy_and_residual() {
    let v = json(&["dynamics", "--x", "1", "--orbit-length", "20000", "--bins", "4"]);
    assert_eq!(v["histogram"].as_array().unwrap().len(), 4);
    let rokhlin = v["entropyRokhlin"].as_f64().unwrap();
    let classical = std::f64::consts::PI.powi(2) / (6.0 * std::f64::consts::LN_2);
    assert!((rokhlin - classical).abs() < 1e-9);
    assert!(v["invarianceResidual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn help_goes_to_stdout() {
    let out = farey(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("expand"));
}
