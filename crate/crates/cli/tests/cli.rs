use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sepgraph(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sepgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = sepgraph(args, stdin);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn error_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

fn gen(spec: &str, seed: &str) -> String {
    ok(&["gen", spec, "--seed", seed], "")
}

#[test]
fn ring_pipeline() {
    let scene = gen("ring(4)", "0");
    let report = ok(&["sep2"], &scene);
    let v: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["command"], "sep2");
    assert_eq!(v["result"]["size"], 4);
    let verdict: Value = serde_json::from_str(&ok(&["verify"], &report)).unwrap();
    assert_eq!(verdict["verified"], true);

    let removed = ok(&["remove", "--budget", "1"], &scene);
    let v: Value = serde_json::from_str(&removed).unwrap();
    assert_eq!(v["result"]["deleted"].as_array().unwrap().len(), 1);
    ok(&["verify"], &removed);

    let approx = ok(&["remove", "--mode", "approx", "--report-ratio"], &scene);
    ok(&["verify"], &approx);
}

#[test]
fn exit_codes() {
    let scene = gen("ring(3)", "0");
    let out = sepgraph(&["remove", "--budget", "0"], &scene);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_json(&out)["exit_code"], 2);

    let out = sepgraph(&["sep2"], "{ not json");
    assert_eq!(out.status.code(), Some(1));

    let out = sepgraph(&["frobnicate"], "");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["exit_code"], 1);

    let out = sepgraph(&["gen", "ring(2)"], "");
    assert_eq!(out.status.code(), Some(1));

    let degenerate = r#"{"points": [{"name": "s", "x": "5", "y": "5"}, {"name": "t", "x": "9", "y": "9"}],
        "obstacles": [{"id": 0, "polygon": [["0", "0"], ["1", "1"], ["2", "2"]]}]}"#;
    let out = sepgraph(&["sep2"], degenerate);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(error_json(&out)["violations"].as_array().is_some_and(|v| !v.is_empty()));

    assert_eq!(sepgraph(&["--help"], "").status.code(), Some(0));
}

#[test]
fn tampered_report_fails_verification() {
    let scene = gen("random-bars(6,2)", "2");
    let report = ok(&["psep", "--strategy", "section6"], &scene);
    let mut v: Value = serde_json::from_str(&report).unwrap();
    ok(&["verify"], &report);
    v["result"]["separator"].as_array_mut().unwrap().pop();
    let out = sepgraph(&["verify"], &v.to_string());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn files_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("scene.json");
    let svg = dir.path().join("ring.svg");
    let scene_s = scene.to_str().unwrap();
    let svg_s = svg.to_str().unwrap();
    ok(&["gen", "perturbed-ring(5)", "--seed", "3", "--out", scene_s], "");
    assert_eq!(std::fs::read_to_string(&scene).unwrap(), gen("perturbed-ring(5)", "3"));
    assert_ne!(gen("perturbed-ring(5)", "3"), gen("perturbed-ring(5)", "4"));

    ok(&["render", "--in", scene_s, "--out", svg_s], "");
    let first = std::fs::read_to_string(&svg).unwrap();
    assert!(first.starts_with("<svg") && first.contains("obstacle-4"));
    assert_eq!(first, ok(&["render", "--in", scene_s], ""));

    let report = ok(&["sep2", "--in", scene_s], "");
    let drawn = ok(&["render"], &report);
    assert!(drawn.contains("curve-0"));

    let dot = ok(&["export", "--in", scene_s, "--format", "dot"], "");
    assert!(dot.contains("graph"));
}
