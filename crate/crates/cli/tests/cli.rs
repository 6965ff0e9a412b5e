use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn strebel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strebel")).args(args).env_remove("STREBEL_PRECISION_BITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses the JSON a command prints and checks that it survives a second round.
fn json_of(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let o = strebel(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again, "{args:?}");
    v
}

#[test]
fn min_degree_of_the_mixed_triple() {
    let o = strebel(&["min-degree", "1/3", "1/6", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "12");
    assert_eq!(stdout(&strebel(&["belyi", "min-degree", "1/2", "1/4", "1/4"])).trim(), "8");
}

#[test]
fn reproduction_suites_pass() {
    for suite in ["thm1", "examples"] {
        let o = strebel(&["reproduce-paper", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("[FAIL]"));
    }
    let v = json_of(&["reproduce-paper", "--suite", "all"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 14);
}

#[test]
fn exit_codes() {
    assert_eq!(strebel(&["reproduce-paper", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(strebel(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(strebel(&["find-mu", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(strebel(&["classify", "--lambda", "x", "--mu", "0"]).status.code(), Some(2));
    assert_eq!(strebel(&["find-mu", "--lambda", "0.6", "--tol", "1e-40"]).status.code(), Some(2));
    let o = strebel(&["edge-lengths", "--lambda", "2", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let diag: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(diag["error"]["kind"], "domain");
    assert_eq!(strebel(&["belyi", "verify-deg8"]).status.code(), Some(0));
}

#[test]
fn precision_from_the_environment() {
    let run = |bits: &str| {
        Command::new(env!("CARGO_BIN_EXE_strebel"))
            .args(["find-mu", "--lambda", "0.75", "--json"])
            .env("STREBEL_PRECISION_BITS", bits)
            .output()
            .unwrap()
    };
    assert_eq!(run("32").status.code(), Some(2));
    let o = run("192");
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["mu"][0].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn json_outputs_round_trip() {
    let c = json_of(&["classify", "--lambda", "1/2", "--mu", "1"]);
    assert_eq!(c["class"], "2+2");
    let q: strebel::qdiff::QuadDiff = serde_json::from_value(c["differential"].clone()).unwrap();
    assert_eq!(q.params().unwrap().lambda.to_string(), "1/2");

    assert_eq!(json_of(&["mu-of-lambda", "4/5"])["mu"], "2/5");
    let d = json_of(&["divisor", "--lambda", "2", "--mu", "0"]);
    assert_eq!(d["degree"], "2");
    assert!(d["zeros"].as_array().unwrap().iter().all(|z| z["angle_over_pi"] == "3"));

    let p = json_of(&["pullback", "--map", "case1", "--diff", "q0"]);
    let q: strebel::qdiff::QuadDiff = serde_json::from_value(p).unwrap();
    assert_eq!(q.r().to_string(), "(16*z^2) / (z^8 - 2*z^4 + 1)");

    let pp = json_of(&["belyi", "passport", "--map", "deg12theta"]);
    assert_eq!(pp["passport"]["over_inf"], serde_json::json!([2, 2, 2, 2, 2, 2]));
    let inline = json_of(&["belyi", "passport", "--map", r#"{"num":["0","0","0","0","1"],"den":["1"]}"#]);
    assert_eq!(inline["degree"], 4);

    let m = json_of(&["find-mu", "--lambda", "1/2-0.8660254037844386*i"]);
    assert!((m["mu"][1].as_f64().unwrap() + 3f64.sqrt() / 3.0).abs() < 1e-9);
    let per = json_of(&["periods", "--lambda", "0.9", "--mu", "0.2"]);
    assert_eq!(per["zeros"].as_array().unwrap().len(), 2);
    let e = json_of(&["edge-lengths", "--lambda", "1/2+1.7677669529663689*i", "--mu", "1+2.1213203435596424*i"]);
    let mut l: Vec<f64> = e["lengths"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    l.sort_by(f64::total_cmp);
    assert!((l[0] - 0.25).abs() < 1e-6 && (l[1] - 0.25).abs() < 1e-6 && (l[2] - 0.5).abs() < 1e-6);

    let dess = json_of(&["ribbon", "dessin", "1/3", "1/3", "1/3"]);
    assert_eq!(dess["degree"], 12);
    assert_eq!(dess["genus"], 0);
}

#[test]
fn enumerated_graph_feeds_the_automorphism_command() {
    let v = json_of(&["ribbon", "enumerate", "--degrees", "3,3,3,3", "--faces", "4", "--loopless", "--feasible", "1,1,1,1"]);
    assert_eq!(v["count"], 2);
    let k4 = v["graphs"].as_array().unwrap().iter().find(|g| g["feasibility"]["kind"] == "family").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.json");
    fs::write(&path, serde_json::to_string(&k4["graph"]).unwrap()).unwrap();
    let a = json_of(&["ribbon", "aut", path.to_str().unwrap()]);
    assert_eq!(a["automorphisms"]["order"], 12);
}

#[test]
fn trace_svg_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = (0..2).map(|k| dir.path().join(format!("t{k}.svg"))).collect();
    for f in &files {
        let o = strebel(&["trace", "--map", "q0p", "--start", "1/2+1/2*i", "--svg", f.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(stdout(&o).contains("q-length 1.0000000000"));
    }
    let (a, b) = (fs::read(&files[0]).unwrap(), fs::read(&files[1]).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<svg") && text.contains("viewBox=\"0 0 1000 1000\""));
    let printed = strebel(&["trace", "--map", "q0p", "--start", "1/2+1/2*i", "--format", "svg"]);
    assert_eq!(stdout(&printed), text.trim_end().to_string() + "\n");
    assert_eq!(strebel(&["min-degree", "1/3", "1/6", "1/2", "--format", "svg"]).status.code(), Some(2));
}
