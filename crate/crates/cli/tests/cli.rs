use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realcat")).args(args).output().expect("binary runs")
}

fn json_out(o: &Output) -> Json {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn check_exit_codes() {
    let ok = run(&["check", &fixture("a2.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_out(&ok)["ok"], true);

    let broken = run(&["check", &fixture("broken_transitivity.json")]);
    assert_eq!(broken.status.code(), Some(1));
    let v = &json_out(&broken)["violation"];
    assert_eq!(v["kind"], "transitivity");
    assert_eq!((v["x"].as_u64(), v["y"].as_u64(), v["z"].as_u64()), (Some(0), Some(1), Some(2)));

    assert_eq!(run(&["check", &fixture("malformed.json")]).status.code(), Some(2));
    assert_eq!(run(&["check", &fixture("missing.json")]).status.code(), Some(2));
}

#[test]
fn classify_g5_is_conically_flat_only() {
    let o = run(&["classify", &fixture("g5.json"), &fixture("g5_phi.json")]);
    assert_eq!(o.status.code(), Some(0));
    let flags = &json_out(&o)["flags"];
    assert_eq!(flags["conically_flat"], true);
    for k in ["representable", "cauchy", "ideal", "flat"] {
        assert_eq!(flags[k], false, "{k}");
    }
}

#[test]
fn classify_yoneda_all_true() {
    let o = run(&["classify", &fixture("a2.json"), &fixture("a2_yoneda_a.json"), "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = json_out(&o);
    assert_eq!(rep["seed"], 7);
    assert_eq!(rep["representing"], "a");
    for k in ["representable", "cauchy", "ideal", "conically_flat", "flat"] {
        assert_eq!(rep["flags"][k], true, "{k}");
    }
}

#[test]
fn classify_size_mismatch() {
    let o = run(&["classify", &fixture("a2.json"), &fixture("a2_short.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn laws_suites() {
    let o = run(&["laws", "tnorm", "--tnorm", "lukasiewicz"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = json_out(&o);
    assert_eq!(rep["pass"], true);
    assert_eq!(rep["seed"], 0);
    assert_eq!(rep["grid"], "{0, 1/6, 1/3, 1/2, 2/3, 5/6, 1}");
    assert_eq!(run(&["laws", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["laws", "tnorm", "--tnorm", "bogus"]).status.code(), Some(2));
}

#[test]
fn laws_deterministic_under_seed() {
    let a = run(&["laws", "kz", "--tnorm", "godel", "--seed", "42"]);
    let b = run(&["laws", "kz", "--tnorm", "godel", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn balls_dot_has_eight_nodes() {
    let o = run(&["balls", &fixture("a2.json"), "--grid", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = String::from_utf8(o.stdout).unwrap();
    assert!(dot.starts_with("digraph {"));
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count();
    assert_eq!(nodes, 8);
    assert!(dot.contains("\"a@1/3\" -> \"a@2/3\";"));
}

#[test]
fn bound_exceeded_exit_code() {
    let o = run(&["complete", &fixture("g5.json"), "--bound", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn complete_twin_and_round_trip() {
    let o = run(&["complete", &fixture("twin.json")]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_out(&o);
    assert_eq!(doc["hom"].as_array().unwrap().len(), 1);
    assert_eq!(doc["embedding"], serde_json::json!([0, 0]));

    let dir = std::env::temp_dir().join(format!("realcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a2 = run(&["complete", &fixture("a2.json")]);
    let once = json_out(&a2);
    let path = dir.join("a2_complete.json");
    std::fs::write(&path, serde_json::to_string(&once).unwrap()).unwrap();
    let p = path.to_string_lossy();
    assert_eq!(run(&["check", &p]).status.code(), Some(0));
    let twice = json_out(&run(&["complete", &p]));
    assert_eq!(twice["hom"], once["hom"]);
    assert_eq!(twice["embedding"], serde_json::json!([0, 1]));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn float_mode() {
    let o = run(&["classify", &fixture("a2.json"), &fixture("a2_yoneda_a.json"), "--mode", "float"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = json_out(&o);
    assert_eq!(rep["flags"]["flat"], true);
    assert_eq!(rep["flat"]["family"], "sampled");
    let o = run(&["balls", &fixture("a2.json"), "--mode", "float", "--grid", "1/3"]);
    assert_eq!(o.status.code(), Some(1));
}
