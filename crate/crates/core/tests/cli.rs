use std::path::PathBuf;
use std::process::Command;

use coxtwist::cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("coxtwist").chain(args.iter().copied()).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn decide_pair() {
    let (code, out, _) = call(&["decide", &fixture("pair_left.cox"), &fixture("pair_right.cox")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "isomorphic");
    assert_eq!(v["moves"].as_array().unwrap().len(), 1);
    assert_eq!(v["moves"][0]["kind"], "cross_eyed");
}

#[test]
fn decide_writes_certificate_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let (code, out, _) =
        call(&["decide", &fixture("pair_left.cox"), &fixture("pair_right.cox"), "--certificate", cert.to_str().unwrap(), "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&cert).unwrap(), out);
    assert_eq!(json(&out)["verification"]["certificate_replayed"], true);
}

#[test]
fn decide_not_isomorphic_and_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let seven = dir.path().join("seven.cox");
    std::fs::write(&seven, "cox 1\ngen a b c d\nedge a b 2\nedge a c 3\nedge b c 7\nedge a d 3\nedge b d 2\n").unwrap();
    let (code, out, _) = call(&["decide", &fixture("pair_left.cox"), seven.to_str().unwrap()]);
    assert_eq!((code, json(&out)["verdict"].clone()), (1, Value::from("not_isomorphic")));
    let square = dir.path().join("square.cox");
    std::fs::write(&square, "cox 1\ngen a b c d\nedge a b 3\nedge b c 3\nedge c d 3\nedge a d 3\n").unwrap();
    let (code, out, _) = call(&["decide", square.to_str().unwrap(), square.to_str().unwrap()]);
    assert_eq!((code, json(&out)["verdict"].clone()), (3, Value::from("unsupported")));
}

#[test]
fn orbit_without_cross_eyed_moves() {
    let (code, out, _) = call(&["orbit", &fixture("pair_left.cox"), "--no-cross-eyed"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["count"], 1);
    let (code, out, _) = call(&["orbit", &fixture("four_forms.cox")]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["count"], 4);
    let (code, out, err) = call(&["orbit", &fixture("four_forms.cox"), "--max", "2"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["complete"], false);
    assert!(err.contains("truncated"));
}

#[test]
fn check_star() {
    let (code, out, _) = call(&["check", &fixture("star.cox")]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["chordality"]["chordal"], true);
    let seps: Vec<Value> = v["bad_edges"][0]["bad_separators"].as_array().unwrap().iter().map(|s| s["members"].clone()).collect();
    assert_eq!(seps, vec![serde_json::json!(["a", "b"]), serde_json::json!(["a", "b", "d"])]);
    assert_eq!(v["bad_edges"][0]["star_decomposition"]["center"], serde_json::json!(["a", "b", "c", "d"]));
}

#[test]
fn canon_twists_expand_export() {
    let (code, out, _) = call(&["canon", &fixture("pair_left.cox")]);
    assert_eq!(code, 0);
    let (_, out_r, _) = call(&["canon", &fixture("pair_right.cox")]);
    assert_ne!(json(&out)["canonical_form"], json(&out_r)["canonical_form"]);

    let (code, out, _) = call(&["twists", &fixture("pair_left.cox")]);
    assert_eq!((code, json(&out)["count"].clone()), (0, Value::from(0)));

    let (code, out, _) = call(&["expand", &fixture("pair_left.cox")]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["log"], serde_json::json!([]));

    let (code, out, _) = call(&["export", &fixture("pair_left.cox"), "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph P {"));
    let (code, _, err) = call(&["export", &fixture("pair_left.cox"), "--format", "svg"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn apply_and_cross_eye() {
    let (code, out, _) = call(&["cross-eye", &fixture("pair_left.cox"), "--edge", "b,c", "--format", "cox"]);
    assert_eq!(code, 0);
    assert!(out.contains("edge b d 3"));
    let (code, _, _) = call(&["cross-eye", &fixture("pair_left.cox"), "--edge", "a,c"]);
    assert_eq!(code, 2);
    let mv = r#"{"kind":"cross_eyed","edge":["b","c"]}"#;
    let (code, out2, _) = call(&["apply", &fixture("pair_left.cox"), "--move", mv, "--format", "cox"]);
    assert_eq!((code, out2), (0, out));
    let (code, _, _) = call(&["apply", &fixture("pair_left.cox"), "--move", "{}"]);
    assert_eq!(code, 2);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cox");
    std::fs::write(&bad, "cox 1\ngen a\nedge a b 3\n").unwrap();
    let (code, _, err) = call(&["canon", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"));
    assert_eq!(call(&["canon", "/nonexistent/x.cox"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let a = call(&["orbit", &fixture("four_forms.cox")]);
    let b = call(&["orbit", &fixture("four_forms.cox")]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_coxtwist");
    let status = Command::new(bin).args(["decide", &fixture("pair_left.cox"), &fixture("pair_right.cox")]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stderr.is_empty());
    let status = Command::new(bin).args(["check"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}
