use std::process::{Command, Output};

use serde_json::Value;

const TWO_POINT: &str = r#"{"schema":{"family":"Qmn","m":3,"n":2},"dims":[[0,1],[5,1]],"mats":[]}"#;
const G32: &str = r#"{"kind":"g","m":3,"n":2}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivrep")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn end_grows_under_g() {
    let e = json(&["end", TWO_POINT]);
    assert_eq!(e["dim"], 2);
    let out = json(&["pushforward", G32, TWO_POINT]);
    let img = serde_json::to_string(&out).unwrap();
    assert_eq!(json(&["end", &img])["dim"], 4);
}

#[test]
fn catalog_and_classify() {
    let text = run(&["catalog", "interval", "--m", "3", "--n", "2", "--window", "0", "2"]);
    assert!(text.status.success());
    assert!(String::from_utf8_lossy(&text.stdout).contains("4 entries"));
    let c = json(&["classify", "--m", "3", "--n", "2", "--window", "0", "2", "--dim-max", "2", "--samples", "40"]);
    assert_eq!(c["classes"], 4);
}

#[test]
fn lift_path_on_cycle() {
    let out = run(&["lift-path", G32, r#"[["rho",0],["rhobar",1]]"#, "--at", "0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "rho2^-2 rho1^-5");
}

#[test]
fn errors_exit_with_two() {
    let out = run(&["end", "{\"schema\":"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn printed_check_fails_unless_expected() {
    let out = run(&["suite", "--only", "v-lambda-printed"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["suite", "--only", "v-lambda-printed", "--expect-fail", "v-lambda-printed"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}
