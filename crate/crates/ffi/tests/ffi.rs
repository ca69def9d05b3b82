use std::ffi::{c_char, c_int, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use quivrep_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn rep(json: &str) -> *mut QuivrepRep {
    let mut out = ptr::null_mut();
    let s = unsafe { quivrep_rep_from_json(c(json).as_ptr(), &mut out) };
    assert_eq!(s, QuivrepStatus::Ok);
    out
}

fn last_error() -> String {
    let p = quivrep_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

const TWO_POINT: &str = r#"{"schema":{"family":"Qmn","m":3,"n":2},"dims":[[0,1],[5,1]],"mats":[]}"#;

#[test]
fn end_dims_across_g() {
    unsafe {
        let v = rep(TWO_POINT);
        let mut g = ptr::null_mut();
        assert_eq!(quivrep_morphism_from_json(c(r#"{"kind":"g","m":3,"n":2}"#).as_ptr(), &mut g), QuivrepStatus::Ok);
        let mut w = ptr::null_mut();
        assert_eq!(quivrep_pushforward(g, v, 0, &mut w), QuivrepStatus::Ok);
        let (mut d, mut r) = (0usize, 0usize);
        assert_eq!(quivrep_end_dims(v, &mut d, &mut r), QuivrepStatus::Ok);
        assert_eq!((d, r), (2, 0));
        assert_eq!(quivrep_end_dims(w, &mut d, &mut r), QuivrepStatus::Ok);
        assert_eq!(d, 4);
        let mut total = 0usize;
        quivrep_rep_total_dim(w, &mut total);
        assert_eq!(total, 2);
        let mut cov: c_int = -1;
        assert_eq!(quivrep_is_covering(g, -10, 10, &mut cov), QuivrepStatus::Ok);
        assert_eq!(cov, 1);
        quivrep_rep_free(v);
        quivrep_rep_free(w);
        quivrep_morphism_free(g);
    }
}

#[test]
fn json_roundtrip_and_decompose() {
    unsafe {
        let v = rep(TWO_POINT);
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(quivrep_rep_to_json(v, &mut s), QuivrepStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        quivrep_string_free(s);
        let u = rep(&text);
        let mut yes: c_int = -2;
        assert_eq!(quivrep_iso(v, u, 0, &mut yes), QuivrepStatus::Ok);
        assert_eq!(yes, 1);
        let mut ind: c_int = -2;
        quivrep_is_indecomposable(v, 0, &mut ind);
        assert_eq!(ind, 0);
        let mut parts: *mut c_char = ptr::null_mut();
        assert_eq!(quivrep_decompose(v, 0, &mut parts), QuivrepStatus::Ok);
        let arr: serde_json::Value = serde_json::from_str(CStr::from_ptr(parts).to_str().unwrap()).unwrap();
        assert_eq!(arr.as_array().unwrap().len(), 2);
        quivrep_string_free(parts);
        let mut hom = 0usize;
        quivrep_hom_dim(v, u, &mut hom);
        assert_eq!(hom, 2);
        let mut viol = 9usize;
        quivrep_check_relations(v, &mut viol);
        assert_eq!(viol, 0);
        quivrep_rep_free(v);
        quivrep_rep_free(u);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(quivrep_rep_from_json(c("{").as_ptr(), &mut out), QuivrepStatus::Parse);
        assert!(out.is_null());
        assert!(last_error().contains("parse"));
        let bad = r#"{"schema":{"family":"Qmn","m":2,"n":4},"dims":[]}"#;
        assert_eq!(quivrep_rep_from_json(c(bad).as_ptr(), &mut out), QuivrepStatus::Domain);
        assert!(last_error().contains("gcd"));
        assert_eq!(quivrep_rep_from_json(ptr::null(), &mut out), QuivrepStatus::NullArgument);
        let mut n = 0usize;
        assert_eq!(quivrep_rep_total_dim(ptr::null(), &mut n), QuivrepStatus::NullArgument);
        // A successful call clears the message.
        let v = rep(TWO_POINT);
        assert!(quivrep_last_error().is_null());
        let mut g = ptr::null_mut();
        quivrep_morphism_from_json(c(r#"{"kind":"f"}"#).as_ptr(), &mut g);
        let mut w = ptr::null_mut();
        assert_eq!(quivrep_pushforward(g, v, 0, &mut w), QuivrepStatus::Domain);
        quivrep_rep_free(v);
        quivrep_morphism_free(g);
        quivrep_string_free(ptr::null_mut());
    }
}

fn cc() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .map(String::from)
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = dir.join("../../target").join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let lib = target.join("libquivrep_ffi.a");
    if !lib.exists() {
        eprintln!("static library not built yet; skipping");
        return;
    }
    let exe = std::env::temp_dir().join(format!("quivrep-smoke-{}", std::process::id()));
    let status = Command::new(&cc)
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("examples/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("End(V) 2\nEnd(g_! V) 4\n"), "{text}");
}
