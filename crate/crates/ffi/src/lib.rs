//! C interface to the workbench.
//!
//! Representations and quiver morphisms cross the boundary as opaque handles
//! built from the JSON formats of `quivrep_core::io`. Every call returns a
//! [`QuivrepStatus`]; on failure the message is available from
//! [`quivrep_last_error`] until the next call on the same thread. Strings
//! returned through `char **` belong to the caller and are released with
//! [`quivrep_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use quivrep_core::functors::{is_covering, pushforward_left, pushforward_right, QuiverMorphism};
use quivrep_core::io::{parse_json, quiver_morphism_from_json, rep_from_json, rep_to_json};
use quivrep_core::quiver::Window;
use quivrep_core::rep::{check_relations, decompose, hom_dim, is_indecomposable, iso, standard_relations, EndAlgebra, IsoResult};
use quivrep_core::rep::{Indecomposability, Representation};
use quivrep_core::workbench::{run_suite, SuiteConfig};
use quivrep_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuivrepStatus {
    Ok = 0,
    Domain = 1,
    Unsupported = 2,
    Shape = 3,
    Parse = 4,
    NullArgument = 5,
    Internal = 6,
}

/// A representation.
pub struct QuivrepRep(Arc<Representation>);

/// A quiver morphism (`f`, `g` or a finite table).
pub struct QuivrepMorphism(QuiverMorphism);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QuivrepStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QuivrepStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer passed as {what}"));
            QuivrepStatus::NullArgument
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            match e {
                Error::Domain(_) => QuivrepStatus::Domain,
                Error::Unsupported(_) => QuivrepStatus::Unsupported,
                Error::Shape(_) => QuivrepStatus::Shape,
                Error::Parse(_) => QuivrepStatus::Parse,
            }
        }
        Err(_) => {
            set_error("internal panic".into());
            QuivrepStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Core(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn get<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

/// Message of the last failed call on this thread, or NULL.
#[no_mangle]
pub extern "C" fn quivrep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn quivrep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_rep_from_json(json: *const c_char, out: *mut *mut QuivrepRep) -> QuivrepStatus {
    guard(|| {
        let v = rep_from_json(&parse_json(text(json, "json")?)?)?;
        put(out, Box::into_raw(Box::new(QuivrepRep(Arc::new(v)))), "out")
    })
}

/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_rep_to_json(rep: *const QuivrepRep, out: *mut *mut c_char) -> QuivrepStatus {
    guard(|| {
        let r = get(rep, "rep")?;
        put(out, owned_string(rep_to_json(&r.0).to_string()), "out")
    })
}

/// # Safety
/// `rep` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn quivrep_rep_free(rep: *mut QuivrepRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_rep_total_dim(rep: *const QuivrepRep, out: *mut usize) -> QuivrepStatus {
    guard(|| put(out, get(rep, "rep")?.0.total_dim(), "out"))
}

/// Number of violated generators of the quiver's standard relations.
///
/// # Safety
/// `rep` must be a live handle and `violations` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_check_relations(rep: *const QuivrepRep, violations: *mut usize) -> QuivrepStatus {
    guard(|| {
        let v = &get(rep, "rep")?.0;
        let n = check_relations(v, &standard_relations(v)?)?.len();
        put(violations, n, "violations")
    })
}

/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_hom_dim(v: *const QuivrepRep, u: *const QuivrepRep, out: *mut usize) -> QuivrepStatus {
    guard(|| {
        let d = hom_dim(&get(v, "v")?.0, &get(u, "u")?.0)?;
        put(out, d, "out")
    })
}

/// Dimension of `End(V)` and of its radical.
///
/// # Safety
/// `rep` must be a live handle; `dim` and `radical_dim` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_end_dims(rep: *const QuivrepRep, dim: *mut usize, radical_dim: *mut usize) -> QuivrepStatus {
    guard(|| {
        let e = EndAlgebra::new(&get(rep, "rep")?.0)?;
        put(dim, e.dim(), "dim")?;
        put(radical_dim, e.radical_dim(), "radical_dim")
    })
}

/// Writes 1 (indecomposable), 0 (decomposable) or -1 (uncertified).
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_is_indecomposable(rep: *const QuivrepRep, seed: u64, out: *mut c_int) -> QuivrepStatus {
    guard(|| {
        let r = match is_indecomposable(&get(rep, "rep")?.0, seed)? {
            Indecomposability::Yes => 1,
            Indecomposability::No { .. } => 0,
            Indecomposability::Uncertified => -1,
        };
        put(out, r, "out")
    })
}

/// Writes 1 (isomorphic), 0 (not) or -1 (undecided).
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_iso(v: *const QuivrepRep, u: *const QuivrepRep, seed: u64, out: *mut c_int) -> QuivrepStatus {
    guard(|| {
        let r = match iso(&get(v, "v")?.0, &get(u, "u")?.0, seed)? {
            IsoResult::Iso(_) => 1,
            IsoResult::NotIso => 0,
            IsoResult::Unknown => -1,
        };
        put(out, r, "out")
    })
}

/// Summands as a JSON array of `{"rep": ..., "certified": bool}`.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_decompose(rep: *const QuivrepRep, seed: u64, out: *mut *mut c_char) -> QuivrepStatus {
    guard(|| {
        let d = decompose(&get(rep, "rep")?.0, seed)?;
        let items: Vec<serde_json::Value> = d
            .summands
            .iter()
            .map(|s| serde_json::json!({"rep": rep_to_json(&s.rep), "certified": s.certified}))
            .collect();
        put(out, owned_string(serde_json::Value::Array(items).to_string()), "out")
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_morphism_from_json(json: *const c_char, out: *mut *mut QuivrepMorphism) -> QuivrepStatus {
    guard(|| {
        let phi = quiver_morphism_from_json(&parse_json(text(json, "json")?)?)?;
        put(out, Box::into_raw(Box::new(QuivrepMorphism(phi))), "out")
    })
}

/// # Safety
/// `phi` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn quivrep_morphism_free(phi: *mut QuivrepMorphism) {
    if !phi.is_null() {
        drop(Box::from_raw(phi));
    }
}

/// Left extension, or right extension when `right` is nonzero.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_pushforward(
    phi: *const QuivrepMorphism,
    rep: *const QuivrepRep,
    right: c_int,
    out: *mut *mut QuivrepRep,
) -> QuivrepStatus {
    guard(|| {
        let (phi, v) = (&get(phi, "phi")?.0, &get(rep, "rep")?.0);
        let w = if right != 0 { pushforward_right(phi, v)? } else { pushforward_left(phi, v)? };
        put(out, Box::into_raw(Box::new(QuivrepRep(Arc::new(w)))), "out")
    })
}

/// Covering check over `[a, b]` (the square `[a, b]^2` on the grid); writes 1 or 0.
///
/// # Safety
/// `phi` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_is_covering(phi: *const QuivrepMorphism, a: i64, b: i64, out: *mut c_int) -> QuivrepStatus {
    guard(|| {
        let phi = &get(phi, "phi")?.0;
        let w = match phi.source() {
            quivrep_core::quiver::QuiverSchema::QinfXinf => Window::rect((a, b), (a, b)),
            _ => Window::interval(a, b),
        };
        let yes = is_covering(phi, &w.vertices(phi.source())?)?.is_yes();
        put(out, yes as c_int, "out")
    })
}

/// Runs the full check suite; writes the JSON report and its exit status.
///
/// # Safety
/// `report` and `exit_status` must be writable.
#[no_mangle]
pub unsafe extern "C" fn quivrep_suite(seed: u64, report: *mut *mut c_char, exit_status: *mut c_int) -> QuivrepStatus {
    guard(|| {
        let r = run_suite(&SuiteConfig { seed, ..SuiteConfig::default() });
        let j = serde_json::to_string(&r).map_err(|e| Error::Parse(e.to_string()))?;
        put(exit_status, r.exit_status, "exit_status")?;
        put(report, owned_string(j), "report")
    })
}
