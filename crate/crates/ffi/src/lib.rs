//! C interface. Objects cross the boundary as opaque handles created by a
//! `*_parse` or computing call and released with the matching `*_free`.
//! Every fallible call returns a [`ClonoidStatus`]; on failure
//! [`clonoid_last_error`] describes what went wrong. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! [`clonoid_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use clonoid::closure::{clonoid_slice, member, GeneratorFamily};
use clonoid::constructions::boolean;
use clonoid::terms::NuWitness;
use clonoid::text;
use clonoid::verify::run_verification;
use clonoid::{
    classify_boolean, cube_term_blocker, is_polymorphism, pol_slice, Algebra, Budget, Error,
    FiniteFunction, FunctionSet, RelationPair, Signature,
};
use serde_json::json;

/// Status codes; 0 to 3 match the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClonoidStatus {
    Ok = 0,
    /// A verification suite ran and some check failed.
    VerificationFailed = 1,
    InputError = 2,
    BudgetExceeded = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

pub struct ClonoidAlgebra(Algebra);
pub struct ClonoidFunction(FiniteFunction);
pub struct ClonoidFamily(GeneratorFamily);
pub struct ClonoidPairs(Vec<RelationPair>);
pub struct ClonoidSet(FunctionSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<ClonoidStatus, Failure>;

/// Runs `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Outcome) -> ClonoidStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            if status == ClonoidStatus::Ok {
                set_error("");
            }
            status
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            if e.is_budget() {
                ClonoidStatus::BudgetExceeded
            } else {
                ClonoidStatus::InputError
            }
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            ClonoidStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(&format!("{what} is not valid UTF-8"));
            ClonoidStatus::InvalidUtf8
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal error: {msg}"));
            ClonoidStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T, what: &'static str) -> Outcome {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(ClonoidStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(Failure::Null("string out-parameter"));
    }
    *out = CString::new(s)
        .map_err(|_| Error::Input("output contains a NUL byte".into()))?
        .into_raw();
    Ok(ClonoidStatus::Ok)
}

fn budget(max_set_size: usize) -> Result<Budget, Failure> {
    if max_set_size == 0 {
        Ok(Budget::default())
    } else {
        Ok(Budget::new(max_set_size)?)
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn clonoid_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn clonoid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn clonoid_algebra_free(p: *mut ClonoidAlgebra) {
    release(p)
}

/// # Safety
/// `p` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn clonoid_function_free(p: *mut ClonoidFunction) {
    release(p)
}

/// # Safety
/// `p` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn clonoid_family_free(p: *mut ClonoidFamily) {
    release(p)
}

/// # Safety
/// `p` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn clonoid_pairs_free(p: *mut ClonoidPairs) {
    release(p)
}

/// # Safety
/// `p` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn clonoid_set_free(p: *mut ClonoidSet) {
    release(p)
}

/// Parses an algebra in the text format, or a Boolean algebra name such as
/// `meet`, `not-0` or `maj`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_algebra_parse(
    text: *const c_char,
    out: *mut *mut ClonoidAlgebra,
) -> ClonoidStatus {
    guard(|| {
        let s = str_arg(text, "text")?;
        let a = match boolean::by_name(s.trim()) {
            Some(a) => a,
            None => text::parse_algebra(s)?,
        };
        put(out, ClonoidAlgebra(a), "out")
    })
}

/// Parses text holding exactly one `fn` line.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_function_parse(
    text: *const c_char,
    out: *mut *mut ClonoidFunction,
) -> ClonoidStatus {
    guard(|| {
        let mut fns = text::parse_functions(str_arg(text, "text")?)?;
        if fns.len() != 1 {
            return Err(Error::Input(format!(
                "expected exactly one function, found {}",
                fns.len()
            ))
            .into());
        }
        put(out, ClonoidFunction(fns.remove(0).function), "out")
    })
}

/// Parses `fn` lines into a generator family; all must share source and
/// target sizes.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_family_parse(
    text: *const c_char,
    out: *mut *mut ClonoidFamily,
) -> ClonoidStatus {
    guard(|| {
        let fns = text::parse_functions(str_arg(text, "text")?)?;
        let (s, t) = (fns[0].function.source_size(), fns[0].function.target_size());
        let family = GeneratorFamily::new(s, t, fns.into_iter().map(|n| n.function).collect())?;
        put(out, ClonoidFamily(family), "out")
    })
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_pairs_parse(
    text: *const c_char,
    out: *mut *mut ClonoidPairs,
) -> ClonoidStatus {
    guard(|| {
        let pairs = text::parse_pairs(str_arg(text, "text")?)?;
        put(out, ClonoidPairs(pairs), "out")
    })
}

/// Number of members of a set, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live set handle.
#[no_mangle]
pub unsafe extern "C" fn clonoid_set_len(set: *const ClonoidSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Writes the set in the text format.
///
/// # Safety
/// `set` must be a live set handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_set_to_text(
    set: *const ClonoidSet,
    out: *mut *mut c_char,
) -> ClonoidStatus {
    guard(|| put_string(out, text::format_set(&handle(set, "set")?.0)))
}

/// Classifies a two-element algebra; writes a JSON report. `budget` 0 means
/// the default.
///
/// # Safety
/// `algebra` must be a live handle; `json_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_classify(
    algebra: *const ClonoidAlgebra,
    nu_cap: usize,
    budget_size: usize,
    json_out: *mut *mut c_char,
) -> ClonoidStatus {
    guard(|| {
        let b = &handle(algebra, "algebra")?.0;
        let r = classify_boolean(b, nu_cap, budget(budget_size)?)?;
        let nu = match &r.witness_nu {
            Some(NuWitness::Found(f)) => json!({"arity": f.arity(), "table": f.table_string()}),
            Some(NuWitness::BeyondCap(cap)) => json!({"beyond_cap": cap}),
            None => serde_json::Value::Null,
        };
        let v = json!({
            "verdict": r.verdict,
            "majority": r.witness_majority.as_ref().map(FiniteFunction::table_string),
            "malcev": r.witness_malcev.as_ref().map(FiniteFunction::table_string),
            "near_unanimity": nu,
            "maximal_clone": r.containing_maximal_clone.map(|c| c.id()),
            "blocker": r.blocker.as_ref().map(|v| v.elements().to_vec()),
            "idempotent": r.idempotent,
            "blocker_check": r.idempotent_cross_check,
        });
        put_string(json_out, v.to_string())
    })
}

/// Whether `function` preserves every pair in `pairs`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_is_polymorphism(
    function: *const ClonoidFunction,
    pairs: *const ClonoidPairs,
    out: *mut bool,
) -> ClonoidStatus {
    guard(|| {
        let f = &handle(function, "function")?.0;
        let mut all = true;
        for pair in &handle(pairs, "pairs")?.0 {
            all &= is_polymorphism(f, pair)?;
        }
        *out.as_mut().ok_or(Failure::Null("out"))? = all;
        Ok(ClonoidStatus::Ok)
    })
}

/// All `arity`-ary functions preserving every pair.
///
/// # Safety
/// `pairs` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_pol(
    pairs: *const ClonoidPairs,
    arity: usize,
    budget_size: usize,
    out: *mut *mut ClonoidSet,
) -> ClonoidStatus {
    guard(|| {
        let pairs = &handle(pairs, "pairs")?.0;
        let first = pairs
            .first()
            .ok_or_else(|| Error::Input("no relation pairs".into()))?;
        let sig = Signature::new(first.source_size(), first.target_size(), arity)?;
        put(
            out,
            ClonoidSet(pol_slice(pairs, sig, budget(budget_size)?)?),
            "out",
        )
    })
}

/// The `arity` slice of the clonoid generated by `family` over `algebra`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_generate(
    family: *const ClonoidFamily,
    algebra: *const ClonoidAlgebra,
    arity: usize,
    budget_size: usize,
    out: *mut *mut ClonoidSet,
) -> ClonoidStatus {
    guard(|| {
        let s = clonoid_slice(
            &handle(family, "family")?.0,
            &handle(algebra, "algebra")?.0,
            arity,
            budget(budget_size)?,
        )?;
        put(out, ClonoidSet(s), "out")
    })
}

/// Whether `function` lies in the clonoid generated by `family`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_member(
    function: *const ClonoidFunction,
    family: *const ClonoidFamily,
    algebra: *const ClonoidAlgebra,
    budget_size: usize,
    out: *mut bool,
) -> ClonoidStatus {
    guard(|| {
        let found = member(
            &handle(function, "function")?.0,
            &handle(family, "family")?.0,
            &handle(algebra, "algebra")?.0,
            budget(budget_size)?,
        )?;
        *out.as_mut().ok_or(Failure::Null("out"))? = found;
        Ok(ClonoidStatus::Ok)
    })
}

/// Writes `{"blocker": [..]}` or `{"blocker": null}`.
///
/// # Safety
/// `algebra` must be a live handle; `json_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_blocker(
    algebra: *const ClonoidAlgebra,
    json_out: *mut *mut c_char,
) -> ClonoidStatus {
    guard(|| {
        let v = cube_term_blocker(&handle(algebra, "algebra")?.0);
        put_string(
            json_out,
            json!({ "blocker": v.map(|v| v.elements().to_vec()) }).to_string(),
        )
    })
}

/// Runs a verification suite. `params` holds whitespace-separated
/// `key=value` items and may be null. Writes the JSON report and returns
/// `Ok`, `VerificationFailed` or `BudgetExceeded` according to it.
///
/// # Safety
/// `suite` must be a NUL-terminated string, `params` null or one;
/// `json_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn clonoid_verify(
    suite: *const c_char,
    params: *const c_char,
    budget_size: usize,
    json_out: *mut *mut c_char,
) -> ClonoidStatus {
    guard(|| {
        let suite = str_arg(suite, "suite")?;
        let params = if params.is_null() {
            ""
        } else {
            str_arg(params, "params")?
        };
        let pairs = params
            .split_whitespace()
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| Error::Input(format!("parameter '{p}' is not key=value")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let report = run_verification(suite, &pairs, budget(budget_size)?)?;
        put_string(
            json_out,
            serde_json::to_string(&report).expect("report serializes"),
        )?;
        let status = match report.exit_code() {
            0 => ClonoidStatus::Ok,
            3 => ClonoidStatus::BudgetExceeded,
            _ => ClonoidStatus::VerificationFailed,
        };
        if status != ClonoidStatus::Ok {
            let failed = report.checks.iter().filter(|c| !c.pass).count();
            set_error(&format!(
                "{failed} of {} checks failed",
                report.checks.len()
            ));
        }
        Ok(status)
    })
}
