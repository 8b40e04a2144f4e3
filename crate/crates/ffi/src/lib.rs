//! C interface: opaque handles for scalars and suite reports, a program
//! evaluator, and status codes with a thread-local error message.
//!
//! Every string returned to the caller is owned by the caller and must be
//! released with `sk_string_free`. Handles are released with their `_free`
//! function. Null handles are rejected with `SkStatus_NullPointer`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spinor_kit::cli::{eval_program, run_suite, DslError, SuiteError, SuiteReport};
use spinor_kit::Scalar;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Eval = 4,
    UnknownSuite = 5,
    InvalidArgument = 6,
    DivisionByZero = 7,
    Panic = 8,
}

/// Element of ℚ(i, √2).
pub struct SkScalar {
    inner: Scalar,
}

/// Outcome of a property-suite run.
pub struct SkReport {
    inner: SuiteReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: SkStatus, msg: impl Into<String>) -> SkStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> SkStatus) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SkStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SkStatus> {
    if s.is_null() {
        return Err(fail(SkStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(SkStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a scalar such as `"1/2+i-3*r2"`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_parse(text: *const c_char, out: *mut *mut SkScalar) -> SkStatus {
    guard(|| {
        if out.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match s.parse::<Scalar>() {
            Ok(v) => {
                *out = Box::into_raw(Box::new(SkScalar { inner: v }));
                SkStatus::Ok
            }
            Err(e) => fail(SkStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_free(s: *mut SkScalar) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn binary(
    a: *const SkScalar,
    b: *const SkScalar,
    out: *mut *mut SkScalar,
    op: impl FnOnce(&Scalar, &Scalar) -> Result<Scalar, SkStatus>,
) -> SkStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return fail(SkStatus::NullPointer, "null scalar handle");
        }
        match op(&(*a).inner, &(*b).inner) {
            Ok(v) => {
                *out = Box::into_raw(Box::new(SkScalar { inner: v }));
                SkStatus::Ok
            }
            Err(e) => e,
        }
    })
}

/// `*out = a + b`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_add(a: *const SkScalar, b: *const SkScalar, out: *mut *mut SkScalar) -> SkStatus {
    binary(a, b, out, |x, y| Ok(x + y))
}

/// `*out = a − b`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_sub(a: *const SkScalar, b: *const SkScalar, out: *mut *mut SkScalar) -> SkStatus {
    binary(a, b, out, |x, y| Ok(x - y))
}

/// `*out = a · b`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_mul(a: *const SkScalar, b: *const SkScalar, out: *mut *mut SkScalar) -> SkStatus {
    binary(a, b, out, |x, y| Ok(x * y))
}

/// `*out = a / b`; fails with `SkStatus_DivisionByZero` when `b = 0`.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_div(a: *const SkScalar, b: *const SkScalar, out: *mut *mut SkScalar) -> SkStatus {
    binary(a, b, out, |x, y| match y.inv() {
        Some(inv) => Ok(x * &inv),
        None => Err(fail(SkStatus::DivisionByZero, "division by zero")),
    })
}

/// Exact equality; `*out` is set to 1 or 0.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_equal(a: *const SkScalar, b: *const SkScalar, out: *mut i32) -> SkStatus {
    guard(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return fail(SkStatus::NullPointer, "null scalar handle");
        }
        *out = i32::from((*a).inner == (*b).inner);
        SkStatus::Ok
    })
}

/// Canonical text of a scalar, or null for a null handle.
///
/// # Safety
/// `s` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn sk_scalar_to_string(s: *const SkScalar) -> *mut c_char {
    if s.is_null() {
        set_error("null scalar handle");
        return ptr::null_mut();
    }
    into_c_string((*s).inner.to_string())
}

/// Evaluates a program; `*out` receives the printed results, one per line.
///
/// # Safety
/// `program` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_eval(program: *const c_char, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        if out.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        let src = match read_str(program) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match eval_program(src) {
            Ok(lines) => {
                *out = into_c_string(lines.join("\n"));
                SkStatus::Ok
            }
            Err(e @ DslError::Parse { .. }) => fail(SkStatus::Parse, e.to_string()),
            Err(e @ DslError::Eval { .. }) => fail(SkStatus::Eval, e.to_string()),
        }
    })
}

/// Runs a named property suite (or `"all"`).
///
/// # Safety
/// `suite` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_run_suite(suite: *const c_char, seed: u64, trials: u64, out: *mut *mut SkReport) -> SkStatus {
    guard(|| {
        if out.is_null() {
            return fail(SkStatus::NullPointer, "null output pointer");
        }
        let name = match read_str(suite) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match run_suite(name, seed, trials) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(SkReport { inner: r }));
                SkStatus::Ok
            }
            Err(e @ SuiteError::UnknownSuite(_)) => fail(SkStatus::UnknownSuite, e.to_string()),
            Err(e @ SuiteError::NoTrials) => fail(SkStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Total number of failed checks; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn sk_report_failures(r: *const SkReport) -> usize {
    if r.is_null() {
        return 0;
    }
    (*r).inner.failures
}

/// Sorted-key JSON text of a report, or null for a null handle.
///
/// # Safety
/// `r` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn sk_report_json(r: *const SkReport) -> *mut c_char {
    if r.is_null() {
        set_error("null report handle");
        return ptr::null_mut();
    }
    into_c_string((*r).inner.to_json())
}

/// # Safety
/// `r` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn sk_report_free(r: *mut SkReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
