use std::ffi::{CStr, CString};
use std::ptr;

use spinor_kit_ffi::*;

fn scalar(text: &str) -> *mut SkScalar {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sk_scalar_parse(c.as_ptr(), &mut out) }, SkStatus::Ok);
    out
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { sk_string_free(p) };
    s
}

fn last_error() -> String {
    let p = sk_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn scalar_arithmetic_round_trip() {
    let a = scalar("1+i");
    let b = scalar("1-i");
    let mut prod = ptr::null_mut();
    assert_eq!(unsafe { sk_scalar_mul(a, b, &mut prod) }, SkStatus::Ok);
    assert_eq!(take_string(unsafe { sk_scalar_to_string(prod) }), "2");

    let two = scalar("2");
    let mut eq = -1;
    assert_eq!(unsafe { sk_scalar_equal(prod, two, &mut eq) }, SkStatus::Ok);
    assert_eq!(eq, 1);

    let mut q = ptr::null_mut();
    assert_eq!(unsafe { sk_scalar_div(a, b, &mut q) }, SkStatus::Ok);
    assert_eq!(take_string(unsafe { sk_scalar_to_string(q) }), "i");

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sk_scalar_sub(a, a, &mut s) }, SkStatus::Ok);
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { sk_scalar_div(a, s, &mut bad) }, SkStatus::DivisionByZero);
    assert!(bad.is_null());
    assert_eq!(last_error(), "division by zero");

    let mut sum = ptr::null_mut();
    assert_eq!(unsafe { sk_scalar_add(a, b, &mut sum) }, SkStatus::Ok);
    assert_eq!(take_string(unsafe { sk_scalar_to_string(sum) }), "2");

    for h in [a, b, prod, two, q, s, sum] {
        unsafe { sk_scalar_free(h) };
    }
}

#[test]
fn invalid_inputs_report_status() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sk_scalar_parse(ptr::null(), &mut out) }, SkStatus::NullPointer);
    let c = CString::new("1+").unwrap();
    assert_eq!(unsafe { sk_scalar_parse(c.as_ptr(), &mut out) }, SkStatus::Parse);
    assert!(!last_error().is_empty());
    let mut eq = 0;
    assert_eq!(unsafe { sk_scalar_equal(ptr::null(), ptr::null(), &mut eq) }, SkStatus::NullPointer);
    assert!(unsafe { sk_scalar_to_string(ptr::null()) }.is_null());
}

#[test]
fn eval_and_errors() {
    let prog = CString::new("g( e1*eb1, e2*eb2 )\n(1+i)*(1+i)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sk_eval(prog.as_ptr(), &mut out) }, SkStatus::Ok);
    assert_eq!(take_string(out), "1\n2*i");

    let prog = CString::new("g(e1,").unwrap();
    assert_eq!(unsafe { sk_eval(prog.as_ptr(), &mut out) }, SkStatus::Parse);
    assert!(last_error().starts_with("parse error at 1:"));

    let prog = CString::new("g(e1, e2)").unwrap();
    assert_eq!(unsafe { sk_eval(prog.as_ptr(), &mut out) }, SkStatus::Eval);
}

#[test]
fn suite_reports() {
    let name = CString::new("adjunction").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { sk_run_suite(name.as_ptr(), 3, 10, &mut r) }, SkStatus::Ok);
    assert_eq!(unsafe { sk_report_failures(r) }, 0);
    let json = take_string(unsafe { sk_report_json(r) });
    assert!(json.contains("\"suite\": \"adjunction\""), "{json}");
    unsafe { sk_report_free(r) };

    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { sk_run_suite(bad.as_ptr(), 3, 10, &mut r) }, SkStatus::UnknownSuite);
    assert_eq!(unsafe { sk_run_suite(name.as_ptr(), 3, 0, &mut r) }, SkStatus::InvalidArgument);
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/spinor_kit.h")).unwrap();
    for name in [
        "typedef struct SkScalar SkScalar;",
        "typedef struct SkReport SkReport;",
        "sk_scalar_parse",
        "sk_eval",
        "sk_run_suite",
        "sk_last_error_message",
        "SkStatus_DivisionByZero = 7",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
