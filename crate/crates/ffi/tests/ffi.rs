use std::ffi::{CStr, CString};
use std::ptr;

use wacert_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = wacert_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn field(d: i64) -> *mut WacertField {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { wacert_field_new(d, &mut k) }, WacertStatus::Ok);
    k
}

#[test]
fn hilbert_through_the_abi() {
    let q = field(1);
    let mut out = 0i8;
    let st = unsafe { wacert_hilbert(q, cstr("17").as_ptr(), cstr("5").as_ptr(), cstr("5").as_ptr(), &mut out) };
    assert_eq!(st, WacertStatus::Ok);
    assert_eq!(out, -1);
    assert!(wacert_last_error().is_null());
    let st = unsafe { wacert_hilbert(q, cstr("0").as_ptr(), cstr("5").as_ptr(), cstr("5").as_ptr(), &mut out) };
    assert_eq!(st, WacertStatus::InvalidInput);
    assert!(last_error().contains("zero"));
    let st = unsafe { wacert_hilbert(q, ptr::null(), cstr("5").as_ptr(), cstr("5").as_ptr(), &mut out) };
    assert_eq!(st, WacertStatus::NullPointer);
    unsafe { wacert_field_free(q) };
}

#[test]
fn bad_field_is_rejected() {
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { wacert_field_new(12, &mut k) }, WacertStatus::InvalidInput);
    assert!(k.is_null());
    assert_eq!(unsafe { wacert_field_new(5, ptr::null_mut()) }, WacertStatus::NullPointer);
}

#[test]
fn certificate_round_trip() {
    let q = field(1);
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { wacert_construct(q, cstr("17,137,5,-31").as_ptr(), 0, &mut cert) }, WacertStatus::Ok);
    assert_eq!(unsafe { wacert_certificate_verify(cert) }, WacertStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { wacert_certificate_to_json(cert, &mut json) }, WacertStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert!(text.contains("\"schema\": \"wa-cert/1\""));

    let mut back = ptr::null_mut();
    assert_eq!(unsafe { wacert_certificate_from_json(json, &mut back) }, WacertStatus::Ok);
    assert_eq!(unsafe { wacert_certificate_verify(back) }, WacertStatus::Ok);

    let tampered = cstr(&text.replacen("\"val_symbol_arg\": 1", "\"val_symbol_arg\": 3", 1));
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { wacert_certificate_from_json(tampered.as_ptr(), &mut bad) }, WacertStatus::Ok);
    assert_eq!(unsafe { wacert_certificate_verify(bad) }, WacertStatus::CheckFailed);
    assert!(!last_error().is_empty());

    let mut junk = ptr::null_mut();
    assert_eq!(unsafe { wacert_certificate_from_json(cstr("{").as_ptr(), &mut junk) }, WacertStatus::InvalidInput);
    assert!(junk.is_null());
    unsafe {
        wacert_string_free(json);
        wacert_certificate_free(cert);
        wacert_certificate_free(back);
        wacert_certificate_free(bad);
        wacert_field_free(q);
    }
}

#[test]
fn failing_parameters_report_check_failure() {
    let q = field(1);
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { wacert_construct(q, cstr("13,137,5,-31").as_ptr(), 0, &mut cert) }, WacertStatus::CheckFailed);
    assert!(cert.is_null());
    assert!(last_error().contains("params"));
    assert_eq!(unsafe { wacert_construct(q, cstr("1,2").as_ptr(), 0, &mut cert) }, WacertStatus::InvalidInput);
    unsafe { wacert_field_free(q) };
}

#[test]
fn example_and_table_reports() {
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { wacert_verify_example(&mut json) }, WacertStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
    assert_eq!(v["all_hold"], true);
    unsafe { wacert_string_free(json) };

    let mut row = ptr::null_mut();
    assert_eq!(unsafe { wacert_verify_table_row(4, &mut row) }, WacertStatus::Ok);
    unsafe { wacert_string_free(row) };
    assert_eq!(unsafe { wacert_verify_table_row(0, &mut row) }, WacertStatus::InvalidInput);
    assert_eq!(unsafe { wacert_verify_table_row(1, &mut row) }, WacertStatus::CheckFailed);
    unsafe { wacert_string_free(row) };
}

#[test]
fn header_declares_the_abi() {
    let header = include_str!("../include/wacert.h");
    for name in [
        "wacert_last_error",
        "wacert_string_free",
        "wacert_field_new",
        "wacert_hilbert",
        "wacert_construct",
        "wacert_certificate_to_json",
        "wacert_certificate_from_json",
        "wacert_certificate_verify",
        "wacert_verify_example",
        "wacert_verify_table_row",
        "WACERT_STATUS_CHECK_FAILED",
        "typedef struct WacertField WacertField",
    ] {
        assert!(header.contains(name), "{name}");
    }
    assert!(!unsafe { CStr::from_ptr(wacert_version()) }.to_str().unwrap().is_empty());
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let Ok(out) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-I"])
        .arg(&dir)
        .arg(dir.join("wacert.h"))
        .output()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
