//! C ABI over `wacert`. Objects are opaque handles released with the matching
//! `_free` function; strings returned to the caller are released with
//! `wacert_string_free`. Every function returns a `WacertStatus`; on failure
//! `wacert_last_error` describes the cause for the calling thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wacert::chatelet::SearchBounds;
use wacert::nf::{is_principal_prime, QuadraticField};
use wacert::pipeline::{
    assemble_construction, canonical_json, parse_params, table_rows, verify_construction, verify_example,
    verify_table_row, ConstructOptions, ConstructionCertificate,
};
use wacert::symbols::{hilbert_odd, hilbert_rational, RationalPlace};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WacertStatus {
    Ok = 0,
    /// A mathematical check failed.
    CheckFailed = 1,
    /// Malformed or out-of-range input.
    InvalidInput = 2,
    NullPointer = 3,
    /// A panic was caught at the boundary.
    Internal = 4,
}

/// A quadratic field Q(sqrt(delta0)), or Q for delta0 = 1.
pub struct WacertField(QuadraticField);

/// A construction certificate.
pub struct WacertCertificate(ConstructionCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(WacertStatus, String);

fn invalid(e: impl std::fmt::Display) -> Fail {
    Fail(WacertStatus::InvalidInput, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WacertStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WacertStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WacertStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(WacertStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{name} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(WacertStatus::NullPointer, format!("{name} is null")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(WacertStatus::NullPointer, format!("{name} is null")))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|_| Fail(WacertStatus::Internal, "interior NUL".into()))
}

/// Message for the last failing call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wacert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static version string.
#[no_mangle]
pub extern "C" fn wacert_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn wacert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn wacert_field_new(delta0: i64, out: *mut *mut WacertField) -> WacertStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let k = QuadraticField::new(delta0).map_err(invalid)?;
        *out = Box::into_raw(Box::new(WacertField(k)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn wacert_field_free(field: *mut WacertField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// (s, t)_v. Over Q, v is a rational prime or "inf"; otherwise v is an odd
/// prime element.
#[no_mangle]
pub unsafe extern "C" fn wacert_hilbert(
    field: *const WacertField,
    s: *const c_char,
    t: *const c_char,
    v: *const c_char,
    out: *mut i8,
) -> WacertStatus {
    guard(|| {
        let k = handle(field, "field")?.0;
        let out = out_arg(out, "out")?;
        let s = k.parse_element(str_arg(s, "s")?).map_err(invalid)?;
        let t = k.parse_element(str_arg(t, "t")?).map_err(invalid)?;
        let v = str_arg(v, "v")?;
        if s.is_zero() || t.is_zero() {
            return Err(invalid("Hilbert symbol of zero"));
        }
        *out = match (k.is_rational(), s.as_rational(), t.as_rational()) {
            (true, Some(s), Some(t)) => hilbert_rational(s, t, &RationalPlace::parse(v).map_err(invalid)?),
            _ => {
                let pi = is_principal_prime(&k.parse_element(v).map_err(invalid)?).map_err(invalid)?;
                hilbert_odd(&s, &t, &pi).map_err(invalid)?
            }
        };
        Ok(())
    })
}

/// Builds a certificate. `params` is "a,b,c,e" or NULL to search; `radius`
/// 0 selects the default search radius.
#[no_mangle]
pub unsafe extern "C" fn wacert_construct(
    field: *const WacertField,
    params: *const c_char,
    radius: u64,
    out: *mut *mut WacertCertificate,
) -> WacertStatus {
    guard(|| {
        let k = handle(field, "field")?.0;
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let params = if params.is_null() {
            None
        } else {
            Some(parse_params(k, str_arg(params, "params")?).map_err(invalid)?.map(|x| x.to_string()))
        };
        let opts = ConstructOptions { params, c_e: None, radius: (radius > 0).then_some(radius) };
        let cert = assemble_construction(k, &opts).map_err(|e| Fail(WacertStatus::CheckFailed, e.to_string()))?;
        *out = Box::into_raw(Box::new(WacertCertificate(cert)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn wacert_certificate_free(cert: *mut WacertCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Canonical JSON of the certificate.
#[no_mangle]
pub unsafe extern "C" fn wacert_certificate_to_json(
    cert: *const WacertCertificate,
    out: *mut *mut c_char,
) -> WacertStatus {
    guard(|| {
        let cert = handle(cert, "cert")?;
        let out = out_arg(out, "out")?;
        *out = c_string(canonical_json(&cert.0))?;
        Ok(())
    })
}

/// Parses a certificate without verifying it.
#[no_mangle]
pub unsafe extern "C" fn wacert_certificate_from_json(
    json: *const c_char,
    out: *mut *mut WacertCertificate,
) -> WacertStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let cert: ConstructionCertificate = serde_json::from_str(str_arg(json, "json")?).map_err(invalid)?;
        *out = Box::into_raw(Box::new(WacertCertificate(cert)));
        Ok(())
    })
}

/// WACERT_STATUS_OK when every component re-verifies.
#[no_mangle]
pub unsafe extern "C" fn wacert_certificate_verify(cert: *const WacertCertificate) -> WacertStatus {
    guard(|| {
        let cert = handle(cert, "cert")?;
        verify_construction(&cert.0).map_err(|e| Fail(WacertStatus::CheckFailed, e.to_string()))
    })
}

/// Full report for the example over Q as JSON; CHECK_FAILED (with the report
/// still written) if some check fails.
#[no_mangle]
pub unsafe extern "C" fn wacert_verify_example(out: *mut *mut c_char) -> WacertStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let report = verify_example().map_err(|e| Fail(WacertStatus::CheckFailed, e.to_string()))?;
        *out = c_string(canonical_json(&report))?;
        if report.all_hold {
            Ok(())
        } else {
            Err(Fail(WacertStatus::CheckFailed, "a check failed".into()))
        }
    })
}

/// Report for table row `row` (1-based) as JSON.
#[no_mangle]
pub unsafe extern "C" fn wacert_verify_table_row(row: usize, out: *mut *mut c_char) -> WacertStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let rows = table_rows();
        let r = row.checked_sub(1).and_then(|i| rows.get(i)).ok_or_else(|| invalid(format!("row {row} out of range")))?;
        let report = verify_table_row(r, SearchBounds::default()).map_err(invalid)?;
        *out = c_string(canonical_json(&report))?;
        if report.passes {
            Ok(())
        } else {
            Err(Fail(WacertStatus::CheckFailed, "row fails a check".into()))
        }
    })
}
