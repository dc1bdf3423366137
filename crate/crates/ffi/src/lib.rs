//! C ABI for the cxta library.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `_free` function. Fallible functions return a
//! [`CxtaErrorCode`] and write results through out-pointers; on failure
//! `cxta_last_error` describes the problem. Strings returned as `char *`
//! must be released with `cxta_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cxta::arith::{self, Status, Vertex};
use cxta::triangle::{CandidateGroup, CandidateJson};

/// A candidate triangle group.
pub struct CxtaCandidate(CandidateGroup);

/// The outcome of an obstruction test.
pub struct CxtaVerdict(arith::Verdict);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CxtaStatus {
    Admissible = 0,
    RuledOut = 1,
    Indeterminate = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CxtaErrorCode {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedJson = 3,
    InvalidInput = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn guard(f: impl FnOnce() -> Result<(), (CxtaErrorCode, String)>) -> CxtaErrorCode {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CxtaErrorCode::Ok
        }
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            CxtaErrorCode::Panic
        }
    }
}

fn null() -> (CxtaErrorCode, String) {
    (CxtaErrorCode::NullPointer, "null pointer argument".into())
}

fn invalid(e: impl ToString) -> (CxtaErrorCode, String) {
    (CxtaErrorCode::InvalidInput, e.to_string())
}

fn to_c_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn status_of(s: Status) -> CxtaStatus {
    match s {
        Status::Admissible => CxtaStatus::Admissible,
        Status::RuledOut => CxtaStatus::RuledOut,
        Status::Indeterminate => CxtaStatus::Indeterminate,
    }
}

/// Parses a candidate from its JSON form, e.g.
/// `{"angles":["2","3","7"],"psi":"1/1","orders":[2,2,2]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cxta_candidate_from_json(json: *const c_char, out: *mut *mut CxtaCandidate) -> CxtaErrorCode {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (CxtaErrorCode::InvalidUtf8, e.to_string()))?;
        let parsed: CandidateJson =
            serde_json::from_str(text).map_err(|e| (CxtaErrorCode::MalformedJson, e.to_string()))?;
        let c = CandidateGroup::try_from(&parsed).map_err(invalid)?;
        *out = Box::into_raw(Box::new(CxtaCandidate(c)));
        Ok(())
    })
}

/// # Safety
/// `c` must come from `cxta_candidate_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cxta_candidate_free(c: *mut CxtaCandidate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs the full obstruction test on a candidate.
///
/// # Safety
/// `c` must be a live candidate handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cxta_admissibility_test(c: *const CxtaCandidate, out: *mut *mut CxtaVerdict) -> CxtaErrorCode {
    guard(|| {
        if c.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let v = arith::admissibility_test(&(*c).0).map_err(invalid)?;
        *out = Box::into_raw(Box::new(CxtaVerdict(v)));
        Ok(())
    })
}

/// Takeuchi's criterion for the Fuchsian triangle (p, q, r); 0 marks an ideal vertex.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cxta_takeuchi(p: u32, q: u32, r: u32, out: *mut *mut CxtaVerdict) -> CxtaErrorCode {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let vertex = |n: u32| match n {
            0 => Ok(Vertex::Ideal),
            1 => Err(invalid("vertex orders must be 0 (ideal) or at least 2")),
            n => Ok(Vertex::Finite(n)),
        };
        let v = arith::takeuchi_fuchsian_test(vertex(p)?, vertex(q)?, vertex(r)?).map_err(invalid)?;
        *out = Box::into_raw(Box::new(CxtaVerdict(v)));
        Ok(())
    })
}

/// # Safety
/// `v` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cxta_verdict_free(v: *mut CxtaVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be a live verdict handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cxta_verdict_status(v: *const CxtaVerdict, out: *mut CxtaStatus) -> CxtaErrorCode {
    guard(|| {
        if v.is_null() || out.is_null() {
            return Err(null());
        }
        *out = status_of((*v).0.status);
        Ok(())
    })
}

/// The witnessing Galois exponent, or −1 when the verdict has none.
///
/// # Safety
/// `v` must be a live verdict handle or null (which yields −1).
#[no_mangle]
pub unsafe extern "C" fn cxta_verdict_witness(v: *const CxtaVerdict) -> i64 {
    if v.is_null() {
        return -1;
    }
    (*v).0.witness.map_or(-1, i64::from)
}

/// The reason tag, e.g. `NEGATIVE_PLACE_MOVES_E`. Free with `cxta_string_free`.
///
/// # Safety
/// `v` must be a live verdict handle or null (which yields null).
#[no_mangle]
pub unsafe extern "C" fn cxta_verdict_tag(v: *const CxtaVerdict) -> *mut c_char {
    if v.is_null() {
        return ptr::null_mut();
    }
    to_c_string((*v).0.tag.as_str())
}

/// The human-readable reason. Free with `cxta_string_free`.
///
/// # Safety
/// `v` must be a live verdict handle or null (which yields null).
#[no_mangle]
pub unsafe extern "C" fn cxta_verdict_reason(v: *const CxtaVerdict) -> *mut c_char {
    if v.is_null() {
        return ptr::null_mut();
    }
    to_c_string(&(*v).0.reason)
}

/// The verdict as a JSON object. Free with `cxta_string_free`.
///
/// # Safety
/// `v` must be a live verdict handle or null (which yields null).
#[no_mangle]
pub unsafe extern "C" fn cxta_verdict_to_json(v: *const CxtaVerdict) -> *mut c_char {
    if v.is_null() {
        return ptr::null_mut();
    }
    to_c_string(&serde_json::to_string(&(*v).0).expect("serializable"))
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cxta_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Jacobsthal's function j(n).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cxta_jacobsthal(n: u64, out: *mut u64) -> CxtaErrorCode {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = arith::jacobsthal(n).map_err(invalid)?;
        Ok(())
    })
}

/// The least prime not dividing n.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cxta_smallest_coprime_prime(n: u64, out: *mut u64) -> CxtaErrorCode {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = arith::smallest_coprime_prime(n).map_err(invalid)?;
        Ok(())
    })
}

/// Number of admissible right triangles (2, q, r) with q, r ≤ max_denom or ideal.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cxta_classify_right_count(max_denom: u32, out: *mut usize) -> CxtaErrorCode {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = arith::admissible_right_triangles(max_denom).map_err(invalid)?.len();
        Ok(())
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn cxta_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cxta_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
