//! C ABI over tforge.
//!
//! Designs and codes cross the boundary as opaque handles. Every call
//! returns a status code; on failure the message is available from
//! `tforge_last_error` until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tforge::codes::{self, Code};
use tforge::designs::{self, DesignGrid};
use tforge::Error;

pub const TFORGE_OK: c_int = 0;
/// The input parsed but failed a design or code condition.
pub const TFORGE_NOT_VERIFIED: c_int = 1;
pub const TFORGE_NULL_ARGUMENT: c_int = 2;
pub const TFORGE_INVALID_UTF8: c_int = 3;
pub const TFORGE_PARSE_ERROR: c_int = 4;
pub const TFORGE_INVALID_INPUT: c_int = 5;
pub const TFORGE_NOT_FOUND: c_int = 6;
pub const TFORGE_PANIC: c_int = 7;

/// A design grid.
pub struct TforgeDesign(DesignGrid);

/// A q-ary code.
pub struct TforgeCode(Code);

#[repr(C)]
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct TforgeCodeStats {
    pub n: u64,
    pub q: u64,
    pub size: u64,
    pub distance: u64,
    pub equitable: bool,
    pub capability: u64,
    pub plotkin_holds: bool,
    pub plotkin_equality: bool,
}

/// Both sides of the generalized Plotkin bound. Values saturate at u64::MAX.
#[repr(C)]
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct TforgePlotkin {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub equality: bool,
}

thread_local! {
    static LAST: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST.with(|l| *l.borrow_mut() = Some(c));
}

fn status(e: &Error) -> c_int {
    match e {
        Error::NotVerified(_) | Error::NotEquitable | Error::DistanceTooSmall(..) | Error::StarterInvalid(_) => TFORGE_NOT_VERIFIED,
        Error::Format(_) | Error::BadLabel(_) | Error::BadKind(_) => TFORGE_PARSE_ERROR,
        Error::NotFound(_) => TFORGE_NOT_FOUND,
        _ => TFORGE_INVALID_INPUT,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (c_int, String)>) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TFORGE_OK,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            TFORGE_PANIC
        }
    }
}

fn lib(e: Error) -> (c_int, String) {
    (status(&e), e.to_string())
}

fn null(what: &str) -> (c_int, String) {
    (TFORGE_NULL_ARGUMENT, format!("{what} is null"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (c_int, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (TFORGE_INVALID_UTF8, format!("{what}: {e}")))
}

unsafe fn put<T>(out: *mut *mut T, v: T) {
    *out = Box::into_raw(Box::new(v));
}

fn owned(s: String) -> Result<*mut c_char, (c_int, String)> {
    CString::new(s).map(CString::into_raw).map_err(|e| (TFORGE_INVALID_INPUT, e.to_string()))
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn tforge_last_error() -> *const c_char {
    LAST.with(|l| l.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_design_from_json(json: *const c_char, out: *mut *mut TforgeDesign) -> c_int {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = designs::from_json(text(json, "json")?).map_err(lib)?;
        put(out, TforgeDesign(g));
        Ok(())
    })
}

/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tforge_design_free(d: *mut TforgeDesign) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Canonical JSON; release with `tforge_string_free`.
///
/// # Safety
/// `d` must be a live design and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_design_to_json(d: *const TforgeDesign, out: *mut *mut c_char) -> c_int {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("design"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = owned(designs::to_json(&d.0))?;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tforge_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `d` must be a live design; the out pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn tforge_design_shape(d: *const TforgeDesign, points: *mut u64, rows: *mut u64, cols: *mut u64) -> c_int {
    guard(|| {
        let d = &d.as_ref().ok_or_else(|| null("design"))?.0;
        for (p, v) in [(points, d.points.len()), (rows, d.nrows()), (cols, d.ncols())] {
            if !p.is_null() {
                *p = v as u64;
            }
        }
        Ok(())
    })
}

/// Runs the verifier for the design's kind. Returns `TFORGE_OK` when it
/// passes and `TFORGE_NOT_VERIFIED` with the failed conditions otherwise.
///
/// # Safety
/// `d` must be a live design.
#[no_mangle]
pub unsafe extern "C" fn tforge_design_verify(d: *const TforgeDesign) -> c_int {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("design"))?;
        let rep = designs::verify_auto(&d.0).map_err(lib)?;
        if rep.pass {
            Ok(())
        } else {
            Err((TFORGE_NOT_VERIFIED, rep.failed().join(", ")))
        }
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_construct_fq_gbtd(q: u64, out: *mut *mut TforgeDesign) -> c_int {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let (s, _) = tforge::starters::build_fq_gbtd_starter(q).map_err(lib)?;
        put(out, TforgeDesign(tforge::starters::develop_gbtd(&s).map_err(lib)?));
        Ok(())
    })
}

/// # Safety
/// `d` must be a live design and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_design_to_code(d: *const TforgeDesign, out: *mut *mut TforgeCode) -> c_int {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("design"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put(out, TforgeCode(codes::gbtp_to_code(&d.0).map_err(lib)?));
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_code_from_json(json: *const c_char, out: *mut *mut TforgeCode) -> c_int {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        put(out, TforgeCode(codes::code_from_json(text(json, "json")?).map_err(lib)?));
        Ok(())
    })
}

/// # Safety
/// `c` must be a live code and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_code_to_json(c: *const TforgeCode, out: *mut *mut c_char) -> c_int {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("code"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = owned(codes::code_to_json(&c.0))?;
        Ok(())
    })
}

/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tforge_code_free(c: *mut TforgeCode) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live code and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_code_stats(c: *const TforgeCode, out: *mut TforgeCodeStats) -> c_int {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("code"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let s = codes::stats(&c.0).map_err(lib)?;
        *out = TforgeCodeStats {
            n: s.n as u64,
            q: s.q as u64,
            size: s.m as u64,
            distance: s.d as u64,
            equitable: s.equitable,
            capability: s.capability as u64,
            plotkin_holds: s.plotkin.holds,
            plotkin_equality: s.plotkin.equality,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tforge_plotkin_check(n: u64, d: u64, q: u64, m: u64, out: *mut TforgePlotkin) -> c_int {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let p = codes::plotkin_check(n, d, q, m);
        let clamp = |x: u128| u64::try_from(x).unwrap_or(u64::MAX);
        *out = TforgePlotkin { lhs: clamp(p.lhs), rhs: clamp(p.rhs), holds: p.holds, equality: p.equality };
        Ok(())
    })
}
