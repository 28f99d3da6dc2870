use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use tforge::designs::fixtures::{FIG1, FIG3, FIG3_MUTATED};
use tforge_ffi::*;

fn last_error() -> String {
    let p = tforge_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn design(json: &str) -> *mut TforgeDesign {
    let s = CString::new(json).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { tforge_design_from_json(s.as_ptr(), &mut d) }, TFORGE_OK);
    d
}

#[test]
fn verify_fixtures() {
    let good = design(FIG3);
    assert_eq!(unsafe { tforge_design_verify(good) }, TFORGE_OK);
    let (mut p, mut r, mut c) = (0, 0, 0);
    assert_eq!(unsafe { tforge_design_shape(good, &mut p, &mut r, &mut c) }, TFORGE_OK);
    assert_eq!((p, r, c), (27, 9, 13));
    let bad = design(FIG3_MUTATED);
    assert_eq!(unsafe { tforge_design_verify(bad) }, TFORGE_NOT_VERIFIED);
    assert!(!last_error().is_empty());
    unsafe {
        tforge_design_free(good);
        tforge_design_free(bad);
    }
}

#[test]
fn code_of_example() {
    let d = design(FIG1);
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { tforge_design_to_code(d, &mut code) }, TFORGE_OK);
    let mut s = TforgeCodeStats::default();
    assert_eq!(unsafe { tforge_code_stats(code, &mut s) }, TFORGE_OK);
    assert_eq!((s.n, s.q, s.size, s.distance, s.capability), (4, 3, 6, 3, 2));
    assert!(s.equitable && s.plotkin_holds && !s.plotkin_equality);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { tforge_code_to_json(code, &mut json) }, TFORGE_OK);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { tforge_code_from_json(json, &mut again) }, TFORGE_OK);
    unsafe {
        tforge_string_free(json);
        tforge_code_free(again);
        tforge_code_free(code);
        tforge_design_free(d);
    }
}

#[test]
fn construct_and_round_trip() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { tforge_construct_fq_gbtd(13, &mut d) }, TFORGE_OK);
    assert_eq!(unsafe { tforge_design_verify(d) }, TFORGE_OK);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { tforge_design_to_json(d, &mut json) }, TFORGE_OK);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { tforge_design_from_json(json, &mut back) }, TFORGE_OK);
    assert_eq!(unsafe { tforge_design_verify(back) }, TFORGE_OK);
    unsafe {
        tforge_string_free(json);
        tforge_design_free(back);
        tforge_design_free(d);
    }
    let mut none = ptr::null_mut();
    assert_eq!(unsafe { tforge_construct_fq_gbtd(11, &mut none) }, TFORGE_INVALID_INPUT);
    assert!(none.is_null());
    assert!(last_error().contains("11"));
}

#[test]
fn plotkin() {
    let mut p = TforgePlotkin::default();
    assert_eq!(unsafe { tforge_plotkin_check(29, 28, 16, 34, &mut p) }, TFORGE_OK);
    assert_eq!((p.lhs, p.rhs, p.holds), (15708, 15689, false));
    assert_eq!(unsafe { tforge_plotkin_check(10, 9, 7, 21, &mut p) }, TFORGE_OK);
    assert!(p.holds && p.equality);
}

#[test]
fn error_codes() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { tforge_design_from_json(ptr::null(), &mut d) }, TFORGE_NULL_ARGUMENT);
    let junk = CString::new("{").unwrap();
    assert_eq!(unsafe { tforge_design_from_json(junk.as_ptr(), &mut d) }, TFORGE_PARSE_ERROR);
    let utf = [0xffu8, 0];
    assert_eq!(unsafe { tforge_design_from_json(utf.as_ptr().cast(), &mut d) }, TFORGE_INVALID_UTF8);
    assert_eq!(unsafe { tforge_design_verify(ptr::null()) }, TFORGE_NULL_ARGUMENT);
    assert_eq!(unsafe { tforge_plotkin_check(1, 1, 1, 1, ptr::null_mut()) }, TFORGE_NULL_ARGUMENT);
    unsafe {
        tforge_design_free(ptr::null_mut());
        tforge_code_free(ptr::null_mut());
        tforge_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/tforge.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["tforge_design_from_json", "tforge_design_verify", "tforge_last_error", "TFORGE_NOT_VERIFIED"] {
        assert!(text.contains(name), "{name}");
    }
    let Ok(o) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() else {
        return;
    };
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
