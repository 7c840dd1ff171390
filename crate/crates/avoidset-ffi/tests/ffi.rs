//! Exercises the C ABI through raw pointers, exactly as a C caller would.

use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use avoidset_ffi::*;

unsafe fn parse(text: &str) -> *mut AvoidsetFamily {
    let c = CString::new(text).unwrap();
    let mut out: *mut AvoidsetFamily = ptr::null_mut();
    assert_eq!(avoidset_family_parse(c.as_ptr(), &mut out), AVOIDSET_OK);
    assert!(!out.is_null());
    out
}

unsafe fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = CStr::from_ptr(s).to_str().unwrap().to_string();
    avoidset_string_free(s);
    owned
}

#[test]
fn parse_count_roundtrip() {
    unsafe {
        let a = parse("n=2\n-\n1\n");
        let b = parse("n=2\n-\n2\n");
        assert_eq!(avoidset_family_n(a), 2);
        assert_eq!(avoidset_family_len(a), 2);

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(avoidset_count_disjoint(a, b, &mut out), AVOIDSET_OK);
        assert_eq!(take_string(out), "4");

        let text = take_string(avoidset_family_to_text(a));
        let again = parse(&text);
        let round = take_string(avoidset_family_to_text(again));
        assert_eq!(round, text);

        avoidset_family_free(a);
        avoidset_family_free(b);
        avoidset_family_free(again);
    }
}

#[test]
fn cross_avoiding_flag() {
    unsafe {
        let a = parse("n=4\n1,2\n");
        let b = parse("n=4\n3,4\n");
        let mut flag: c_int = -1;
        assert_eq!(avoidset_satisfies_cross_avoiding(a, b, 1, &mut flag), AVOIDSET_OK);
        assert_eq!(flag, 1);
        assert_eq!(avoidset_satisfies_cross_avoiding(a, a, 2, &mut flag), AVOIDSET_OK);
        assert_eq!(flag, 0);
        avoidset_family_free(a);
        avoidset_family_free(b);
    }
}

#[test]
fn bound_and_gamma() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(avoidset_f_bound(3, 2, &mut out), AVOIDSET_OK);
        assert_eq!(take_string(out), "20");
        assert_ne!(avoidset_f_bound(3, 9, &mut out), AVOIDSET_OK);

        let mut g = 0.0f64;
        assert_eq!(avoidset_gamma_r(3, &mut g), AVOIDSET_OK);
        assert!((g - 0.077460).abs() < 1e-5);
        assert_ne!(avoidset_gamma_r(2, &mut g), AVOIDSET_OK);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out: *mut AvoidsetFamily = ptr::null_mut();
        assert_eq!(avoidset_family_parse(ptr::null(), &mut out), AVOIDSET_ERR_NULL);

        let bad = CString::new("n=2\n5\n").unwrap();
        let code = avoidset_family_parse(bad.as_ptr(), &mut out);
        assert_ne!(code, AVOIDSET_OK);

        let a = parse("n=2\n1\n");
        let b = parse("n=3\n1\n");
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(avoidset_count_disjoint(a, b, &mut s), AVOIDSET_ERR_MISMATCH);
        avoidset_family_free(a);
        avoidset_family_free(b);

        // frees of null are no-ops
        avoidset_family_free(ptr::null_mut());
        avoidset_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(avoidset_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn generated_header_exists() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/avoidset.h");
    let text = std::fs::read_to_string(header).expect("header generated at build time");
    for symbol in [
        "avoidset_family_parse",
        "avoidset_family_free",
        "avoidset_count_disjoint",
        "avoidset_f_bound",
        "avoidset_gamma_r",
        "AVOIDSET_H",
    ] {
        assert!(text.contains(symbol), "header is missing {symbol}");
    }
}
