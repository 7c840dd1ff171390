//! C ABI over the core engine: opaque family handles, integer error
//! codes, and decimal strings for arbitrary-precision counts. The header
//! is generated into `include/avoidset.h` at build time.

use std::ffi::{c_char, c_double, c_int, CStr, CString};
use std::ptr;

use avoidset::bounds::{f_bound, gamma_r};
use avoidset::dpcount::count_disjoint_ordered;
use avoidset::setcore::{satisfies_cross, IntersectionConstraint};
use avoidset::{Error, Family};

/// Opaque family handle.
pub struct AvoidsetFamily {
    inner: Family,
}

pub const AVOIDSET_OK: c_int = 0;
pub const AVOIDSET_ERR_NULL: c_int = 1;
pub const AVOIDSET_ERR_UTF8: c_int = 2;
pub const AVOIDSET_ERR_PARSE: c_int = 3;
pub const AVOIDSET_ERR_RANGE: c_int = 4;
pub const AVOIDSET_ERR_CAPACITY: c_int = 5;
pub const AVOIDSET_ERR_MISMATCH: c_int = 6;
pub const AVOIDSET_ERR_OTHER: c_int = 7;

fn code_for(e: &Error) -> c_int {
    match e {
        Error::Parse { .. } => AVOIDSET_ERR_PARSE,
        Error::Range(_) | Error::UniverseRange(_) | Error::ElementOutOfRange { .. } => {
            AVOIDSET_ERR_RANGE
        }
        Error::Capacity(_) => AVOIDSET_ERR_CAPACITY,
        Error::UniverseMismatch(_, _) => AVOIDSET_ERR_MISMATCH,
        _ => AVOIDSET_ERR_OTHER,
    }
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Parse a family from the text exchange format. On success writes a
/// heap-allocated handle to `out`; free it with `avoidset_family_free`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn avoidset_family_parse(
    text: *const c_char,
    out: *mut *mut AvoidsetFamily,
) -> c_int {
    if text.is_null() || out.is_null() {
        return AVOIDSET_ERR_NULL;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return AVOIDSET_ERR_UTF8;
    };
    match Family::parse(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(AvoidsetFamily { inner }));
            AVOIDSET_OK
        }
        Err(e) => code_for(&e),
    }
}

/// Release a handle returned by `avoidset_family_parse`.
///
/// # Safety
/// `family` must be a pointer previously returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn avoidset_family_free(family: *mut AvoidsetFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Number of member sets.
///
/// # Safety
/// `family` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn avoidset_family_len(family: *const AvoidsetFamily) -> u64 {
    family.as_ref().map_or(0, |f| f.inner.len() as u64)
}

/// Universe size n.
///
/// # Safety
/// `family` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn avoidset_family_n(family: *const AvoidsetFamily) -> u32 {
    family.as_ref().map_or(0, |f| f.inner.n())
}

/// Serialize back to the text exchange format. Free the result with
/// `avoidset_string_free`.
///
/// # Safety
/// `family` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn avoidset_family_to_text(family: *const AvoidsetFamily) -> *mut c_char {
    match family.as_ref() {
        Some(f) => export_string(f.inner.to_text()),
        None => ptr::null_mut(),
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a string previously returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn avoidset_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact |{(a,b) : a ∩ b = ∅}| as a decimal string in `out`.
///
/// # Safety
/// `a` and `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn avoidset_count_disjoint(
    a: *const AvoidsetFamily,
    b: *const AvoidsetFamily,
    out: *mut *mut c_char,
) -> c_int {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return AVOIDSET_ERR_NULL;
    };
    if out.is_null() {
        return AVOIDSET_ERR_NULL;
    }
    match count_disjoint_ordered(&a.inner, &b.inner) {
        Ok(v) => {
            *out = export_string(v.to_string());
            AVOIDSET_OK
        }
        Err(e) => code_for(&e),
    }
}

/// Whether the pair admits no cross pair with intersection exactly t;
/// writes 0 or 1 to `out`.
///
/// # Safety
/// `a` and `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn avoidset_satisfies_cross_avoiding(
    a: *const AvoidsetFamily,
    b: *const AvoidsetFamily,
    t: u32,
    out: *mut c_int,
) -> c_int {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return AVOIDSET_ERR_NULL;
    };
    if out.is_null() {
        return AVOIDSET_ERR_NULL;
    }
    match satisfies_cross(&a.inner, &b.inner, IntersectionConstraint::AvoidOne(t)) {
        Ok(v) => {
            *out = v as c_int;
            AVOIDSET_OK
        }
        Err(e) => code_for(&e),
    }
}

/// The bound Σ_{k<t} C(n,k) 2^{n-k} as a decimal string in `out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn avoidset_f_bound(n: u64, t: u64, out: *mut *mut c_char) -> c_int {
    if out.is_null() {
        return AVOIDSET_ERR_NULL;
    }
    match f_bound(n, t) {
        Ok(v) => {
            *out = export_string(v.to_string());
            AVOIDSET_OK
        }
        Err(e) => code_for(&e),
    }
}

/// The optimal forbidden-cross-intersection-2 constant for a given r ≥ 3;
/// writes the value to `out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn avoidset_gamma_r(r: u32, out: *mut c_double) -> c_int {
    if out.is_null() {
        return AVOIDSET_ERR_NULL;
    }
    match gamma_r(r, 1e-9) {
        Ok(g) => {
            *out = g.gamma;
            AVOIDSET_OK
        }
        Err(e) => code_for(&e),
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn avoidset_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
