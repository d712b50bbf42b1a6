//! C ABI over the casimir toolkit.
//!
//! The surface is deliberately small: construct a symmetric pair from
//! its spec string, query construction facts, and pull the same JSON
//! reports the CLI produces (describe, abelian enumeration, spectrum,
//! verification). Handles are opaque; every function that can fail
//! returns a [`CasStatus`] and writes results through out-pointers.
//! Strings returned through out-pointers are NUL-terminated, UTF-8, and
//! must be released with [`cas_string_free`].
//!
//! All entry points catch panics, so assertion failures inside the
//! exact-arithmetic kernels surface as `CAS_STATUS_INTERNAL_ERROR`
//! rather than unwinding across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use casimir::abelian::{abelian_json, enumerate_abelian_bstable};
use casimir::affine::build_affine_roots;
use casimir::homology::{describe_json, run_suite, spectrum_json, suite_json, SUITE_NAMES};
use casimir::pair::{build_pair, PairSpec, SymmetricPair};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasStatus {
    /// Success; for verification calls, every check passed.
    Ok = 0,
    /// The verification ran and at least one check failed.
    VerificationFailed = 1,
    /// The spec or an argument string could not be parsed.
    ParseError = 2,
    /// A required pointer argument was null.
    NullPointer = 3,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 4,
    /// An argument was out of range.
    InvalidArgument = 5,
    /// An internal invariant failed (a panic was caught).
    InternalError = 6,
}

/// Opaque handle to a constructed symmetric pair.
pub struct CasPair {
    inner: SymmetricPair,
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cas_status_name(status: CasStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        CasStatus::Ok => b"ok\0",
        CasStatus::VerificationFailed => b"verification failed\0",
        CasStatus::ParseError => b"parse error\0",
        CasStatus::NullPointer => b"null pointer\0",
        CasStatus::InvalidUtf8 => b"invalid utf-8\0",
        CasStatus::InvalidArgument => b"invalid argument\0",
        CasStatus::InternalError => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}

fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, CasStatus> {
    if ptr.is_null() {
        return Err(CasStatus::NullPointer);
    }
    // SAFETY: the caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| CasStatus::InvalidUtf8)
}

fn write_string(out: *mut *mut c_char, s: String) -> CasStatus {
    if out.is_null() {
        return CasStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: out is a valid pointer per the check above.
            unsafe { *out = c.into_raw() };
            CasStatus::Ok
        }
        Err(_) => CasStatus::InternalError,
    }
}

fn guarded<F: FnOnce() -> CasStatus>(f: F) -> CasStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CasStatus::InternalError)
}

/// Builds a pair from a spec string such as `"A2:switch"` or
/// `"B2:signs=+-"` and writes the handle to `out`.
///
/// # Safety
/// `spec` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn cas_pair_new(spec: *const c_char, out: *mut *mut CasPair) -> CasStatus {
    guarded(|| {
        if out.is_null() {
            return CasStatus::NullPointer;
        }
        let spec = match read_str(spec) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let parsed = match PairSpec::parse(spec) {
            Ok(p) => p,
            Err(_) => return CasStatus::ParseError,
        };
        match build_pair(&parsed) {
            Ok(sp) => {
                let handle = Box::new(CasPair { inner: sp });
                // SAFETY: out was checked non-null.
                unsafe { *out = Box::into_raw(handle) };
                CasStatus::Ok
            }
            Err(_) => CasStatus::ParseError,
        }
    })
}

/// Releases a handle obtained from [`cas_pair_new`]. Null is ignored.
///
/// # Safety
/// `pair` must be a pointer previously returned by [`cas_pair_new`]
/// and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cas_pair_free(pair: *mut CasPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Releases a string returned through any `out` parameter here.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn cas_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn with_pair<F: FnOnce(&SymmetricPair) -> CasStatus>(pair: *const CasPair, f: F) -> CasStatus {
    guarded(|| {
        if pair.is_null() {
            return CasStatus::NullPointer;
        }
        // SAFETY: non-null handle created by cas_pair_new.
        let p = unsafe { &*pair };
        f(&p.inner)
    })
}

/// # Safety
/// `pair` must be null or a live handle from [`cas_pair_new`].
#[no_mangle]
pub unsafe extern "C" fn cas_pair_dim_g(pair: *const CasPair) -> usize {
    if pair.is_null() {
        return 0;
    }
    unsafe { &*pair }.inner.dim_g()
}

/// # Safety
/// `pair` must be null or a live handle from [`cas_pair_new`].
#[no_mangle]
pub unsafe extern "C" fn cas_pair_dim_k(pair: *const CasPair) -> usize {
    if pair.is_null() {
        return 0;
    }
    unsafe { &*pair }.inner.dim_k()
}

/// # Safety
/// `pair` must be null or a live handle from [`cas_pair_new`].
#[no_mangle]
pub unsafe extern "C" fn cas_pair_dim_p(pair: *const CasPair) -> usize {
    if pair.is_null() {
        return 0;
    }
    unsafe { &*pair }.inner.dim_p()
}

/// # Safety
/// `pair` must be null or a live handle from [`cas_pair_new`].
#[no_mangle]
pub unsafe extern "C" fn cas_pair_rank_k(pair: *const CasPair) -> usize {
    if pair.is_null() {
        return 0;
    }
    unsafe { &*pair }.inner.rank_k()
}

/// Number of abelian Borel-stable subspaces of `p` (all dimensions).
///
/// # Safety
/// `pair` must be null or a live handle from [`cas_pair_new`].
#[no_mangle]
pub unsafe extern "C" fn cas_pair_abelian_count(pair: *const CasPair) -> usize {
    if pair.is_null() {
        return 0;
    }
    let p = unsafe { &*pair };
    catch_unwind(AssertUnwindSafe(|| {
        enumerate_abelian_bstable(&p.inner).len()
    }))
    .unwrap_or(0)
}

/// Construction facts as JSON (same shape as `casimir describe --format
/// json`).
///
/// # Safety
/// `pair` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cas_pair_describe_json(
    pair: *const CasPair,
    out_json: *mut *mut c_char,
) -> CasStatus {
    with_pair(pair, |sp| {
        let ar = build_affine_roots(sp, 6);
        write_string(out_json, describe_json(sp, &ar).to_string())
    })
}

/// The abelian enumeration as JSON: count plus per-subspace dimension,
/// weights and weight sum.
///
/// # Safety
/// `pair` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cas_pair_abelian_json(
    pair: *const CasPair,
    out_json: *mut *mut c_char,
) -> CasStatus {
    with_pair(pair, |sp| {
        let list = enumerate_abelian_bstable(sp);
        let value = serde_json::json!({
            "pair": sp.name(),
            "count": list.len(),
            "subspaces": abelian_json(sp, &list),
        });
        write_string(out_json, value.to_string())
    })
}

/// Casimir spectrum rows for `p <= pmax`, as JSON.
///
/// # Safety
/// `pair` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cas_pair_spectrum_json(
    pair: *const CasPair,
    pmax: u32,
    out_json: *mut *mut c_char,
) -> CasStatus {
    with_pair(pair, |sp| {
        write_string(out_json, spectrum_json(sp, pmax as usize).to_string())
    })
}

/// Runs the verification suite. `which` is one of `garland`, `eigen`,
/// `w`, `gl`, `finito`, `all`. `twice_smax` is the doubled energy bound
/// (so `6` means `s <= 3`). Returns `Ok` when every check passed,
/// `VerificationFailed` when the suite ran but a check failed; the JSON
/// report is written in both cases.
/// # Safety
/// `pair` must be a live handle; `which` must be NUL-terminated;
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cas_pair_verify_json(
    pair: *const CasPair,
    which: *const c_char,
    pmax: u32,
    twice_smax: i64,
    out_json: *mut *mut c_char,
) -> CasStatus {
    with_pair(pair, |sp| {
        let which = match read_str(which) {
            Ok(s) => s.to_ascii_lowercase(),
            Err(e) => return e,
        };
        if !SUITE_NAMES.contains(&which.as_str()) {
            return CasStatus::InvalidArgument;
        }
        if twice_smax < 0 {
            return CasStatus::InvalidArgument;
        }
        let checks = run_suite(sp, &which, pmax as usize, twice_smax, 6);
        let pass = checks.iter().all(|c| c.pass);
        let value = suite_json(sp, &which, &checks, Some(pmax as usize));
        let status = write_string(out_json, value.to_string());
        if status != CasStatus::Ok {
            return status;
        }
        if pass {
            CasStatus::Ok
        } else {
            CasStatus::VerificationFailed
        }
    })
}

/// Test hook: perturbs one structure constant so the verification suite
/// must detect the inconsistency. Bindings use this to prove their
/// plumbing actually reaches the checks.
///
/// # Safety
/// `pair` must be null or a live handle with no aliasing use.
#[no_mangle]
pub unsafe extern "C" fn cas_pair_corrupt(pair: *mut CasPair) {
    if pair.is_null() {
        return;
    }
    let p = unsafe { &mut *pair };
    p.inner.corrupt_structure_constant();
}
