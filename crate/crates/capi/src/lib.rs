//! C ABI for the idealzeta library.
//!
//! Conventions: opaque handles for parsed polynomials, integer status codes
//! for every fallible call, caller-provided buffers for strings.  String
//! outputs report the required size (including the NUL terminator) through
//! `written`, so a too-small buffer can be retried.
//!
//! The generated header lives at `include/idealzeta.h`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;

use idealzeta::cli::compare_report_json;
use idealzeta::lattice::{count_ideals, count_ideals_upto};
use idealzeta::polyring::{parse_poly, MonicPoly};
use idealzeta::report::{build_compare, rational_str};
use idealzeta::series::tn_global_series;
use idealzeta::volume::{mu_exact, VolumeQuery};
use idealzeta::Error;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum IzStatus {
    IzOk = 0,
    IzNullPointer = 1,
    IzInvalidUtf8 = 2,
    IzParseError = 3,
    IzNotMonic = 4,
    IzDegreeZero = 5,
    IzInvalidArgument = 6,
    IzResourceLimit = 7,
    IzOverflow = 8,
    IzBufferTooSmall = 9,
    IzInternal = 10,
}

/// Opaque handle to a parsed monic polynomial.
pub struct IzPoly {
    inner: MonicPoly,
}

fn status_of(err: &Error) -> IzStatus {
    match err {
        Error::Syntax { .. } => IzStatus::IzParseError,
        Error::NotMonic { .. } => IzStatus::IzNotMonic,
        Error::DegreeZero => IzStatus::IzDegreeZero,
        Error::ResourceLimit { .. } => IzStatus::IzResourceLimit,
        _ => IzStatus::IzInvalidArgument,
    }
}

/// Copies `s` (plus NUL) into the caller buffer.  Always stores the required
/// size in `written` when that pointer is non-null.
unsafe fn write_str(s: &str, buf: *mut c_char, buf_len: usize, written: *mut usize) -> IzStatus {
    let bytes = s.as_bytes();
    let needed = bytes.len() + 1;
    if !written.is_null() {
        *written = needed;
    }
    if buf.is_null() || buf_len < needed {
        return IzStatus::IzBufferTooSmall;
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    IzStatus::IzOk
}

fn guarded(body: impl FnOnce() -> IzStatus) -> IzStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => IzStatus::IzInternal,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn iz_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Parses a polynomial expression in `t` (for example "t^2*(t-3)") and
/// returns an owning handle through `out`.  Free it with `iz_poly_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iz_poly_parse(text: *const c_char, out: *mut *mut IzPoly) -> IzStatus {
    if text.is_null() || out.is_null() {
        return IzStatus::IzNullPointer;
    }
    *out = ptr::null_mut();
    let s = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => return IzStatus::IzInvalidUtf8,
    };
    guarded(|| match parse_poly(s) {
        Ok(poly) => {
            *out = Box::into_raw(Box::new(IzPoly { inner: poly }));
            IzStatus::IzOk
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a handle returned by `iz_poly_parse`.  Null is ignored.
///
/// # Safety
/// `poly` must be null or a pointer previously returned by `iz_poly_parse`
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn iz_poly_free(poly: *mut IzPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree of the polynomial; 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn iz_poly_degree(poly: *const IzPoly) -> u32 {
    match poly.as_ref() {
        Some(p) => p.inner.degree() as u32,
        None => 0,
    }
}

/// Writes the canonical rendering (for example "t^3 - 3*t^2").
///
/// # Safety
/// `poly` must be a live handle; `buf`/`written` follow the buffer protocol.
#[no_mangle]
pub unsafe extern "C" fn iz_poly_render(
    poly: *const IzPoly,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> IzStatus {
    let poly = match poly.as_ref() {
        Some(p) => p,
        None => return IzStatus::IzNullPointer,
    };
    write_str(&poly.inner.to_string(), buf, buf_len, written)
}

/// Number of ideals of index exactly `index`.
///
/// # Safety
/// `poly` must be a live handle and `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iz_count_ideals(
    poly: *const IzPoly,
    index: u64,
    resource_cap: u64,
    out_count: *mut u64,
) -> IzStatus {
    let poly = match poly.as_ref() {
        Some(p) => p,
        None => return IzStatus::IzNullPointer,
    };
    if out_count.is_null() {
        return IzStatus::IzNullPointer;
    }
    guarded(|| match count_ideals(&poly.inner, index, resource_cap) {
        Ok(record) => {
            *out_count = record.count;
            IzStatus::IzOk
        }
        Err(e) => status_of(&e),
    })
}

/// Fills `out_counts[0..bound]` with a(1..=bound).
///
/// # Safety
/// `poly` must be a live handle; `out_counts` must point to `bound` slots.
#[no_mangle]
pub unsafe extern "C" fn iz_count_ideals_upto(
    poly: *const IzPoly,
    bound: u64,
    resource_cap: u64,
    out_counts: *mut u64,
) -> IzStatus {
    let poly = match poly.as_ref() {
        Some(p) => p,
        None => return IzStatus::IzNullPointer,
    };
    if out_counts.is_null() {
        return IzStatus::IzNullPointer;
    }
    guarded(|| match count_ideals_upto(&poly.inner, bound, resource_cap) {
        Ok(counts) => {
            for (i, c) in counts.iter().enumerate() {
                *out_counts.add(i) = *c;
            }
            IzStatus::IzOk
        }
        Err(e) => status_of(&e),
    })
}

/// Fills `out[0..=max_exponent]` with the local ideal counts a(p^e)
/// obtained by direct enumeration.
///
/// # Safety
/// `poly` must be a live handle; `out` must point to `max_exponent + 1`
/// slots.
#[no_mangle]
pub unsafe extern "C" fn iz_local_ideal_counts(
    poly: *const IzPoly,
    prime: u64,
    max_exponent: u32,
    resource_cap: u64,
    out: *mut u64,
) -> IzStatus {
    let poly = match poly.as_ref() {
        Some(p) => p,
        None => return IzStatus::IzNullPointer,
    };
    if out.is_null() {
        return IzStatus::IzNullPointer;
    }
    guarded(|| {
        for e in 0..=max_exponent {
            let k = match prime.checked_pow(e) {
                Some(k) => k,
                None => return IzStatus::IzOverflow,
            };
            match count_ideals(&poly.inner, k, resource_cap) {
                Ok(record) => *out.add(e as usize) = record.count,
                Err(err) => return status_of(&err),
            }
        }
        IzStatus::IzOk
    })
}

/// Fills `out[0..bound]` with the closed-form coefficients of the ideal
/// count series of t^n (the shifted zeta product).  Fails with `IzOverflow`
/// when a coefficient does not fit in 64 bits.
///
/// # Safety
/// `out` must point to `bound` slots.
#[no_mangle]
pub unsafe extern "C" fn iz_series_tn(n: u32, bound: u64, out: *mut u64) -> IzStatus {
    if out.is_null() {
        return IzStatus::IzNullPointer;
    }
    if n == 0 || bound == 0 {
        return IzStatus::IzInvalidArgument;
    }
    guarded(|| {
        let series = tn_global_series(n, bound);
        for (i, c) in series.coeffs().iter().enumerate() {
            match c.to_u64() {
                Some(v) => *out.add(i) = v,
                None => return IzStatus::IzOverflow,
            }
        }
        IzStatus::IzOk
    })
}

/// Writes the exact p-adic volume at the given diagonal valuations as a
/// rational string ("1/2", "0", ...).
///
/// # Safety
/// `poly` must be a live handle; `valuations` must point to
/// `valuations_len` entries; `buf`/`written` follow the buffer protocol.
#[no_mangle]
pub unsafe extern "C" fn iz_mu_exact(
    poly: *const IzPoly,
    prime: u64,
    valuations: *const u32,
    valuations_len: usize,
    resource_cap: u64,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> IzStatus {
    let poly = match poly.as_ref() {
        Some(p) => p,
        None => return IzStatus::IzNullPointer,
    };
    if valuations.is_null() {
        return IzStatus::IzNullPointer;
    }
    let b = std::slice::from_raw_parts(valuations, valuations_len).to_vec();
    guarded(|| {
        let query = match VolumeQuery::new(prime, poly.inner.clone(), b.clone()) {
            Ok(q) => q,
            Err(e) => return status_of(&e),
        };
        match mu_exact(&query, resource_cap) {
            Ok(vol) => write_str(&rational_str(&vol.value), buf, buf_len, written),
            Err(e) => status_of(&e),
        }
    })
}

/// Writes the full comparison report (enumeration oracle vs volume
/// reconstruction vs closed forms) as JSON, the same document the CLI
/// prints for `compare --format json`.
///
/// # Safety
/// `poly` must be a live handle; `primes` must point to `primes_len`
/// entries; `buf`/`written` follow the buffer protocol.
#[no_mangle]
pub unsafe extern "C" fn iz_compare_json(
    poly: *const IzPoly,
    primes: *const u64,
    primes_len: usize,
    max_exponent: u32,
    resource_cap: u64,
    paper_mode: bool,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> IzStatus {
    let poly = match poly.as_ref() {
        Some(p) => p,
        None => return IzStatus::IzNullPointer,
    };
    if primes.is_null() {
        return IzStatus::IzNullPointer;
    }
    let primes = std::slice::from_raw_parts(primes, primes_len).to_vec();
    guarded(|| {
        match build_compare(&poly.inner, &primes, max_exponent, resource_cap, paper_mode) {
            Ok(report) => write_str(&compare_report_json(&report), buf, buf_len, written),
            Err(e) => status_of(&e),
        }
    })
}

/// Number of distinct roots of the polynomial modulo a prime.
///
/// # Safety
/// `poly` must be a live handle and `out_roots` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn iz_roots_mod_p(
    poly: *const IzPoly,
    prime: u64,
    out_roots: *mut u64,
) -> IzStatus {
    let poly = match poly.as_ref() {
        Some(p) => p,
        None => return IzStatus::IzNullPointer,
    };
    if out_roots.is_null() {
        return IzStatus::IzNullPointer;
    }
    *out_roots = poly.inner.distinct_roots_mod_p(prime);
    IzStatus::IzOk
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    unsafe fn parse(text: &str) -> *mut IzPoly {
        let c = CString::new(text).unwrap();
        let mut out: *mut IzPoly = ptr::null_mut();
        assert_eq!(iz_poly_parse(c.as_ptr(), &mut out), IzStatus::IzOk);
        assert!(!out.is_null());
        out
    }

    #[test]
    fn parse_render_free() {
        unsafe {
            let p = parse("t^2(t-3)");
            assert_eq!(iz_poly_degree(p), 3);
            let mut buf = vec![0i8; 64];
            let mut written = 0usize;
            assert_eq!(
                iz_poly_render(p, buf.as_mut_ptr() as *mut c_char, buf.len(), &mut written),
                IzStatus::IzOk
            );
            let s = CStr::from_ptr(buf.as_ptr() as *const c_char)
                .to_str()
                .unwrap();
            assert_eq!(s, "t^3 - 3*t^2");
            assert_eq!(written, s.len() + 1);
            iz_poly_free(p);
        }
    }

    #[test]
    fn parse_errors_map_to_statuses() {
        unsafe {
            let mut out: *mut IzPoly = ptr::null_mut();
            let bad = CString::new("2*t^2+1").unwrap();
            assert_eq!(iz_poly_parse(bad.as_ptr(), &mut out), IzStatus::IzNotMonic);
            assert!(out.is_null());
            let worse = CString::new("t +").unwrap();
            assert_eq!(
                iz_poly_parse(worse.as_ptr(), &mut out),
                IzStatus::IzParseError
            );
            assert_eq!(
                iz_poly_parse(ptr::null(), &mut out),
                IzStatus::IzNullPointer
            );
        }
    }

    #[test]
    fn counting_over_the_abi() {
        unsafe {
            let p = parse("t^2");
            let mut count = 0u64;
            assert_eq!(iz_count_ideals(p, 4, 1_000_000, &mut count), IzStatus::IzOk);
            assert_eq!(count, 3);

            let mut upto = vec![0u64; 6];
            assert_eq!(
                iz_count_ideals_upto(p, 6, 1_000_000, upto.as_mut_ptr()),
                IzStatus::IzOk
            );
            assert_eq!(upto, vec![1, 1, 1, 3, 1, 1]);

            let mut local = vec![0u64; 3];
            assert_eq!(
                iz_local_ideal_counts(p, 2, 2, 1_000_000, local.as_mut_ptr()),
                IzStatus::IzOk
            );
            assert_eq!(local, vec![1, 1, 3]);

            let mut roots = 0u64;
            assert_eq!(iz_roots_mod_p(p, 5, &mut roots), IzStatus::IzOk);
            assert_eq!(roots, 1);
            iz_poly_free(p);
        }
    }

    #[test]
    fn series_and_resource_limits() {
        unsafe {
            let mut series = vec![0u64; 8];
            assert_eq!(iz_series_tn(3, 8, series.as_mut_ptr()), IzStatus::IzOk);
            assert_eq!(series, vec![1, 1, 1, 3, 1, 1, 1, 7]);

            let p = parse("t^3");
            let mut count = 0u64;
            assert_eq!(
                iz_count_ideals(p, 64, 10, &mut count),
                IzStatus::IzResourceLimit
            );
            iz_poly_free(p);
        }
    }

    #[test]
    fn mu_exact_string_protocol() {
        unsafe {
            let p = parse("t^3");
            let b = [1u32, 1, 2];
            // query the size first
            let mut written = 0usize;
            assert_eq!(
                iz_mu_exact(
                    p,
                    2,
                    b.as_ptr(),
                    b.len(),
                    1_000_000,
                    ptr::null_mut(),
                    0,
                    &mut written
                ),
                IzStatus::IzBufferTooSmall
            );
            assert_eq!(written, 4); // "1/2" + NUL
            let mut buf = vec![0i8; written];
            assert_eq!(
                iz_mu_exact(
                    p,
                    2,
                    b.as_ptr(),
                    b.len(),
                    1_000_000,
                    buf.as_mut_ptr() as *mut c_char,
                    buf.len(),
                    &mut written
                ),
                IzStatus::IzOk
            );
            let s = CStr::from_ptr(buf.as_ptr() as *const c_char)
                .to_str()
                .unwrap();
            assert_eq!(s, "1/2");
            iz_poly_free(p);
        }
    }

    #[test]
    fn compare_json_over_the_abi() {
        unsafe {
            let p = parse("t^2(t-1)");
            let primes = [3u64, 5];
            let mut written = 0usize;
            let status = iz_compare_json(
                p,
                primes.as_ptr(),
                primes.len(),
                1,
                1_000_000,
                true,
                ptr::null_mut(),
                0,
                &mut written,
            );
            assert_eq!(status, IzStatus::IzBufferTooSmall);
            let mut buf = vec![0i8; written];
            assert_eq!(
                iz_compare_json(
                    p,
                    primes.as_ptr(),
                    primes.len(),
                    1,
                    1_000_000,
                    true,
                    buf.as_mut_ptr() as *mut c_char,
                    buf.len(),
                    &mut written,
                ),
                IzStatus::IzOk
            );
            let s = CStr::from_ptr(buf.as_ptr() as *const c_char)
                .to_str()
                .unwrap();
            let v: serde_json::Value = serde_json::from_str(s).unwrap();
            assert_eq!(v["schema"], "idealzeta/1");
            assert_eq!(v["verdicts"]["volume-reconstruction"], "exact-match");
            iz_poly_free(p);
        }
    }

    #[test]
    fn version_is_nul_terminated() {
        unsafe {
            let v = CStr::from_ptr(iz_version()).to_str().unwrap();
            assert!(!v.is_empty());
        }
    }
}
