//! C interface to `pellab`.
//!
//! Objects are opaque handles freed with their `*_free` function. Every
//! entry point returns a [`PellabStatus`]; on anything but `Ok` a message
//! is available from [`pellab_last_error`] on the same thread. Strings
//! returned to the caller are released with [`pellab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pellab::census::{census, BruteForce, CensusError, CensusOptions};
use pellab::hurwitz::{
    normalize_special, power_test, primitivity_profile, validate, standard_tuple, HurwitzError,
    HurwitzTuple,
};
use pellab::pell::{
    chebyshev, extract_mth_root, generate_from_seed, power_polynomial, power_solution, verify_pell,
    Policy,
};
use pellab::poly::Poly;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PellabStatus {
    Ok = 0,
    /// Valid input, negative answer (not a solution, no root, ...).
    Rejected = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NullPointer = 4,
    NotSpecial = 5,
    TooLarge = 6,
    Panic = 7,
}

pub struct PellabPoly(Poly);

pub struct PellabTuple(HurwitzTuple);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (PellabStatus, String);

fn guard(f: impl FnOnce() -> Result<PellabStatus, Failure>) -> PellabStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            PellabStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    (PellabStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (PellabStatus::ParseError, format!("{what} is not UTF-8")))
}

unsafe fn poly_ref<'a>(p: *const PellabPoly, what: &str) -> Result<&'a Poly, Failure> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null(what))
}

unsafe fn tuple_ref<'a>(t: *const PellabTuple, what: &str) -> Result<&'a HurwitzTuple, Failure> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed_poly(p: Poly) -> *mut PellabPoly {
    Box::into_raw(Box::new(PellabPoly(p)))
}

fn boxed_tuple(t: HurwitzTuple) -> *mut PellabTuple {
    Box::into_raw(Box::new(PellabTuple(t)))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn policy(allow_d1: bool) -> Policy {
    Policy { allow_d1 }
}

fn hurwitz_failure(e: HurwitzError) -> Failure {
    let status = match e {
        HurwitzError::NotSpecialForm => PellabStatus::NotSpecial,
        HurwitzError::Perm(pellab::perm::PermError::Parse { .. }) | HurwitzError::Json(_) => {
            PellabStatus::ParseError
        }
        _ => PellabStatus::InvalidArgument,
    };
    (status, e.to_string())
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn pellab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pellab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial such as `t^4 - 2*t^2 + 1`.
///
/// # Safety
/// `src` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_poly_parse(
    src: *const c_char,
    out: *mut *mut PellabPoly,
) -> PellabStatus {
    guard(|| {
        let s = str_arg(src, "src")?;
        let p: Poly = s
            .parse()
            .map_err(|e| (PellabStatus::ParseError, format!("{e}")))?;
        put(out, boxed_poly(p), "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// Canonical text of `p`, or null on a null handle. Free with
/// [`pellab_string_free`].
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pellab_poly_to_string(p: *const PellabPoly) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        out = c_string(poly_ref(p, "p")?.to_string());
        Ok(PellabStatus::Ok)
    });
    out
}

/// Degree of `p`, or -1 for the zero polynomial.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_poly_degree(p: *const PellabPoly, out: *mut i64) -> PellabStatus {
    guard(|| {
        let deg = poly_ref(p, "p")?.degree().map_or(-1, |d| d as i64);
        put(out, deg, "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pellab_poly_free(p: *mut PellabPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The Chebyshev polynomial `T_m`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_chebyshev(m: u32, out: *mut *mut PellabPoly) -> PellabStatus {
    guard(|| {
        put(out, boxed_poly(chebyshev(m as usize)), "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// The power polynomial `f_m`, `m >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_power_polynomial(
    m: u32,
    out: *mut *mut PellabPoly,
) -> PellabStatus {
    guard(|| {
        if m == 0 {
            return Err((PellabStatus::InvalidArgument, "m must be at least 1".into()));
        }
        put(out, boxed_poly(power_polynomial(m as usize)), "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// Checks `A^2 - D B^2 = 1`; on success writes `deg A` and `deg D / 2`.
/// `Rejected` carries the reason in [`pellab_last_error`].
///
/// # Safety
/// Handles must be live; `out_n` and `out_d` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_verify_pell(
    a: *const PellabPoly,
    b: *const PellabPoly,
    d: *const PellabPoly,
    allow_d1: bool,
    out_n: *mut usize,
    out_d: *mut usize,
) -> PellabStatus {
    guard(|| {
        let (a, b, d) = (poly_ref(a, "a")?, poly_ref(b, "b")?, poly_ref(d, "d")?);
        match verify_pell(a, b, d, policy(allow_d1)) {
            Ok(s) => {
                if !out_n.is_null() {
                    out_n.write(s.n());
                }
                if !out_d.is_null() {
                    out_d.write(s.half_degree());
                }
                Ok(PellabStatus::Ok)
            }
            Err(r) => Err((PellabStatus::Rejected, r.to_string())),
        }
    })
}

/// Completes a seed `A` to `(A, B, D)`.
///
/// # Safety
/// `a` must be live; `out_b` and `out_d` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_seed(
    a: *const PellabPoly,
    allow_d1: bool,
    out_b: *mut *mut PellabPoly,
    out_d: *mut *mut PellabPoly,
) -> PellabStatus {
    guard(|| {
        if out_b.is_null() || out_d.is_null() {
            return Err(null("output"));
        }
        match generate_from_seed(poly_ref(a, "a")?, policy(allow_d1)) {
            Ok(s) => {
                out_b.write(boxed_poly(s.b().clone()));
                out_d.write(boxed_poly(s.d().clone()));
                Ok(PellabStatus::Ok)
            }
            Err(r) => Err((PellabStatus::Rejected, r.to_string())),
        }
    })
}

/// The `m`-th power `(A_m, B_m)` of a verified solution.
///
/// # Safety
/// Handles must be live; `out_a` and `out_b` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_power_solution(
    a: *const PellabPoly,
    b: *const PellabPoly,
    d: *const PellabPoly,
    allow_d1: bool,
    m: u32,
    out_a: *mut *mut PellabPoly,
    out_b: *mut *mut PellabPoly,
) -> PellabStatus {
    guard(|| {
        if m == 0 {
            return Err((PellabStatus::InvalidArgument, "m must be at least 1".into()));
        }
        if out_a.is_null() || out_b.is_null() {
            return Err(null("output"));
        }
        let (a, b, d) = (poly_ref(a, "a")?, poly_ref(b, "b")?, poly_ref(d, "d")?);
        let s = verify_pell(a, b, d, policy(allow_d1))
            .map_err(|r| (PellabStatus::Rejected, r.to_string()))?;
        let p = power_solution(&s, m as usize);
        out_a.write(boxed_poly(p.a().clone()));
        out_b.write(boxed_poly(p.b().clone()));
        Ok(PellabStatus::Ok)
    })
}

/// A rational `A'` with `T_m(A') = sign * A`; `Rejected` when none exists.
///
/// # Safety
/// `a` must be live; `out_root` and `out_sign` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_extract_mth_root(
    a: *const PellabPoly,
    m: u32,
    out_root: *mut *mut PellabPoly,
    out_sign: *mut i32,
) -> PellabStatus {
    guard(|| {
        if out_root.is_null() || out_sign.is_null() {
            return Err(null("output"));
        }
        match extract_mth_root(poly_ref(a, "a")?, m as usize) {
            Some(r) => {
                out_root.write(boxed_poly(r.root));
                out_sign.write(r.sign as i32);
                Ok(PellabStatus::Ok)
            }
            None => Err((
                PellabStatus::Rejected,
                format!("no rational Chebyshev root of order {m}"),
            )),
        }
    })
}

/// The explicit primitive tuple for `n >= d >= 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_standard(
    n: usize,
    d: usize,
    out: *mut *mut PellabTuple,
) -> PellabStatus {
    guard(|| {
        let t = standard_tuple(n, d).map_err(hurwitz_failure)?;
        put(out, boxed_tuple(t), "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// Reads a tuple from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_from_json(
    json: *const c_char,
    out: *mut *mut PellabTuple,
) -> PellabStatus {
    guard(|| {
        let t = HurwitzTuple::from_json(str_arg(json, "json")?).map_err(hurwitz_failure)?;
        put(out, boxed_tuple(t), "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// JSON form of `t`, or null on a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_to_json(t: *const PellabTuple) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        out = c_string(tuple_ref(t, "t")?.to_json());
        Ok(PellabStatus::Ok)
    });
    out
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_free(t: *mut PellabTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Runs every monodromy check. Writes whether all passed and, when
/// `out_report` is not null, the full report as JSON.
///
/// # Safety
/// `t` must be live; `out_passed` writable; `out_report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_validate(
    t: *const PellabTuple,
    out_passed: *mut bool,
    out_report: *mut *mut c_char,
) -> PellabStatus {
    guard(|| {
        let report = validate(tuple_ref(t, "t")?);
        put(out_passed, report.passed, "out_passed")?;
        if !out_report.is_null() {
            out_report.write(c_string(
                serde_json::to_string(&report).expect("report serializes"),
            ));
        }
        Ok(PellabStatus::Ok)
    })
}

/// Block conditions for an `m`-th power on a special tuple.
///
/// # Safety
/// `t` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_power_test(
    t: *const PellabTuple,
    m: usize,
    out: *mut bool,
) -> PellabStatus {
    guard(|| {
        let ok = power_test(tuple_ref(t, "t")?, m).map_err(hurwitz_failure)?;
        put(out, ok, "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// Writes up to `capacity` powers of the profile into `buf` and the full
/// count into `out_len`.
///
/// # Safety
/// `t` must be live; `buf` valid for `capacity` writes; `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_profile(
    t: *const PellabTuple,
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> PellabStatus {
    guard(|| {
        let profile = primitivity_profile(tuple_ref(t, "t")?).map_err(hurwitz_failure)?;
        if capacity > 0 && buf.is_null() {
            return Err(null("buf"));
        }
        for (i, &m) in profile.iter().take(capacity).enumerate() {
            buf.add(i).write(m);
        }
        put(out_len, profile.len(), "out_len")?;
        Ok(PellabStatus::Ok)
    })
}

/// A conjugate of `t` in special form.
///
/// # Safety
/// `t` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_tuple_normalize(
    t: *const PellabTuple,
    out: *mut *mut PellabTuple,
) -> PellabStatus {
    guard(|| {
        let s = normalize_special(tuple_ref(t, "t")?).map_err(hurwitz_failure)?;
        put(out, boxed_tuple(s), "out")?;
        Ok(PellabStatus::Ok)
    })
}

/// The census report for degree `n` as JSON. With `brute_force` set the
/// exhaustive search runs, failing with `TooLarge` above `brute_max`.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pellab_census_json(
    n: usize,
    brute_force: bool,
    brute_max: usize,
    out_json: *mut *mut c_char,
) -> PellabStatus {
    guard(|| {
        let options = CensusOptions {
            brute_force: if brute_force {
                BruteForce::Always
            } else {
                BruteForce::Never
            },
            brute_max,
        };
        let report = census(n, &options).map_err(|e| {
            let status = match e {
                CensusError::TooLarge { .. } => PellabStatus::TooLarge,
                CensusError::InvalidN { .. } => PellabStatus::InvalidArgument,
            };
            (status, e.to_string())
        })?;
        put(
            out_json,
            c_string(serde_json::to_string(&report).expect("report serializes")),
            "out_json",
        )?;
        Ok(PellabStatus::Ok)
    })
}
