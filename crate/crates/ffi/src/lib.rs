//! C ABI for the angelesco engine.
//!
//! Handles are opaque pointers created and destroyed by this library; every
//! fallible call returns an [`AngStatus`] and leaves a retrievable message
//! behind on failure (`ang_last_error`). Numeric values cross the boundary
//! as decimal strings at the handle's working precision, so nothing is lost
//! to binary floats.
//!
//! Parameter lists are comma-separated complex literals such as
//! `"0.6+0.3i,1.4-0.2i"`. Status codes mirror the CLI exit codes: 0 ok,
//! 1 verification failure, 2 parameter/parse error, 3 numerical failure.

use angelesco::analysis::{find_roots, full_verify, Tolerances};
use angelesco::constructors::{explicit_series, raising_cascade, rodrigues_polynomial};
use angelesco::error::Error;
use angelesco::measures::{compute_moment_table, moment_table_for};
use angelesco::multi_index::MultiIndex;
use angelesco::oracle::solve_monic;
use angelesco::params::ModelParams;
use angelesco::poly::PolyW;
use angelesco::precision::PrecisionContext;
use angelesco::recurrence::{default_provider, generate, recurrence_table, recurrence_table_csv};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AngStatus {
    Ok = 0,
    VerifyFailed = 1,
    ParamError = 2,
    NumericError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> AngStatus {
    match err {
        Error::ParamDomain(_)
        | Error::Parse(_)
        | Error::Precision(_)
        | Error::DuplicateNode(_)
        | Error::MomentRange(_)
        | Error::Io(_)
        | Error::Json(_) => AngStatus::ParamError,
        _ => AngStatus::NumericError,
    }
}

fn fail(err: Error) -> AngStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Opaque handle: a validated model (family, parameters, precision).
pub struct AngParams {
    inner: ModelParams,
}

/// Opaque handle: a computed polynomial in `w = z^r`.
pub struct AngPoly {
    poly: PolyW,
    ctx: PrecisionContext,
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, AngStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(AngStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        AngStatus::InvalidUtf8
    })
}

fn export_string(s: String, out: *mut *mut c_char) -> AngStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return AngStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            AngStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte".into());
            AngStatus::NumericError
        }
    }
}

fn guard<F: FnOnce() -> AngStatus>(f: F) -> AngStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".into());
            AngStatus::Panic
        }
    }
}

fn parse_params(
    build: impl FnOnce(&PrecisionContext) -> Result<ModelParams, Error>,
    digits: u32,
    out: *mut *mut AngParams,
) -> AngStatus {
    if out.is_null() {
        set_error("null output pointer".into());
        return AngStatus::NullPointer;
    }
    let ctx = match PrecisionContext::new(digits) {
        Ok(ctx) => ctx,
        Err(e) => return fail(e),
    };
    match build(&ctx) {
        Ok(params) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(AngParams { inner: params })) };
            AngStatus::Ok
        }
        Err(e) => fail(e),
    }
}

fn parse_list(
    ctx: &PrecisionContext,
    s: &str,
) -> Result<Vec<angelesco::rug::Complex>, Error> {
    s.split(',').map(|part| ctx.parse_complex(part)).collect()
}

/// Create a Charlier model from a comma list of nonzero, distinct `a`
/// parameters (one per ray).
///
/// # Safety
/// `a_list` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ang_params_charlier(
    a_list: *const c_char,
    digits: u32,
    out: *mut *mut AngParams,
) -> AngStatus {
    guard(|| {
        let a = match cstr(a_list) {
            Ok(s) => s.to_owned(),
            Err(status) => return status,
        };
        parse_params(
            |ctx| ModelParams::charlier(parse_list(ctx, &a)?, ctx.clone()),
            digits,
            out,
        )
    })
}

/// Create a Meixner first-kind model: per-ray `c` list and one shared `beta`.
///
/// # Safety
/// Both strings must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ang_params_meixner_first(
    c_list: *const c_char,
    beta: *const c_char,
    digits: u32,
    out: *mut *mut AngParams,
) -> AngStatus {
    guard(|| {
        let (c, b) = match (cstr(c_list), cstr(beta)) {
            (Ok(c), Ok(b)) => (c.to_owned(), b.to_owned()),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        parse_params(
            |ctx| {
                ModelParams::meixner_first(parse_list(ctx, &c)?, ctx.parse_complex(&b)?, ctx.clone())
            },
            digits,
            out,
        )
    })
}

/// Create a Meixner second-kind model: per-ray `beta` list and one shared `c`.
///
/// # Safety
/// Both strings must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ang_params_meixner_second(
    beta_list: *const c_char,
    c: *const c_char,
    digits: u32,
    out: *mut *mut AngParams,
) -> AngStatus {
    guard(|| {
        let (b, cv) = match (cstr(beta_list), cstr(c)) {
            (Ok(b), Ok(c)) => (b.to_owned(), c.to_owned()),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        parse_params(
            |ctx| {
                ModelParams::meixner_second(
                    parse_list(ctx, &b)?,
                    ctx.parse_complex(&cv)?,
                    ctx.clone(),
                )
            },
            digits,
            out,
        )
    })
}

/// Number of rays of the star (0 for a null handle).
///
/// # Safety
/// `params` must be null or a live handle from `ang_params_*`.
#[no_mangle]
pub unsafe extern "C" fn ang_params_rays(params: *const AngParams) -> usize {
    if params.is_null() {
        return 0;
    }
    unsafe { &*params }.inner.r()
}

/// Release a params handle. Null is allowed.
///
/// # Safety
/// `params` must be null or a live handle, not freed before.
#[no_mangle]
pub unsafe extern "C" fn ang_params_free(params: *mut AngParams) {
    if !params.is_null() {
        drop(unsafe { Box::from_raw(params) });
    }
}

fn multi_index_from(params: &ModelParams, n: *const u32, n_len: usize) -> Result<MultiIndex, AngStatus> {
    if n.is_null() {
        set_error("null multi-index pointer".into());
        return Err(AngStatus::NullPointer);
    }
    let comps = unsafe { std::slice::from_raw_parts(n, n_len) }.to_vec();
    if comps.len() != params.r() {
        set_error(format!(
            "multi-index has {} entries but the model has {} rays",
            comps.len(),
            params.r()
        ));
        return Err(AngStatus::ParamError);
    }
    Ok(MultiIndex::new(comps))
}

fn compute_by_method(
    params: &ModelParams,
    idx: &MultiIndex,
    method: &str,
) -> Result<PolyW, Error> {
    match method {
        "series" => explicit_series(params, idx),
        "cascade" => raising_cascade(params, idx, None),
        "rodrigues" => rodrigues_polynomial(params, idx),
        "recurrence" => {
            let moments = moment_table_for(params, idx.total())?;
            let provider = default_provider(params, &moments);
            generate(params, idx, None, provider.as_ref())
        }
        "oracle" => {
            let moments = moment_table_for(params, idx.total())?;
            Ok(solve_monic(params, idx, &moments)?.0)
        }
        other => Err(Error::ParamDomain(format!(
            "unknown method {other:?} (expected series, cascade, rodrigues, recurrence, or oracle)"
        ))),
    }
}

/// Compute the monic polynomial at the multi-index `n` (length `n_len`,
/// one entry per ray) by the named construction route.
///
/// # Safety
/// `params` must be a live handle from `ang_params_*`; `n` must point to
/// `n_len` entries; `method` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ang_compute(
    params: *const AngParams,
    n: *const u32,
    n_len: usize,
    method: *const c_char,
    out: *mut *mut AngPoly,
) -> AngStatus {
    guard(|| {
        if params.is_null() || out.is_null() {
            set_error("null handle".into());
            return AngStatus::NullPointer;
        }
        let params = &unsafe { &*params }.inner;
        let method = match cstr(method) {
            Ok(m) => m.to_owned(),
            Err(s) => return s,
        };
        let idx = match multi_index_from(params, n, n_len) {
            Ok(idx) => idx,
            Err(s) => return s,
        };
        match compute_by_method(params, &idx, &method) {
            Ok(poly) => {
                clear_error();
                unsafe {
                    *out = Box::into_raw(Box::new(AngPoly {
                        poly,
                        ctx: params.ctx().clone(),
                    }))
                };
                AngStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Degree of the polynomial in `w` (0 for the constant; 0 for null).
///
/// # Safety
/// `poly` must be null or a live handle from `ang_compute`.
#[no_mangle]
pub unsafe extern "C" fn ang_poly_degree(poly: *const AngPoly) -> usize {
    if poly.is_null() {
        return 0;
    }
    unsafe { &*poly }.poly.degree().unwrap_or(0)
}

/// Coefficient of `w^m` as two decimal strings (free with
/// `ang_string_free`).
///
/// # Safety
/// `poly` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ang_poly_coeff(
    poly: *const AngPoly,
    m: usize,
    re_out: *mut *mut c_char,
    im_out: *mut *mut c_char,
) -> AngStatus {
    guard(|| {
        if poly.is_null() {
            set_error("null polynomial handle".into());
            return AngStatus::NullPointer;
        }
        let handle = unsafe { &*poly };
        let coeff = handle.poly.coeff(m, &handle.ctx);
        let (re, im) = handle.ctx.format_complex(&coeff);
        let status = export_string(re, re_out);
        if status != AngStatus::Ok {
            return status;
        }
        export_string(im, im_out)
    })
}

/// Evaluate the polynomial at a complex `w` given as a decimal literal;
/// the value comes back as two decimal strings.
///
/// # Safety
/// `poly` must be a live handle; `w` NUL-terminated; outputs valid.
#[no_mangle]
pub unsafe extern "C" fn ang_poly_eval(
    poly: *const AngPoly,
    w: *const c_char,
    re_out: *mut *mut c_char,
    im_out: *mut *mut c_char,
) -> AngStatus {
    guard(|| {
        if poly.is_null() {
            set_error("null polynomial handle".into());
            return AngStatus::NullPointer;
        }
        let handle = unsafe { &*poly };
        let w = match cstr(w) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let point = match handle.ctx.parse_complex(w) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let value = handle.poly.eval(&point, &handle.ctx);
        let (re, im) = handle.ctx.format_complex(&value);
        let status = export_string(re, re_out);
        if status != AngStatus::Ok {
            return status;
        }
        export_string(im, im_out)
    })
}

/// Release a polynomial handle. Null is allowed.
///
/// # Safety
/// `poly` must be null or a live handle, not freed before.
#[no_mangle]
pub unsafe extern "C" fn ang_poly_free(poly: *mut AngPoly) {
    if !poly.is_null() {
        drop(unsafe { Box::from_raw(poly) });
    }
}

/// Run the verification suite up to `nmax` and return the report as JSON
/// (free with `ang_string_free`). Returns `Ok` when every check passes and
/// `VerifyFailed` when any hard check fails (the JSON is produced either
/// way).
///
/// # Safety
/// `params` must be a live handle and `report_json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ang_verify(
    params: *const AngParams,
    nmax: u32,
    seed: u64,
    report_json_out: *mut *mut c_char,
) -> AngStatus {
    guard(|| {
        if params.is_null() {
            set_error("null params handle".into());
            return AngStatus::NullPointer;
        }
        let params = &unsafe { &*params }.inner;
        let ctx = params.ctx();
        let tol = Tolerances::for_context(ctx);
        let report = match full_verify(params, nmax, &tol, seed) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let passed = report.all_passed();
        let json = serde_json::to_string_pretty(&report.to_json(ctx)).unwrap_or_default();
        let status = export_string(json, report_json_out);
        if status != AngStatus::Ok {
            return status;
        }
        if passed {
            clear_error();
            AngStatus::Ok
        } else {
            set_error(format!(
                "failed checks: {}",
                report.failed_names().join(", ")
            ));
            AngStatus::VerifyFailed
        }
    })
}

/// Roots of the polynomial at `n` (by the recurrence route) as the zeros
/// CSV: `w` rows then fan-out `z` rows.
///
/// # Safety
/// As for `ang_compute`; `csv_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ang_zeros_csv(
    params: *const AngParams,
    n: *const u32,
    n_len: usize,
    csv_out: *mut *mut c_char,
) -> AngStatus {
    guard(|| {
        if params.is_null() {
            set_error("null params handle".into());
            return AngStatus::NullPointer;
        }
        let params = &unsafe { &*params }.inner;
        let idx = match multi_index_from(params, n, n_len) {
            Ok(idx) => idx,
            Err(s) => return s,
        };
        let poly = match compute_by_method(params, &idx, "recurrence") {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        match find_roots(&poly, params.r(), params.ctx()) {
            Ok(zeros) => {
                clear_error();
                export_string(zeros.to_csv(params.ctx()), csv_out)
            }
            Err(e) => fail(e),
        }
    })
}

/// Certified moment table as JSON with tolerance `10^-(digits-10)`.
///
/// # Safety
/// `params` must be a live handle and `json_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ang_moments_json(
    params: *const AngParams,
    jmax: usize,
    mmax: usize,
    json_out: *mut *mut c_char,
) -> AngStatus {
    guard(|| {
        if params.is_null() {
            set_error("null params handle".into());
            return AngStatus::NullPointer;
        }
        let params = &unsafe { &*params }.inner;
        let ctx = params.ctx();
        let tol = ctx.pow10(-(ctx.digits() as i32) + 10);
        match compute_moment_table(params, jmax, mmax, &tol) {
            Ok(table) => {
                clear_error();
                let json = serde_json::to_string_pretty(&table.to_json(params)).unwrap_or_default();
                export_string(json, json_out)
            }
            Err(e) => fail(e),
        }
    })
}

/// Nearest-neighbor recurrence coefficients for all `|n| <= nmax` as CSV.
///
/// # Safety
/// `params` must be a live handle and `csv_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ang_recurrence_table_csv(
    params: *const AngParams,
    nmax: u32,
    csv_out: *mut *mut c_char,
) -> AngStatus {
    guard(|| {
        if params.is_null() {
            set_error("null params handle".into());
            return AngStatus::NullPointer;
        }
        let params = &unsafe { &*params }.inner;
        let moments = match moment_table_for(params, nmax + 1) {
            Ok(m) => m,
            Err(e) => return fail(e),
        };
        let provider = default_provider(params, &moments);
        match recurrence_table(params, nmax, provider.as_ref()) {
            Ok(rows) => {
                clear_error();
                export_string(recurrence_table_csv(&rows, params.r(), params.ctx()), csv_out)
            }
            Err(e) => fail(e),
        }
    })
}

/// Message for the most recent failure on this thread (free with
/// `ang_string_free`), or null if the last call succeeded.
#[no_mangle]
pub extern "C" fn ang_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Free a string returned by this library. Null is allowed.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn ang_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
