//! C interface over opaque handles.
//!
//! Every fallible call returns a [`GwStatus`]. On failure the message is kept
//! per thread and read with [`gw_last_error_message`]. Handles and strings
//! returned by this library are released with the matching `*_free` call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use galois_width::cli::{cmd_group, cmd_monodromy, cmd_poly, RunConfig, Verification};
use galois_width::expr::{evaluate_with, parse, DEFAULT_DEGREE_CAP};
use galois_width::width::{width_oracle, width_with, Confidence, WidthReport};
use galois_width::{Error, PermGroup};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    BoundExceeded = 5,
    Reducible = 6,
    NotSquarefree = 7,
    Tracking = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GwConfidence {
    Proved = 0,
    HeuristicLowerBound = 1,
    UpperBoundOnly = 2,
}

/// Tunable bounds; obtain defaults from [`gw_options_default`]. Zero bounds
/// are rejected.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GwOptions {
    pub oracle_bound: u64,
    pub mu_bound: u64,
    pub coset_cap: u64,
    pub prime_budget: u64,
    pub match_tol: f64,
    pub cross_check: bool,
}

/// A permutation group.
pub struct GwGroup {
    group: PermGroup,
}

/// A width report together with its JSON rendering.
pub struct GwReport {
    report: WidthReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GwStatus {
    match e {
        Error::Parse { .. } | Error::OutOfRange { .. } => GwStatus::Parse,
        Error::BoundExceeded { .. } | Error::DegreeCap { .. } | Error::QuotientCap { .. } | Error::TooManyBranchPoints { .. } => {
            GwStatus::BoundExceeded
        }
        Error::Reducible { .. } => GwStatus::Reducible,
        Error::NotSquarefree { .. } => GwStatus::NotSquarefree,
        Error::Tracking { .. } => GwStatus::Tracking,
        Error::Internal(_) | Error::SeriesIncomplete { .. } | Error::MalformedChain(_) => GwStatus::Internal,
        _ => GwStatus::InvalidInput,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (GwStatus, String)>) -> GwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GwStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {message}"));
            GwStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (GwStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, (GwStatus, String)> {
    if text.is_null() {
        return Err((GwStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(text).to_str().map_err(|e| (GwStatus::InvalidUtf8, format!("argument is not UTF-8: {e}")))
}

fn check_out<T>(out: *mut *mut T) -> Result<(), (GwStatus, String)> {
    if out.is_null() {
        return Err((GwStatus::NullPointer, "null output pointer".into()));
    }
    Ok(())
}

fn config(options: *const GwOptions) -> Result<RunConfig, (GwStatus, String)> {
    let mut cfg = RunConfig::default();
    if options.is_null() {
        return Ok(cfg);
    }
    // SAFETY: non-null and supplied by the caller as a valid GwOptions
    let o = unsafe { *options };
    if o.oracle_bound == 0 || o.mu_bound == 0 || o.coset_cap == 0 || o.prime_budget == 0 {
        return Err((GwStatus::InvalidInput, "bounds must be positive".into()));
    }
    if !(o.match_tol > 0.0 && o.match_tol.is_finite()) {
        return Err((GwStatus::InvalidInput, "match tolerance must be positive".into()));
    }
    cfg.oracle_bound = o.oracle_bound;
    cfg.mu_bound = o.mu_bound;
    cfg.coset_cap = o.coset_cap;
    cfg.prime_budget = usize::try_from(o.prime_budget).unwrap_or(usize::MAX);
    cfg.monodromy.match_tol = o.match_tol;
    cfg.verification = if o.cross_check { Verification::CrossCheck } else { Verification::Fast };
    Ok(cfg)
}

fn boxed_report(report: WidthReport, json: serde_json::Value) -> *mut GwReport {
    let json = CString::new(json.to_string()).expect("JSON has no nul bytes");
    Box::into_raw(Box::new(GwReport { report, json }))
}

fn plain_json(report: &WidthReport) -> serde_json::Value {
    serde_json::to_value(report.to_json()).expect("serializable")
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn gw_options_default() -> GwOptions {
    let cfg = RunConfig::default();
    GwOptions {
        oracle_bound: cfg.oracle_bound,
        mu_bound: cfg.mu_bound,
        coset_cap: cfg.coset_cap,
        prime_budget: cfg.prime_budget as u64,
        match_tol: cfg.monodromy.match_tol,
        cross_check: false,
    }
}

/// Builds the group named by a group expression such as `"wr(S(2),S(3))"`.
///
/// # Safety
/// `expr` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gw_group_parse(expr: *const c_char, out: *mut *mut GwGroup) -> GwStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(expr)?;
        let e = parse(text).map_err(lib_err)?;
        let group = evaluate_with(&e, DEFAULT_DEGREE_CAP).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(GwGroup { group }));
        Ok(())
    })
}

/// Number of points acted on; 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gw_group_degree(group: *const GwGroup) -> usize {
    group.as_ref().map_or(0, |g| g.group.degree())
}

/// Group order in decimal, to be released with [`gw_string_free`]; null for
/// a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gw_group_order(group: *const GwGroup) -> *mut c_char {
    match group.as_ref() {
        Some(g) => CString::new(g.group.order().to_string()).expect("digits").into_raw(),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `group` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gw_group_free(group: *mut GwGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Width of a built group via its composition factors.
///
/// # Safety
/// `group` must be a live handle, `options` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gw_width_group(group: *const GwGroup, options: *const GwOptions, out: *mut *mut GwReport) -> GwStatus {
    guard(|| {
        check_out(out)?;
        let g = group.as_ref().ok_or((GwStatus::NullPointer, "null group".into()))?;
        let cfg = config(options)?;
        let report = width_with(&g.group, &cfg.width_options()).map_err(lib_err)?;
        let json = plain_json(&report);
        *out = boxed_report(report, json);
        Ok(())
    })
}

/// Width by exhaustive search over maximal chains; fails with
/// `BoundExceeded` above `options.oracle_bound`.
///
/// # Safety
/// As for [`gw_width_group`].
#[no_mangle]
pub unsafe extern "C" fn gw_width_oracle(group: *const GwGroup, options: *const GwOptions, out: *mut *mut GwReport) -> GwStatus {
    guard(|| {
        check_out(out)?;
        let g = group.as_ref().ok_or((GwStatus::NullPointer, "null group".into()))?;
        let cfg = config(options)?;
        let report = width_oracle(&g.group, cfg.oracle_bound).map_err(lib_err)?;
        let json = plain_json(&report);
        *out = boxed_report(report, json);
        Ok(())
    })
}

/// Width of a group expression, falling back to symbolic factors for groups
/// too large to build.
///
/// # Safety
/// `expr` must be a nul-terminated string, `options` null or valid, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gw_width_expr(expr: *const c_char, options: *const GwOptions, out: *mut *mut GwReport) -> GwStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(expr)?;
        let cfg = config(options)?;
        let o = cmd_group(text, &cfg).map_err(lib_err)?;
        *out = boxed_report(o.report, o.json);
        Ok(())
    })
}

/// Width of the Galois group of an integer polynomial in `x`, either as an
/// expression or as a JSON coefficient array in ascending order.
///
/// # Safety
/// As for [`gw_width_expr`].
#[no_mangle]
pub unsafe extern "C" fn gw_width_polynomial(
    poly: *const c_char,
    options: *const GwOptions,
    out: *mut *mut GwReport,
) -> GwStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(poly)?;
        let cfg = config(options)?;
        let (o, _) = cmd_poly(text, &cfg).map_err(lib_err)?;
        *out = boxed_report(o.report, o.json);
        Ok(())
    })
}

/// Monodromy width lower bound of a family in `y` and `p`.
///
/// # Safety
/// As for [`gw_width_expr`].
#[no_mangle]
pub unsafe extern "C" fn gw_width_family(family: *const c_char, options: *const GwOptions, out: *mut *mut GwReport) -> GwStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(family)?;
        let cfg = config(options)?;
        let (o, _) = cmd_monodromy(text, &cfg).map_err(lib_err)?;
        *out = boxed_report(o.report, o.json);
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gw_report_width(report: *const GwReport) -> u64 {
    report.as_ref().map_or(0, |r| r.report.width)
}

/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gw_report_confidence(report: *const GwReport) -> GwConfidence {
    match report.as_ref().map(|r| r.report.confidence) {
        Some(Confidence::Proved) => GwConfidence::Proved,
        Some(Confidence::HeuristicLowerBound) => GwConfidence::HeuristicLowerBound,
        _ => GwConfidence::UpperBoundOnly,
    }
}

/// Number of composition factors listed in the report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gw_report_factor_count(report: *const GwReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.factors.len())
}

/// JSON rendering, owned by the report.
///
/// # Safety
/// `report` must be a live handle; the string dies with it.
#[no_mangle]
pub unsafe extern "C" fn gw_report_json(report: *const GwReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gw_report_free(report: *mut GwReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
