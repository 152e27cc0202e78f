use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use galois_width_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = gw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn json_of(report: *const GwReport) -> serde_json::Value {
    serde_json::from_str(CStr::from_ptr(gw_report_json(report)).to_str().unwrap()).unwrap()
}

#[test]
fn group_handle_lifecycle() {
    unsafe {
        let mut g: *mut GwGroup = ptr::null_mut();
        assert_eq!(gw_group_parse(c("wr(S(2),S(3))").as_ptr(), &mut g), GwStatus::Ok);
        assert!(gw_last_error_message().is_null());
        assert_eq!(gw_group_degree(g), 6);
        let order = gw_group_order(g);
        assert_eq!(CStr::from_ptr(order).to_str().unwrap(), "48");
        gw_string_free(order);

        let mut r: *mut GwReport = ptr::null_mut();
        assert_eq!(gw_width_group(g, ptr::null(), &mut r), GwStatus::Ok);
        assert_eq!(gw_report_width(r), 3);
        assert_eq!(gw_report_confidence(r), GwConfidence::Proved);
        assert_eq!(gw_report_factor_count(r), 5);
        let mut o: *mut GwReport = ptr::null_mut();
        assert_eq!(gw_width_oracle(g, ptr::null(), &mut o), GwStatus::Ok);
        assert_eq!(gw_report_width(o), 3);
        assert!(!json_of(o)["chain"].as_array().unwrap().is_empty());
        gw_report_free(o);
        gw_report_free(r);
        gw_group_free(g);
    }
}

#[test]
fn expression_polynomial_and_family() {
    unsafe {
        let mut r: *mut GwReport = ptr::null_mut();
        assert_eq!(gw_width_expr(c("wr(S(2),S(10)) & alt").as_ptr(), ptr::null(), &mut r), GwStatus::Ok);
        assert_eq!(gw_report_width(r), 10);
        assert_eq!(json_of(r)["order"], "1857945600");
        gw_report_free(r);

        assert_eq!(gw_width_polynomial(c("x^5 - x - 1").as_ptr(), ptr::null(), &mut r), GwStatus::Ok);
        assert_eq!(gw_report_width(r), 5);
        assert_eq!(json_of(r)["group_claim"], "S(5)");
        gw_report_free(r);

        assert_eq!(gw_width_family(c("y^3 - p").as_ptr(), ptr::null(), &mut r), GwStatus::Ok);
        assert_eq!(gw_report_width(r), 3);
        assert_eq!(gw_report_confidence(r), GwConfidence::HeuristicLowerBound);
        assert_eq!(json_of(r)["group_order"], "3");
        gw_report_free(r);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut g: *mut GwGroup = ptr::null_mut();
        assert_eq!(gw_group_parse(c("S(4").as_ptr(), &mut g), GwStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("byte"));

        assert_eq!(gw_group_parse(ptr::null(), &mut g), GwStatus::NullPointer);
        assert_eq!(gw_group_parse(c("S(3)").as_ptr(), ptr::null_mut()), GwStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(gw_group_parse(bad.as_ptr().cast(), &mut g), GwStatus::InvalidUtf8);

        let mut r: *mut GwReport = ptr::null_mut();
        assert_eq!(gw_width_polynomial(c("x^4-1").as_ptr(), ptr::null(), &mut r), GwStatus::Reducible);
        assert!(last_error().contains("x^2 + 1"));
        assert_eq!(gw_width_polynomial(c("x^2+2*x+1").as_ptr(), ptr::null(), &mut r), GwStatus::NotSquarefree);

        assert_eq!(gw_group_parse(c("S(5)").as_ptr(), &mut g), GwStatus::Ok);
        let mut opts = gw_options_default();
        opts.oracle_bound = 100;
        assert_eq!(gw_width_oracle(g, &opts, &mut r), GwStatus::BoundExceeded);
        opts.oracle_bound = 0;
        assert_eq!(gw_width_group(g, &opts, &mut r), GwStatus::InvalidInput);
        assert!(r.is_null());
        gw_group_free(g);

        gw_group_free(ptr::null_mut());
        gw_report_free(ptr::null_mut());
        gw_string_free(ptr::null_mut());
        assert_eq!(gw_report_width(ptr::null()), 0);
        assert!(gw_group_order(ptr::null()).is_null());
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut g: *mut GwGroup = ptr::null_mut();
        assert_eq!(gw_group_parse(c("Q(1)").as_ptr(), &mut g), GwStatus::Parse);
    }
    std::thread::spawn(|| assert!(gw_last_error_message().is_null())).join().unwrap();
    assert!(!gw_last_error_message().is_null());
}

#[test]
fn version_is_package_version() {
    let v = unsafe { CStr::from_ptr(gw_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/galois_width.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "gw_group_parse",
        "gw_width_group",
        "gw_width_oracle",
        "gw_width_expr",
        "gw_width_polynomial",
        "gw_width_family",
        "gw_report_json",
        "gw_report_free",
        "gw_last_error_message",
        "typedef struct GwGroup GwGroup",
        "GW_STATUS_BOUND_EXCEEDED = 5",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
    // syntax check only where a C compiler is installed
    if let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).status() {
        assert!(status.success());
    }
}
