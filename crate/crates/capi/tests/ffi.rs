//! Exercises the C ABI through the exported symbols, the way a foreign
//! binding would.

use std::ffi::{CStr, CString};
use std::sync::{LazyLock, Mutex, MutexGuard};

use mlat_capi::{
    mlat_analysis_free, mlat_analysis_new, mlat_copies, mlat_copies_above, mlat_lattice_dot,
    mlat_lattice_json, mlat_loop_order, mlat_string_free, mlat_subloop_count, mlat_table1_csv,
    mlat_verify, MlatAnalysis, MlatStatus,
};

/// The handle is expensive to build, so the tests share one.
struct Shared(*mut MlatAnalysis);
unsafe impl Send for Shared {}

static HANDLE: LazyLock<Mutex<Shared>> =
    LazyLock::new(|| Mutex::new(Shared(mlat_analysis_new())));

fn handle() -> MutexGuard<'static, Shared> {
    HANDLE.lock().unwrap()
}

#[test]
fn handle_reports_basic_sizes() {
    let h = handle();
    unsafe {
        assert_eq!(mlat_loop_order(h.0), 120);
        assert_eq!(mlat_subloop_count(h.0), 1045);
    }
}

#[test]
fn null_handles_are_rejected() {
    unsafe {
        assert_eq!(mlat_loop_order(std::ptr::null()), -1);
        assert_eq!(mlat_subloop_count(std::ptr::null()), -1);
        let mut out = 0i64;
        let sup = CString::new("S3").unwrap();
        assert_eq!(
            mlat_copies(std::ptr::null(), sup.as_ptr(), &mut out),
            MlatStatus::NullArgument
        );
        assert!(mlat_lattice_json(std::ptr::null()).is_null());
        // Freeing null is a no-op.
        mlat_analysis_free(std::ptr::null_mut());
        mlat_string_free(std::ptr::null_mut());
    }
}

#[test]
fn census_queries() {
    let h = handle();
    let mut out = 0i64;
    unsafe {
        let s3 = CString::new("S3").unwrap();
        assert_eq!(mlat_copies(h.0, s3.as_ptr(), &mut out), MlatStatus::Ok);
        assert_eq!(out, 336);
        let ma4 = CString::new("M(A4)").unwrap();
        assert_eq!(mlat_copies(h.0, ma4.as_ptr(), &mut out), MlatStatus::Ok);
        assert_eq!(out, 63);
        let bogus = CString::new("Q8").unwrap();
        assert_eq!(
            mlat_copies(h.0, bogus.as_ptr(), &mut out),
            MlatStatus::UnknownName
        );
    }
}

#[test]
fn containment_queries_by_orbit_label() {
    let h = handle();
    let mut out = 0i64;
    unsafe {
        let sub = CString::new("E4+").unwrap();
        let sup = CString::new("MA4").unwrap();
        assert_eq!(
            mlat_copies_above(h.0, sub.as_ptr(), sup.as_ptr(), &mut out),
            MlatStatus::Ok
        );
        assert_eq!(out, 7);
        let sub = CString::new("E4-").unwrap();
        assert_eq!(
            mlat_copies_above(h.0, sub.as_ptr(), sup.as_ptr(), &mut out),
            MlatStatus::Ok
        );
        assert_eq!(out, 3);
    }
}

#[test]
fn verify_section_through_ffi() {
    let h = handle();
    let mut failures = -1i32;
    unsafe {
        let section = CString::new("census").unwrap();
        assert_eq!(
            mlat_verify(h.0, section.as_ptr(), &mut failures),
            MlatStatus::Ok
        );
        assert_eq!(failures, 0);
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(
            mlat_verify(h.0, bogus.as_ptr(), &mut failures),
            MlatStatus::UnknownName
        );
    }
}

#[test]
fn string_exports_round_trip() {
    let h = handle();
    unsafe {
        let json = mlat_lattice_json(h.0);
        assert!(!json.is_null());
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(text.contains("\"elements\": 120"));
        mlat_string_free(json);

        let dot = mlat_lattice_dot(h.0);
        assert!(!dot.is_null());
        assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("digraph"));
        mlat_string_free(dot);

        let csv = mlat_table1_csv(h.0);
        assert!(!csv.is_null());
        let text = CStr::from_ptr(csv).to_str().unwrap();
        assert_eq!(text.lines().count(), 64, "header plus 63 rows");
        mlat_string_free(csv);
    }
}
