//! C ABI for the loop-lattice analysis: an opaque analysis handle, status
//! codes, count queries by type or orbit name, the verification suite, and
//! string exports (lattice JSON/DOT, relation-table CSV). Strings returned
//! by this library are owned by the caller and must be released with
//! `mlat_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use mlat::lattice::{export_dot, export_json, figure2};
use mlat::loopcore::IsoType;
use mlat::pipeline::Pipeline;
use mlat::verify::{run_verify, Section};

/// Opaque handle over the fully built analysis.
pub struct MlatAnalysis {
    pipeline: Pipeline,
}

/// Status codes returned by fallible entry points.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum MlatStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    UnknownName = 3,
    VerifyFailed = 4,
}

/// Builds the loop, enumerates the subloop lattice and the automorphism
/// orbits, and returns an owned handle. Never returns null; release with
/// `mlat_analysis_free`.
#[no_mangle]
pub extern "C" fn mlat_analysis_new() -> *mut MlatAnalysis {
    let analysis = MlatAnalysis {
        pipeline: Pipeline::build(),
    };
    Box::into_raw(Box::new(analysis))
}

/// Releases a handle returned by `mlat_analysis_new`. Null is a no-op.
///
/// # Safety
/// `analysis` must be null or a pointer previously returned by
/// `mlat_analysis_new` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mlat_analysis_free(analysis: *mut MlatAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

/// Number of elements of the ambient loop (120), or -1 on null input.
///
/// # Safety
/// `analysis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlat_loop_order(analysis: *const MlatAnalysis) -> i32 {
    match analysis.as_ref() {
        Some(a) => a.pipeline.paige.n() as i32,
        None => -1,
    }
}

/// Total number of enumerated subloops (1045), or -1 on null input.
///
/// # Safety
/// `analysis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlat_subloop_count(analysis: *const MlatAnalysis) -> i64 {
    match analysis.as_ref() {
        Some(a) => a.pipeline.subloops.len() as i64,
        None => -1,
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MlatStatus> {
    if s.is_null() {
        return Err(MlatStatus::NullArgument);
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| MlatStatus::InvalidUtf8)
}

/// Census count: copies of the named type in the ambient loop. Type names
/// are `1`, `C2`, `C3`, `E4`, `S3`, `E8`, `A4`, `M(S3)`/`MS3`,
/// `M(A4)`/`MA4`, `C`.
///
/// # Safety
/// `analysis` must be a live handle; `sup` a NUL-terminated string; `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mlat_copies(
    analysis: *const MlatAnalysis,
    sup: *const c_char,
    out: *mut i64,
) -> MlatStatus {
    let Some(a) = analysis.as_ref() else {
        return MlatStatus::NullArgument;
    };
    if out.is_null() {
        return MlatStatus::NullArgument;
    }
    let name = match read_str(sup) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let Some(ty) = IsoType::parse_name(name) else {
        return MlatStatus::UnknownName;
    };
    *out = a.pipeline.census(&ty) as i64;
    MlatStatus::Ok
}

/// Copies of the `sup` type containing the representative of the `sub`
/// orbit (orbit labels as printed by the CLI, e.g. `C2`, `E4+`, `E4-`).
///
/// # Safety
/// `analysis` must be a live handle; both names NUL-terminated strings;
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mlat_copies_above(
    analysis: *const MlatAnalysis,
    sub_orbit: *const c_char,
    sup: *const c_char,
    out: *mut i64,
) -> MlatStatus {
    let Some(a) = analysis.as_ref() else {
        return MlatStatus::NullArgument;
    };
    if out.is_null() {
        return MlatStatus::NullArgument;
    }
    let (sub_name, sup_name) = match (read_str(sub_orbit), read_str(sup)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    let Some(orbit) = a.pipeline.orbit_by_label(sub_name) else {
        return MlatStatus::UnknownName;
    };
    let Some(ty) = IsoType::parse_name(sup_name) else {
        return MlatStatus::UnknownName;
    };
    *out = a.pipeline.hasse().l_iso(orbit, &ty) as i64;
    MlatStatus::Ok
}

/// Runs the verification suite (`section` may be null for all sections);
/// writes the number of failing checks to `failures` when non-null.
/// Returns `VerifyFailed` when any check fails.
///
/// # Safety
/// `analysis` must be a live handle; `section` null or a NUL-terminated
/// string; `failures` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mlat_verify(
    analysis: *const MlatAnalysis,
    section: *const c_char,
    failures: *mut i32,
) -> MlatStatus {
    let Some(a) = analysis.as_ref() else {
        return MlatStatus::NullArgument;
    };
    let parsed = if section.is_null() {
        None
    } else {
        let name = match read_str(section) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match name.parse::<Section>() {
            Ok(s) => Some(s),
            Err(_) => return MlatStatus::UnknownName,
        }
    };
    let report = run_verify(&a.pipeline, parsed);
    if !failures.is_null() {
        *failures = report.failures() as i32;
    }
    if report.passed() {
        MlatStatus::Ok
    } else {
        MlatStatus::VerifyFailed
    }
}

fn export_string(text: String) -> *mut c_char {
    match CString::new(text) {
        Ok(s) => s.into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

/// The orbit-level lattice graph as a JSON document.
///
/// # Safety
/// `analysis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlat_lattice_json(analysis: *const MlatAnalysis) -> *mut c_char {
    match analysis.as_ref() {
        Some(a) => export_string(export_json(&figure2(&a.pipeline))),
        None => ptr::null_mut(),
    }
}

/// The orbit-level lattice graph in DOT format.
///
/// # Safety
/// `analysis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlat_lattice_dot(analysis: *const MlatAnalysis) -> *mut c_char {
    match analysis.as_ref() {
        Some(a) => export_string(export_dot(&figure2(&a.pipeline))),
        None => ptr::null_mut(),
    }
}

/// The involution relation table as CSV.
///
/// # Safety
/// `analysis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mlat_table1_csv(analysis: *const MlatAnalysis) -> *mut c_char {
    match analysis.as_ref() {
        Some(a) => export_string(a.pipeline.paige.table1().to_csv()),
        None => ptr::null_mut(),
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer returned by one of the export functions
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn mlat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
