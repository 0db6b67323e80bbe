//! C ABI for the hyperpend library.
//!
//! Conventions: every function returns a `HypStatus` code (0 success);
//! results come back through out-pointers. Trajectories are opaque handles
//! freed with their `_free` function; strings returned by the library are
//! freed with `hyp_string_free`. All functions catch panics at the boundary
//! and report them as `HYP_STATUS_INTERNAL`.
//!
//! The matching header lives in `include/hyperpend.h` (also reproducible
//! with cbindgen via the bundled `cbindgen.toml`).

use hyperpend::cli::verify::{run_verify, VerifyOptions};
use hyperpend::dynamics::{integrate, Potential, Trajectory};
use hyperpend::phase::PhasePoint;
use hyperpend::reduction::{
    hilbert_map, image_membership, integrate_reduced, lift, ImageStratum, Membership, ReducedPoint,
    ReducedTrajectory,
};
use hyperpend::symmetry::RotationClass;
use hyperpend::tol::Tolerances;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every entry point.
pub const HYP_STATUS_OK: c_int = 0;
pub const HYP_STATUS_NULL_POINTER: c_int = 1;
pub const HYP_STATUS_INVALID_ARGUMENT: c_int = 2;
pub const HYP_STATUS_INTEGRATION_FAILED: c_int = 3;
pub const HYP_STATUS_NOT_IN_IMAGE: c_int = 4;
pub const HYP_STATUS_INTERNAL: c_int = 5;

/// Rotation class encoding for the C surface.
pub const HYP_CLASS_ELLIPTIC: c_int = 0;
pub const HYP_CLASS_HYPERBOLIC: c_int = 1;
pub const HYP_CLASS_PARABOLIC: c_int = 2;

/// Image stratum encoding reported by `hyp_image_membership`.
pub const HYP_STRATUM_INTERIOR: c_int = 0;
pub const HYP_STRATUM_APEX_STATES: c_int = 1;
pub const HYP_STRATUM_REST_STATES: c_int = 2;

/// Opaque full-space trajectory handle.
pub struct HypTrajectory(Trajectory);

/// Opaque reduced-space trajectory handle.
pub struct HypReducedTrajectory(ReducedTrajectory);

fn class_from(code: c_int) -> Option<RotationClass> {
    match code {
        HYP_CLASS_ELLIPTIC => Some(RotationClass::Elliptic),
        HYP_CLASS_HYPERBOLIC => Some(RotationClass::Hyperbolic),
        HYP_CLASS_PARABOLIC => Some(RotationClass::Parabolic),
        _ => None,
    }
}

fn guarded(f: impl FnOnce() -> c_int) -> c_int {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(HYP_STATUS_INTERNAL)
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn hyp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn potential_from(coeffs: *const f64, len: usize) -> Option<Potential> {
    if len == 0 {
        return Some(Potential::zero());
    }
    if coeffs.is_null() {
        return None;
    }
    let slice = std::slice::from_raw_parts(coeffs, len);
    Some(Potential::polynomial(slice.to_vec()))
}

/// Integrate the constrained system.
///
/// `coeffs[0..len]` are ascending polynomial coefficients of the potential in
/// the class's invariant coordinate (`len = 0` for free motion), `z0` points
/// to six doubles `(x1, x2, x3, y1, y2, y3)`.
///
/// # Safety
/// `z0` must point to 6 readable doubles, `coeffs` to `len` readable doubles
/// (or be NULL with `len = 0`), and `out` to a writable pointer slot. On
/// success `*out` owns a trajectory that must be released with
/// `hyp_trajectory_free`.
#[no_mangle]
#[allow(clippy::neg_cmp_op_on_partial_ord)] // negated so NaN fails too
pub unsafe extern "C" fn hyp_simulate(
    class: c_int,
    coeffs: *const f64,
    len: usize,
    z0: *const f64,
    dt: f64,
    steps: usize,
    out: *mut *mut HypTrajectory,
) -> c_int {
    if z0.is_null() || out.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let Some(class) = class_from(class) else {
        return HYP_STATUS_INVALID_ARGUMENT;
    };
    let Some(potential) = potential_from(coeffs, len) else {
        return HYP_STATUS_NULL_POINTER;
    };
    if !(dt > 0.0) {
        return HYP_STATUS_INVALID_ARGUMENT;
    }
    let start = PhasePoint::from_array(std::slice::from_raw_parts(z0, 6).try_into().unwrap());
    guarded(|| {
        let tol = Tolerances::default();
        match integrate(class, &potential, start, dt, steps, tol.tol_degenerate) {
            Ok(traj) => {
                *out = Box::into_raw(Box::new(HypTrajectory(traj)));
                HYP_STATUS_OK
            }
            Err(_) => HYP_STATUS_INTEGRATION_FAILED,
        }
    })
}

/// Number of samples in a trajectory (steps + 1), or 0 for NULL.
///
/// # Safety
/// `traj` must be a live handle from `hyp_simulate` or NULL.
#[no_mangle]
pub unsafe extern "C" fn hyp_trajectory_len(traj: *const HypTrajectory) -> usize {
    if traj.is_null() {
        return 0;
    }
    (*traj).0.t.len()
}

/// Copy sample `index` into `row`: `t, x1, x2, x3, y1, y2, y3, H, J, c1res,
/// c2res` (11 doubles).
///
/// # Safety
/// `traj` must be a live handle, `row` writable for 11 doubles.
#[no_mangle]
pub unsafe extern "C" fn hyp_trajectory_row(
    traj: *const HypTrajectory,
    index: usize,
    row: *mut f64,
) -> c_int {
    if traj.is_null() || row.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let t = &(*traj).0;
    if index >= t.t.len() {
        return HYP_STATUS_INVALID_ARGUMENT;
    }
    let a = t.z[index].to_array();
    let values = [
        t.t[index],
        a[0],
        a[1],
        a[2],
        a[3],
        a[4],
        a[5],
        t.h[index],
        t.j[index],
        t.c1[index],
        t.c2[index],
    ];
    std::ptr::copy_nonoverlapping(values.as_ptr(), row, values.len());
    HYP_STATUS_OK
}

/// Copy the four drift diagnostics: max |dH|, max |dJ|, max |c1|, max |c2|.
///
/// # Safety
/// `traj` must be a live handle, `out` writable for 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn hyp_trajectory_drifts(traj: *const HypTrajectory, out: *mut f64) -> c_int {
    if traj.is_null() || out.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let t = &(*traj).0;
    let values = [
        t.max_h_drift(),
        t.max_j_drift(),
        t.max_c1_residual(),
        t.max_c2_residual(),
    ];
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    HYP_STATUS_OK
}

/// Release a trajectory handle. NULL is a no-op.
///
/// # Safety
/// `traj` must come from `hyp_simulate` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hyp_trajectory_free(traj: *mut HypTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// Integrate the reduced system from `w0` (four doubles `w1..w4`).
///
/// # Safety
/// `w0` must point to 4 readable doubles, `coeffs` as in `hyp_simulate`,
/// `out` to a writable pointer slot; release the result with
/// `hyp_reduced_trajectory_free`.
#[no_mangle]
#[allow(clippy::neg_cmp_op_on_partial_ord)] // negated so NaN fails too
pub unsafe extern "C" fn hyp_simulate_reduced(
    class: c_int,
    coeffs: *const f64,
    len: usize,
    w0: *const f64,
    dt: f64,
    steps: usize,
    out: *mut *mut HypReducedTrajectory,
) -> c_int {
    if w0.is_null() || out.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let Some(class) = class_from(class) else {
        return HYP_STATUS_INVALID_ARGUMENT;
    };
    let Some(potential) = potential_from(coeffs, len) else {
        return HYP_STATUS_NULL_POINTER;
    };
    if !(dt > 0.0) {
        return HYP_STATUS_INVALID_ARGUMENT;
    }
    let w: [f64; 4] = std::slice::from_raw_parts(w0, 4).try_into().unwrap();
    let point = ReducedPoint::from_array(w);
    guarded(|| {
        if let Membership::NotMember { .. } = image_membership(class, point, 1e-9) {
            return HYP_STATUS_NOT_IN_IMAGE;
        }
        let traj = integrate_reduced(class, &potential, w, dt, steps);
        *out = Box::into_raw(Box::new(HypReducedTrajectory(traj)));
        HYP_STATUS_OK
    })
}

/// Number of samples in a reduced trajectory, or 0 for NULL.
///
/// # Safety
/// `traj` must be a live handle from `hyp_simulate_reduced` or NULL.
#[no_mangle]
pub unsafe extern "C" fn hyp_reduced_trajectory_len(traj: *const HypReducedTrajectory) -> usize {
    if traj.is_null() {
        return 0;
    }
    (*traj).0.t.len()
}

/// Copy sample `index` into `row`: `t, w1, w2, w3, w4, jsq, h` (7 doubles).
///
/// # Safety
/// `traj` must be a live handle, `row` writable for 7 doubles.
#[no_mangle]
pub unsafe extern "C" fn hyp_reduced_trajectory_row(
    traj: *const HypReducedTrajectory,
    index: usize,
    row: *mut f64,
) -> c_int {
    if traj.is_null() || row.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let t = &(*traj).0;
    if index >= t.t.len() {
        return HYP_STATUS_INVALID_ARGUMENT;
    }
    let w = t.w[index];
    let values = [t.t[index], w[0], w[1], w[2], w[3], t.jsq[index], t.h[index]];
    std::ptr::copy_nonoverlapping(values.as_ptr(), row, values.len());
    HYP_STATUS_OK
}

/// Release a reduced trajectory handle. NULL is a no-op.
///
/// # Safety
/// `traj` must come from `hyp_simulate_reduced` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hyp_reduced_trajectory_free(traj: *mut HypReducedTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

/// Hilbert map: `z` (6 doubles) to `w` (4 doubles).
///
/// # Safety
/// `z` must point to 6 readable doubles and `w` to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hyp_hilbert_map(class: c_int, z: *const f64, w: *mut f64) -> c_int {
    if z.is_null() || w.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let Some(class) = class_from(class) else {
        return HYP_STATUS_INVALID_ARGUMENT;
    };
    let point = PhasePoint::from_array(std::slice::from_raw_parts(z, 6).try_into().unwrap());
    let image = hilbert_map(class, point).to_array();
    std::ptr::copy_nonoverlapping(image.as_ptr(), w, 4);
    HYP_STATUS_OK
}

/// Canonical lift: `w` (4 doubles) to `z` (6 doubles). Returns
/// `HYP_STATUS_NOT_IN_IMAGE` when `w` is not an image point.
///
/// # Safety
/// `w` must point to 4 readable doubles and `z` to 6 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hyp_lift(class: c_int, w: *const f64, z: *mut f64) -> c_int {
    if w.is_null() || z.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let Some(class) = class_from(class) else {
        return HYP_STATUS_INVALID_ARGUMENT;
    };
    let point = ReducedPoint::from_array(std::slice::from_raw_parts(w, 4).try_into().unwrap());
    guarded(|| match lift(class, point, 1e-9) {
        Ok(phase) => {
            let a = phase.to_array();
            std::ptr::copy_nonoverlapping(a.as_ptr(), z, 6);
            HYP_STATUS_OK
        }
        Err(_) => HYP_STATUS_NOT_IN_IMAGE,
    })
}

/// Membership of `w` (4 doubles) in the image of the tangent bundle. On
/// success writes the stratum code; returns `HYP_STATUS_NOT_IN_IMAGE` for
/// points off the image.
///
/// # Safety
/// `w` must point to 4 readable doubles; `stratum` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn hyp_image_membership(
    class: c_int,
    w: *const f64,
    stratum: *mut c_int,
) -> c_int {
    if w.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let Some(class) = class_from(class) else {
        return HYP_STATUS_INVALID_ARGUMENT;
    };
    let point = ReducedPoint::from_array(std::slice::from_raw_parts(w, 4).try_into().unwrap());
    match image_membership(class, point, 1e-9) {
        Membership::Member { stratum: s } => {
            if !stratum.is_null() {
                *stratum = match s {
                    ImageStratum::Interior => HYP_STRATUM_INTERIOR,
                    ImageStratum::ApexStates => HYP_STRATUM_APEX_STATES,
                    ImageStratum::RestStates => HYP_STRATUM_REST_STATES,
                };
            }
            HYP_STATUS_OK
        }
        Membership::NotMember { .. } => HYP_STATUS_NOT_IN_IMAGE,
    }
}

/// Classification of a linear-potential level set as a JSON string; release
/// with `hyp_string_free`.
///
/// # Safety
/// `out` must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn hyp_classify_linear_json(
    class: c_int,
    c: f64,
    jsq: f64,
    energy: f64,
    out: *mut *mut c_char,
) -> c_int {
    if out.is_null() {
        return HYP_STATUS_NULL_POINTER;
    }
    let Some(class) = class_from(class) else {
        return HYP_STATUS_INVALID_ARGUMENT;
    };
    guarded(
        || match hyperpend::cli::cmd_classify(class, c, jsq, energy) {
            Ok(json) => match CString::new(json) {
                Ok(cstr) => {
                    *out = cstr.into_raw();
                    HYP_STATUS_OK
                }
                Err(_) => HYP_STATUS_INTERNAL,
            },
            Err(_) => HYP_STATUS_INVALID_ARGUMENT,
        },
    )
}

/// Release a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must come from a hyperpend function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hyp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Run the deterministic verification harness; returns the number of failed
/// suites (0 means everything passed), or -1 on internal error.
#[no_mangle]
pub extern "C" fn hyp_verify(seed: u64, counts: usize) -> c_int {
    catch_unwind(|| {
        let outcome = run_verify(
            &VerifyOptions {
                seed,
                counts,
                self_test_corrupt: false,
            },
            &Tolerances::default(),
        );
        outcome.reports.iter().filter(|r| !r.pass).count() as c_int
    })
    .unwrap_or(-1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn version_is_a_nul_terminated_string() {
        let p = hyp_version();
        let s = unsafe { std::ffi::CStr::from_ptr(p) }.to_str().unwrap();
        assert_eq!(s, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn simulate_roundtrip_through_the_c_surface() {
        let z0 = [0.0, 0.0, 1.0, 1.0, 0.0, 0.0];
        let mut handle: *mut HypTrajectory = std::ptr::null_mut();
        let code = unsafe {
            hyp_simulate(
                HYP_CLASS_ELLIPTIC,
                std::ptr::null(),
                0,
                z0.as_ptr(),
                1e-3,
                100,
                &mut handle,
            )
        };
        assert_eq!(code, HYP_STATUS_OK);
        assert_eq!(unsafe { hyp_trajectory_len(handle) }, 101);
        let mut row = [0.0; 11];
        assert_eq!(
            unsafe { hyp_trajectory_row(handle, 100, row.as_mut_ptr()) },
            HYP_STATUS_OK
        );
        assert!((row[0] - 0.1).abs() < 1e-12);
        assert!((row[1] - 0.1f64.sinh()).abs() < 1e-9);
        let mut drifts = [0.0; 4];
        assert_eq!(
            unsafe { hyp_trajectory_drifts(handle, drifts.as_mut_ptr()) },
            HYP_STATUS_OK
        );
        assert!(drifts[0] < 1e-10);
        unsafe { hyp_trajectory_free(handle) };
    }

    #[test]
    fn null_pointers_are_rejected() {
        let code = unsafe {
            hyp_simulate(
                HYP_CLASS_ELLIPTIC,
                std::ptr::null(),
                0,
                std::ptr::null(),
                1e-3,
                1,
                std::ptr::null_mut(),
            )
        };
        assert_eq!(code, HYP_STATUS_NULL_POINTER);
        assert_eq!(unsafe { hyp_trajectory_len(std::ptr::null()) }, 0);
        unsafe { hyp_trajectory_free(std::ptr::null_mut()) };
    }

    #[test]
    fn invalid_class_is_rejected() {
        let z0 = [0.0; 6];
        let mut w = [0.0; 4];
        let code = unsafe { hyp_hilbert_map(9, z0.as_ptr(), w.as_mut_ptr()) };
        assert_eq!(code, HYP_STATUS_INVALID_ARGUMENT);
    }

    #[test]
    fn hilbert_and_lift_round_trip() {
        let z = [3.0f64.sqrt(), 0.0, 2.0, 0.0, 1.0, 0.0];
        let mut w = [0.0; 4];
        assert_eq!(
            unsafe { hyp_hilbert_map(HYP_CLASS_ELLIPTIC, z.as_ptr(), w.as_mut_ptr()) },
            HYP_STATUS_OK
        );
        assert!((w[0] - 2.0).abs() < 1e-12);
        let mut back = [0.0; 6];
        assert_eq!(
            unsafe { hyp_lift(HYP_CLASS_ELLIPTIC, w.as_ptr(), back.as_mut_ptr()) },
            HYP_STATUS_OK
        );
        for (a, b) in z.iter().zip(back) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn membership_reports_strata_and_rejections() {
        let apex_states = [1.0, 0.0, 5.0, 0.0];
        let mut stratum = -1;
        assert_eq!(
            unsafe { hyp_image_membership(HYP_CLASS_ELLIPTIC, apex_states.as_ptr(), &mut stratum) },
            HYP_STATUS_OK
        );
        assert_eq!(stratum, HYP_STRATUM_APEX_STATES);

        let outside = [0.5, 0.0, 1.0, 0.5];
        assert_eq!(
            unsafe {
                hyp_image_membership(HYP_CLASS_PARABOLIC, outside.as_ptr(), std::ptr::null_mut())
            },
            HYP_STATUS_NOT_IN_IMAGE
        );
    }

    #[test]
    fn reduced_simulation_conserves_first_integrals() {
        let coeffs = [0.0, 1.0];
        let j2 = (1.5f64 * 1.5 - 1.0) * 1.0 - 0.2 * 0.2;
        let w0 = [1.5, 0.2, 1.0, j2.sqrt()];
        let mut handle: *mut HypReducedTrajectory = std::ptr::null_mut();
        let code = unsafe {
            hyp_simulate_reduced(
                HYP_CLASS_ELLIPTIC,
                coeffs.as_ptr(),
                coeffs.len(),
                w0.as_ptr(),
                1e-3,
                1000,
                &mut handle,
            )
        };
        assert_eq!(code, HYP_STATUS_OK);
        let n = unsafe { hyp_reduced_trajectory_len(handle) };
        assert_eq!(n, 1001);
        let mut first = [0.0; 7];
        let mut last = [0.0; 7];
        unsafe {
            hyp_reduced_trajectory_row(handle, 0, first.as_mut_ptr());
            hyp_reduced_trajectory_row(handle, n - 1, last.as_mut_ptr());
            hyp_reduced_trajectory_free(handle);
        }
        assert!((first[5] - last[5]).abs() < 1e-9, "jsq drifted");
        assert!((first[6] - last[6]).abs() < 1e-9, "h drifted");
    }

    #[test]
    fn reduced_simulation_rejects_inadmissible_starts() {
        let w0 = [0.5, 0.0, 1.0, 0.5];
        let mut handle: *mut HypReducedTrajectory = std::ptr::null_mut();
        let code = unsafe {
            hyp_simulate_reduced(
                HYP_CLASS_PARABOLIC,
                std::ptr::null(),
                0,
                w0.as_ptr(),
                1e-3,
                10,
                &mut handle,
            )
        };
        assert_eq!(code, HYP_STATUS_NOT_IN_IMAGE);
        assert!(handle.is_null());
    }

    #[test]
    fn classification_json_comes_back_as_c_string() {
        let mut s: *mut c_char = std::ptr::null_mut();
        let code = unsafe { hyp_classify_linear_json(HYP_CLASS_HYPERBOLIC, 1.0, 3.8, 2.0, &mut s) };
        assert_eq!(code, HYP_STATUS_OK);
        let text = unsafe { std::ffi::CStr::from_ptr(s) }
            .to_str()
            .unwrap()
            .to_string();
        unsafe { hyp_string_free(s) };
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["case"], "3");

        let code = unsafe { hyp_classify_linear_json(HYP_CLASS_HYPERBOLIC, 0.0, 1.0, 2.0, &mut s) };
        assert_eq!(code, HYP_STATUS_INVALID_ARGUMENT);
    }

    #[test]
    fn verify_passes_through_the_c_surface() {
        assert_eq!(hyp_verify(42, 30), 0);
    }
}
