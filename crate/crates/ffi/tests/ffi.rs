//! Exercises the C surface exactly as a foreign caller would: through raw
//! pointers, status codes, and decimal strings.

use angelesco_ffi::*;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned();
    unsafe { ang_string_free(ptr) };
    s
}

fn meixner2_handle(betas: &str, c: &str) -> *mut AngParams {
    let betas = CString::new(betas).unwrap();
    let c = CString::new(c).unwrap();
    let mut out: *mut AngParams = ptr::null_mut();
    let status =
        unsafe { ang_params_meixner_second(betas.as_ptr(), c.as_ptr(), 50, &mut out) };
    assert_eq!(status, AngStatus::Ok);
    assert!(!out.is_null());
    out
}

#[test]
fn compute_through_the_c_surface() {
    let params = meixner2_handle("1,2", "0.5");
    assert_eq!(unsafe { ang_params_rays(params) }, 2);

    let n = [1u32, 1u32];
    let method = CString::new("recurrence").unwrap();
    let mut poly: *mut AngPoly = ptr::null_mut();
    let status = unsafe { ang_compute(params, n.as_ptr(), 2, method.as_ptr(), &mut poly) };
    assert_eq!(status, AngStatus::Ok);
    assert_eq!(unsafe { ang_poly_degree(poly) }, 2);

    // w^2 - 5w + 2
    let expect = ["2.0000", "-5.0000", "1.0000"];
    for (m, prefix) in expect.iter().enumerate() {
        let mut re: *mut c_char = ptr::null_mut();
        let mut im: *mut c_char = ptr::null_mut();
        let status = unsafe { ang_poly_coeff(poly, m, &mut re, &mut im) };
        assert_eq!(status, AngStatus::Ok);
        assert!(take_string(re).starts_with(prefix), "m={m}");
        assert_eq!(take_string(im), "0");
    }

    // evaluation at w = 1: 1 - 5 + 2 = -2
    let w = CString::new("1").unwrap();
    let mut re: *mut c_char = ptr::null_mut();
    let mut im: *mut c_char = ptr::null_mut();
    let status = unsafe { ang_poly_eval(poly, w.as_ptr(), &mut re, &mut im) };
    assert_eq!(status, AngStatus::Ok);
    assert!(take_string(re).starts_with("-2.0000"));

    unsafe { ang_poly_free(poly) };
    unsafe { ang_params_free(params) };
}

#[test]
fn all_methods_agree_at_the_boundary() {
    let params = meixner2_handle("0.6+0.3i,1.4-0.2i", "0.3+0.2i");
    let n = [2u32, 1u32];
    let mut first: Option<Vec<(f64, f64)>> = None;
    for method in ["series", "cascade", "rodrigues", "recurrence", "oracle"] {
        let method_c = CString::new(method).unwrap();
        let mut poly: *mut AngPoly = ptr::null_mut();
        let status =
            unsafe { ang_compute(params, n.as_ptr(), 2, method_c.as_ptr(), &mut poly) };
        assert_eq!(status, AngStatus::Ok, "{method}");
        let mut coeffs = Vec::new();
        for m in 0..=3usize {
            let mut re: *mut c_char = ptr::null_mut();
            let mut im: *mut c_char = ptr::null_mut();
            assert_eq!(
                unsafe { ang_poly_coeff(poly, m, &mut re, &mut im) },
                AngStatus::Ok
            );
            let re: f64 = take_string(re).parse().unwrap();
            let im: f64 = take_string(im).parse().unwrap();
            coeffs.push((re, im));
        }
        unsafe { ang_poly_free(poly) };
        match &first {
            None => first = Some(coeffs),
            Some(reference) => {
                for (a, b) in reference.iter().zip(&coeffs) {
                    assert!(
                        (a.0 - b.0).abs() <= 1e-14 * (1.0 + a.0.abs())
                            && (a.1 - b.1).abs() <= 1e-14 * (1.0 + a.1.abs()),
                        "{method}: {a:?} vs {b:?}"
                    );
                }
            }
        }
    }
    unsafe { ang_params_free(params) };
}

#[test]
fn parameter_errors_surface_with_messages() {
    let betas = CString::new("1,2").unwrap();
    let c = CString::new("1.5").unwrap();
    let mut out: *mut AngParams = ptr::null_mut();
    let status = unsafe { ang_params_meixner_second(betas.as_ptr(), c.as_ptr(), 50, &mut out) };
    assert_eq!(status, AngStatus::ParamError);
    assert!(out.is_null());
    let msg = take_string(ang_last_error());
    assert!(msg.contains("|c| < 1"), "{msg}");

    // digits below the floor
    let c_ok = CString::new("0.5").unwrap();
    let status =
        unsafe { ang_params_meixner_second(betas.as_ptr(), c_ok.as_ptr(), 8, &mut out) };
    assert_eq!(status, AngStatus::ParamError);

    // null pointers are caught, not dereferenced
    let status = unsafe { ang_params_meixner_second(ptr::null(), c_ok.as_ptr(), 50, &mut out) };
    assert_eq!(status, AngStatus::NullPointer);

    // wrong multi-index length
    let params = meixner2_handle("1,2", "0.5");
    let n = [1u32];
    let method = CString::new("oracle").unwrap();
    let mut poly: *mut AngPoly = ptr::null_mut();
    let status = unsafe { ang_compute(params, n.as_ptr(), 1, method.as_ptr(), &mut poly) };
    assert_eq!(status, AngStatus::ParamError);
    let msg = take_string(ang_last_error());
    assert!(msg.contains("rays"), "{msg}");
    unsafe { ang_params_free(params) };
}

#[test]
fn verify_reports_json_and_status() {
    let params = meixner2_handle("1,2.5", "0.5");
    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { ang_verify(params, 2, 0, &mut json) };
    assert_eq!(status, AngStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(doc["all_passed"], serde_json::json!(true));
    assert!(doc["checks"].as_array().unwrap().len() > 8);
    unsafe { ang_params_free(params) };
}

#[test]
fn zeros_moments_and_table_exports() {
    let params = meixner2_handle("1,2.5", "0.5");

    let n = [2u32, 2u32];
    let mut csv: *mut c_char = ptr::null_mut();
    let status = unsafe { ang_zeros_csv(params, n.as_ptr(), 2, &mut csv) };
    assert_eq!(status, AngStatus::Ok);
    let text = take_string(csv);
    assert_eq!(text.lines().filter(|l| l.starts_with("w,")).count(), 4);
    assert_eq!(text.lines().filter(|l| l.starts_with("z,")).count(), 8);

    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { ang_moments_json(params, 2, 4, &mut json) };
    assert_eq!(status, AngStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(doc["entries"].as_array().unwrap().len(), 2 * 3 * 5);

    let mut csv: *mut c_char = ptr::null_mut();
    let status = unsafe { ang_recurrence_table_csv(params, 2, &mut csv) };
    assert_eq!(status, AngStatus::Ok);
    let text = take_string(csv);
    assert!(text.starts_with("n_0,n_1,ray,b_re,b_im"));

    unsafe { ang_params_free(params) };
}

#[test]
fn charlier_and_meixner_first_constructors() {
    let a = CString::new("1,2,3").unwrap();
    let mut out: *mut AngParams = ptr::null_mut();
    assert_eq!(
        unsafe { ang_params_charlier(a.as_ptr(), 50, &mut out) },
        AngStatus::Ok
    );
    assert_eq!(unsafe { ang_params_rays(out) }, 3);
    unsafe { ang_params_free(out) };

    let c = CString::new("0.3,0.5").unwrap();
    let beta = CString::new("1.5").unwrap();
    let mut out: *mut AngParams = ptr::null_mut();
    assert_eq!(
        unsafe { ang_params_meixner_first(c.as_ptr(), beta.as_ptr(), 50, &mut out) },
        AngStatus::Ok
    );
    assert_eq!(unsafe { ang_params_rays(out) }, 2);
    unsafe { ang_params_free(out) };
}

#[test]
fn generated_header_exists_with_opaque_handles() {
    let header = include_str!("../include/angelesco.h");
    assert!(header.contains("AngStatus"));
    assert!(header.contains("AngParams"));
    assert!(header.contains("ang_compute"));
    assert!(header.contains("ang_last_error"));
}
