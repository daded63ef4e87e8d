use std::ffi::{CStr, CString};
use std::ptr;

use landau_ffi::*;

fn params() -> *mut LandauParams {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { landau_params_new(1.0, 1.0, 1.0, 1.0, &mut p) }, LandauStatus::Ok);
    p
}

fn gauge(alpha: f64, phi: &str) -> *mut LandauGauge {
    let phi = CString::new(phi).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { landau_gauge_new(alpha, 0.0, 0.0, phi.as_ptr(), &mut g) }, LandauStatus::Ok);
    g
}

fn last_error() -> String {
    let s = landau_last_error();
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { landau_string_free(s) };
    out
}

#[test]
fn params_round_trip() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(landau_params_new(2.0, -0.5, 3.0, 1.0, &mut p), LandauStatus::Ok);
        assert!((landau_params_omega_c(p) - 0.75).abs() < 1e-15);
        assert!((landau_params_magnetic_length(p) - (1.0f64 / 1.5).sqrt()).abs() < 1e-15);
        landau_params_free(p);
        assert!(landau_params_omega_c(ptr::null()).is_nan());
    }
}

#[test]
fn invalid_inputs_report_status_and_message() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(landau_params_new(-1.0, 1.0, 1.0, 1.0, &mut p), LandauStatus::InvalidParams);
        assert!(p.is_null());
        assert!(last_error().contains("invalid physical parameters"));
        assert_eq!(landau_params_new(1.0, 1.0, 1.0, 1.0, ptr::null_mut()), LandauStatus::NullPointer);

        let bad = CString::new("u1 + (u2").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(landau_gauge_new(0.0, 0.0, 0.0, bad.as_ptr(), &mut g), LandauStatus::Parse);
        let deep = CString::new("u1^4*u2^3").unwrap();
        assert_eq!(landau_gauge_new(0.0, 0.0, 0.0, deep.as_ptr(), &mut g), LandauStatus::DegreeOverflow);
        assert!(g.is_null());
    }
}

#[test]
fn operator_elements() {
    let p = params();
    let g = gauge(0.0, "0");
    let name = CString::new("H").unwrap();
    let mut op = ptr::null_mut();
    unsafe {
        assert_eq!(landau_operator_new(p, g, name.as_ptr(), 4, &mut op), LandauStatus::Ok);
        assert_eq!(landau_operator_dim(op), 25);
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(landau_operator_element(op, 2, 3, 2, 3, &mut re, &mut im), LandauStatus::Ok);
        assert!((re - 3.5).abs() < 1e-14 && im.abs() < 1e-14);
        assert_eq!(landau_operator_element(op, 5, 0, 0, 0, &mut re, &mut im), LandauStatus::OutOfRange);
        landau_operator_free(op);

        let unknown = CString::new("Q7").unwrap();
        let mut op = ptr::null_mut();
        assert_eq!(landau_operator_new(p, g, unknown.as_ptr(), 4, &mut op), LandauStatus::UnknownObservable);
        landau_gauge_free(g);
        landau_params_free(p);
    }
}

#[test]
fn vacuum_density_at_origin() {
    let p = params();
    let g = gauge(0.0, "0");
    let (mut re, mut im) = (0.0, 0.0);
    unsafe {
        assert_eq!(landau_psi_fock(p, g, 0, 0, 0.0, 0.0, &mut re, &mut im), LandauStatus::Ok);
        landau_gauge_free(g);
        landau_params_free(p);
    }
    // |<0|0,0>|^2 = 1 / (2 pi lambda^2)
    let density = re * re + im * im;
    assert!((density - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-14);
}

#[test]
fn campaign_report() {
    let p = params();
    let g = gauge(1.0, "0.1*u1*u2");
    let s = landau_settings_default();
    assert_eq!(s.nmax, 16);
    assert!(s.tol.is_nan());
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(
            landau_run_campaign(LandauCampaign::VerifyAlgebra, p, g, &s, &mut r),
            LandauStatus::Ok
        );
        assert!(landau_report_pass(r));
        assert!(landau_report_check_count(r) > 20);
        assert!(landau_report_max_deviation(r) < 1e-12);
        let json = landau_report_json(r);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        landau_string_free(json);
        assert!(text.contains("\"campaign\": \"verify-algebra\""));
        landau_report_free(r);

        let mut r = ptr::null_mut();
        let tight = LandauSettings { tol: 0.0, ..s };
        assert_eq!(
            landau_run_campaign(LandauCampaign::HeisenbergDemo, p, g, &tight, &mut r),
            LandauStatus::Ok
        );
        assert!(!landau_report_pass(r));
        landau_report_free(r);
        assert!(!landau_report_pass(ptr::null()));
        landau_gauge_free(g);
        landau_params_free(p);
    }
}

#[test]
fn header_declares_exports_and_compiles() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/landau.h")).unwrap();
    for f in [
        "landau_last_error",
        "landau_string_free",
        "landau_params_new",
        "landau_gauge_new",
        "landau_operator_new",
        "landau_operator_element",
        "landau_psi_fock",
        "landau_run_campaign",
        "landau_report_json",
        "landau_report_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(format!("{dir}/include/landau.h"))
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
