//! C ABI over `landau-core`.
//!
//! Objects are handed out as opaque pointers and released with the matching
//! `*_free` function. Every fallible call returns a [`LandauStatus`]; the
//! message of the most recent failure on the calling thread is available from
//! [`landau_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use landau_core::campaign::gauge_scan::default_gauges;
use landau_core::campaign::{
    run_basis_change, run_classical_sim, run_gauge_scan, run_heisenberg_demo, run_reproduce_tables,
    run_verify_algebra, CampaignConfig, ClassicalOptions,
};
use landau_core::classical::TrajectoryParams;
use landau_core::fockspace::{build_observable, FockBasis, FockOperator};
use landau_core::observable::Observable;
use landau_core::quadrature::Scheme;
use landau_core::report::VerificationReport;
use landau_core::waves::psi_fock;
use landau_core::{Error, GaugeChoice, PhysicalParams, Poly2, PolyParseError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LandauStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParams = 3,
    InvalidArgument = 4,
    Parse = 5,
    DegreeOverflow = 6,
    OriginMismatch = 7,
    Truncation = 8,
    SupportOverflow = 9,
    UnknownObservable = 10,
    Io = 11,
    OutOfRange = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LandauCampaign {
    VerifyAlgebra = 0,
    GaugeScan = 1,
    ReproduceTables = 2,
    ClassicalSim = 3,
    BasisChange = 4,
    HeisenbergDemo = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LandauScheme {
    GaussHermite = 0,
    Simpson = 1,
}

/// Numerical settings of a campaign. `tol` replaces every tolerance when it
/// is finite; pass NaN to keep the defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct LandauSettings {
    pub nmax: usize,
    pub margin: usize,
    pub grid: usize,
    pub scheme: LandauScheme,
    pub tol: f64,
    pub seed: u64,
}

pub struct LandauParams(PhysicalParams);
pub struct LandauGauge(GaugeChoice);
pub struct LandauOperator(FockOperator);
pub struct LandauReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LandauStatus {
    match e {
        Error::Parse(PolyParseError::DegreeOverflow { .. }) | Error::DegreeOverflow { .. } => {
            LandauStatus::DegreeOverflow
        }
        Error::Parse(_) => LandauStatus::Parse,
        Error::OriginMismatch { .. } => LandauStatus::OriginMismatch,
        Error::InvalidParams(_) => LandauStatus::InvalidParams,
        Error::UnknownObservable(_) => LandauStatus::UnknownObservable,
        Error::Truncation { .. } => LandauStatus::Truncation,
        Error::SupportOverflow { .. } => LandauStatus::SupportOverflow,
        Error::InvalidArgument(_) => LandauStatus::InvalidArgument,
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => LandauStatus::Io,
    }
}

struct Fail(LandauStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records failures and panics, and maps them to a status.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> LandauStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LandauStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            LandauStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(LandauStatus::NullPointer, format!("null pointer: {what}"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(LandauStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread, or NULL. Free the result
/// with [`landau_string_free`].
#[no_mangle]
pub extern "C" fn landau_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn landau_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn landau_params_new(
    mass: f64,
    charge: f64,
    field: f64,
    hbar: f64,
    out: *mut *mut LandauParams,
) -> LandauStatus {
    guard(|| put(out, LandauParams(PhysicalParams::new(mass, charge, field, hbar)?)))
}

/// # Safety
/// `p` must be NULL or a handle from [`landau_params_new`].
#[no_mangle]
pub unsafe extern "C" fn landau_params_free(p: *mut LandauParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Cyclotron frequency `|q B| / m`, or NaN for a NULL handle.
///
/// # Safety
/// `p` must be NULL or a live params handle.
#[no_mangle]
pub unsafe extern "C" fn landau_params_omega_c(p: *const LandauParams) -> f64 {
    p.as_ref().map_or(f64::NAN, |p| p.0.omega_c())
}

/// Magnetic length `sqrt(hbar / (m omega_c))`, or NaN for a NULL handle.
///
/// # Safety
/// `p` must be NULL or a live params handle.
#[no_mangle]
pub unsafe extern "C" fn landau_params_magnetic_length(p: *const LandauParams) -> f64 {
    p.as_ref().map_or(f64::NAN, |p| p.0.magnetic_length())
}

/// A gauge with origin `(x01, x02)`; `phi` is a polynomial in `u1`, `u2`
/// such as `"0.2*u1^2 - u1*u2"`. NULL `phi` means zero.
///
/// # Safety
/// `phi` must be NULL or a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn landau_gauge_new(
    alpha: f64,
    x01: f64,
    x02: f64,
    phi: *const c_char,
    out: *mut *mut LandauGauge,
) -> LandauStatus {
    guard(|| {
        let phi = if phi.is_null() {
            Poly2::zero()
        } else {
            Poly2::parse(read_str(phi, "phi")?).map_err(Error::from)?
        };
        put(out, LandauGauge(GaugeChoice::new(alpha, [x01, x02], phi)?))
    })
}

/// # Safety
/// `g` must be NULL or a handle from [`landau_gauge_new`].
#[no_mangle]
pub unsafe extern "C" fn landau_gauge_free(g: *mut LandauGauge) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Truncated Fock matrix of the observable `name` (`H`, `T1`, `T2`, `M3`,
/// `p1`, `p2`, `L3`, `Xc1`, `Xc2`, `x1`, `x2`) with `n+-` up to `nmax`.
///
/// # Safety
/// `params` and `gauge` must be live handles, `name` a NUL-terminated string
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn landau_operator_new(
    params: *const LandauParams,
    gauge: *const LandauGauge,
    name: *const c_char,
    nmax: usize,
    out: *mut *mut LandauOperator,
) -> LandauStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let g = deref(gauge, "gauge")?;
        let o: Observable = read_str(name, "name")?.parse()?;
        let basis = FockBasis::new(nmax)?;
        put(out, LandauOperator(build_observable(o, &p.0, g.0.x0(), basis)))
    })
}

/// # Safety
/// `op` must be NULL or a handle from [`landau_operator_new`].
#[no_mangle]
pub unsafe extern "C" fn landau_operator_free(op: *mut LandauOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Dimension `(nmax + 1)^2`, or 0 for a NULL handle.
///
/// # Safety
/// `op` must be NULL or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn landau_operator_dim(op: *const LandauOperator) -> usize {
    op.as_ref().map_or(0, |o| o.0.basis().dim())
}

/// `<n+, n-| O |m+, m->`.
///
/// # Safety
/// `op` must be a live handle; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn landau_operator_element(
    op: *const LandauOperator,
    bra_plus: usize,
    bra_minus: usize,
    ket_plus: usize,
    ket_minus: usize,
    re: *mut f64,
    im: *mut f64,
) -> LandauStatus {
    guard(|| {
        let o = &deref(op, "op")?.0;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let n = o.basis().nmax();
        if [bra_plus, bra_minus, ket_plus, ket_minus].iter().any(|&k| k > n) {
            return Err(Fail(LandauStatus::OutOfRange, format!("label beyond nmax = {n}")));
        }
        let z = o.element((bra_plus, bra_minus), (ket_plus, ket_minus));
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// `<x| n+, n->` in the given gauge.
///
/// # Safety
/// Handles must be live; `re` and `im` writable.
#[no_mangle]
pub unsafe extern "C" fn landau_psi_fock(
    params: *const LandauParams,
    gauge: *const LandauGauge,
    n_plus: u32,
    n_minus: u32,
    x1: f64,
    x2: f64,
    re: *mut f64,
    im: *mut f64,
) -> LandauStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let g = deref(gauge, "gauge")?;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let z = psi_fock(&g.0, &p.0, n_plus, n_minus, [x1, x2]);
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// Defaults of the command-line tool.
#[no_mangle]
pub extern "C" fn landau_settings_default() -> LandauSettings {
    let c = CampaignConfig::default();
    LandauSettings {
        nmax: c.nmax,
        margin: c.margin,
        grid: c.grid,
        scheme: LandauScheme::GaussHermite,
        tol: f64::NAN,
        seed: c.seed,
    }
}

/// Runs a campaign. The gauge scan adds the seeded default gauges after
/// `gauge`; the classical run uses a unit-energy orbit centred on the origin.
///
/// # Safety
/// Handles must be live; `settings` readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn landau_run_campaign(
    campaign: LandauCampaign,
    params: *const LandauParams,
    gauge: *const LandauGauge,
    settings: *const LandauSettings,
    out: *mut *mut LandauReport,
) -> LandauStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let g = deref(gauge, "gauge")?;
        let s = deref(settings, "settings")?;
        let cfg = CampaignConfig {
            params: p.0,
            gauge: g.0.clone(),
            nmax: s.nmax,
            margin: s.margin,
            grid: s.grid,
            scheme: match s.scheme {
                LandauScheme::GaussHermite => Scheme::GaussHermite,
                LandauScheme::Simpson => Scheme::Simpson,
            },
            tol: s.tol.is_finite().then_some(s.tol),
            seed: s.seed,
        };
        let report = match campaign {
            LandauCampaign::VerifyAlgebra => run_verify_algebra(&cfg),
            LandauCampaign::GaugeScan => {
                let mut gauges = vec![cfg.gauge.clone()];
                gauges.extend(default_gauges(cfg.gauge.x0(), cfg.seed));
                run_gauge_scan(&cfg, &gauges)?
            }
            LandauCampaign::ReproduceTables => run_reproduce_tables(&cfg)?.0,
            LandauCampaign::ClassicalSim => {
                let opts = ClassicalOptions::new(TrajectoryParams::new(1.0, [0.0, 0.0], 0.0)?);
                run_classical_sim(&cfg, &opts)?.0
            }
            LandauCampaign::BasisChange => run_basis_change(&cfg)?,
            LandauCampaign::HeisenbergDemo => run_heisenberg_demo(&cfg)?,
        };
        put(out, LandauReport(report))
    })
}

/// # Safety
/// `r` must be NULL or a handle from [`landau_run_campaign`].
#[no_mangle]
pub unsafe extern "C" fn landau_report_free(r: *mut LandauReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Overall pass flag; false for a NULL handle.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn landau_report_pass(r: *const LandauReport) -> bool {
    r.as_ref().is_some_and(|r| r.0.pass)
}

/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn landau_report_check_count(r: *const LandauReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.checks.len())
}

/// Largest deviation over all checks, or NaN for a NULL handle.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn landau_report_max_deviation(r: *const LandauReport) -> f64 {
    r.as_ref().map_or(f64::NAN, |r| r.0.max_deviation())
}

/// The report as JSON; NULL on failure. Free with [`landau_string_free`].
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn landau_report_json(r: *const LandauReport) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        set_error("null pointer: report".into());
        return ptr::null_mut();
    };
    match r.0.to_json() {
        Ok(s) => to_c_string(s),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}
