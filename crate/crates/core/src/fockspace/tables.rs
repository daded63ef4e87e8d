//! Closed-form matrix elements in the angular basis `|s hbar l, E_n>` and the
//! `T1` basis, and the overlaps between the two.

use num_complex::Complex64;

use crate::observable::Observable;
use crate::params::PhysicalParams;
use crate::waves::special::hermite_function_jet;
use crate::{Error, Result};

/// A tabulated value; `beyond_table` marks entries derived from the ladder
/// expansion that the closed-form listing does not cover.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TableValue {
    pub value: Complex64,
    pub beyond_table: bool,
}

fn kd(a: i64, b: i64) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn sqrt_i(k: i64) -> f64 {
    (k.max(0) as f64).sqrt()
}

/// `<s hbar l1, E_n1| O |s hbar l2, E_n2>` for the six tabulated operators.
pub fn table2_element(
    name: Observable,
    l1: i64,
    n1: i64,
    l2: i64,
    n2: i64,
    p: &PhysicalParams,
) -> Result<TableValue> {
    if n1 < 0 || n2 < 0 || l1 < -n1 || l2 < -n2 {
        return Err(Error::InvalidArgument(format!(
            "angular labels need n >= 0 and l >= -n, got (l1={l1}, n1={n1}), (l2={l2}, n2={n2})"
        )));
    }
    let s = p.sign();
    let hbar = p.hbar();
    let c = (0.5 * p.momentum_scale_sq()).sqrt();
    let same_n = kd(n1, n2);
    let plain = |v: Complex64| TableValue {
        value: v,
        beyond_table: false,
    };
    let up = sqrt_i(n1 + l1) * kd(l1, l2 + 1);
    let down = sqrt_i(n1 + l2) * kd(l2, l1 + 1);
    let vel_up = sqrt_i(n1) * kd(l2, l1 + 1) * kd(n1, n2 + 1);
    let vel_down = sqrt_i(n2) * kd(l1, l2 + 1) * kd(n2, n1 + 1);
    Ok(match name {
        Observable::T1 => plain(Complex64::new(0.0, c * (up - down) * same_n)),
        Observable::T2 => plain(Complex64::new(s * c * (up + down) * same_n, 0.0)),
        Observable::M3 => plain(Complex64::new(s * hbar * l1 as f64 * kd(l1, l2) * same_n, 0.0)),
        Observable::P1 => plain(Complex64::new(0.0, c * (vel_up - vel_down))),
        Observable::P2 => plain(Complex64::new(-s * c * (vel_up + vel_down), 0.0)),
        Observable::L3 if n1 == n2 => plain(Complex64::new(
            -s * hbar * (2 * n1 + 1) as f64 * kd(l1, l2),
            0.0,
        )),
        Observable::L3 => {
            // Off-diagonal levels come from the a+^dag a-^dag and a+ a- terms.
            let amp = if l1 == l2 && n1 == n2 + 1 {
                sqrt_i((n1 + l1) * n1)
            } else if l1 == l2 && n2 == n1 + 1 {
                sqrt_i((n2 + l2) * n2)
            } else {
                0.0
            };
            TableValue {
                value: Complex64::new(-s * hbar * amp, 0.0),
                beyond_table: true,
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "`{other}` has no angular-basis table entry"
            )))
        }
    })
}

/// Coefficients of `delta`, `delta'` and `delta''` in a `T1`-basis kernel
/// `<T1, E_n1| O |T1', E_n2>`, evaluated at `T1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct T1Kernel {
    pub delta: Complex64,
    pub delta1: Complex64,
    pub delta2: Complex64,
}

impl T1Kernel {
    fn only(delta: Complex64) -> Self {
        Self {
            delta,
            delta1: Complex64::new(0.0, 0.0),
            delta2: Complex64::new(0.0, 0.0),
        }
    }
}

pub fn t1_kernel(name: Observable, n1: i64, n2: i64, t1: f64, p: &PhysicalParams) -> Result<T1Kernel> {
    if n1 < 0 || n2 < 0 {
        return Err(Error::InvalidArgument(format!("levels must be >= 0, got {n1}, {n2}")));
    }
    let s = p.sign();
    let hbar = p.hbar();
    let k2 = p.momentum_scale_sq();
    let c = (0.5 * k2).sqrt();
    let same = kd(n1, n2);
    let zero = Complex64::new(0.0, 0.0);
    let up = sqrt_i(n1) * kd(n1, n2 + 1);
    let down = sqrt_i(n2) * kd(n2, n1 + 1);
    Ok(match name {
        Observable::T1 => T1Kernel::only(Complex64::new(t1 * same, 0.0)),
        Observable::T2 => T1Kernel {
            delta: zero,
            delta1: Complex64::new(0.0, s * k2 * same),
            delta2: zero,
        },
        Observable::M3 => T1Kernel {
            delta: Complex64::new(
                s * hbar * (t1 * t1 / (2.0 * k2) - (n1 as f64 + 0.5)) * same,
                0.0,
            ),
            delta1: zero,
            delta2: Complex64::new(-0.5 * s * hbar * k2 * same, 0.0),
        },
        Observable::P1 => T1Kernel::only(Complex64::new(s * c * (up + down), 0.0)),
        Observable::P2 => T1Kernel::only(Complex64::new(0.0, c * (up - down))),
        Observable::L3 if n1 == n2 => {
            T1Kernel::only(Complex64::new(-s * hbar * (2 * n1 + 1) as f64, 0.0))
        }
        Observable::L3 => {
            return Err(Error::InvalidArgument(
                "the T1-basis kernel of L3 is tabulated only for n1 = n2".into(),
            ))
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "`{other}` has no T1-basis table entry"
            )))
        }
    })
}

/// `i^k` for integer `k >= 0`.
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `<n+| T1>` as printed for the change of basis:
/// `i^n+ / sqrt(2^n+ n+!) (pi hbar m omega)^(-1/4) exp(-T1^2 / (2 hbar m omega)) H_n+(T1 / sqrt(hbar m omega))`.
pub fn change_of_basis(n_plus: u32, t1: f64, p: &PhysicalParams) -> Complex64 {
    change_of_basis_jet(n_plus, t1, p)[0]
}

/// `<n+, n-| T1, E_n->` including the level phase `(i s)^n-` that the
/// wave-function conventions produce for `n- > 0`.
pub fn change_of_basis_full(n_plus: u32, n_minus: u32, t1: f64, p: &PhysicalParams) -> Complex64 {
    level_phase(n_minus, p) * change_of_basis(n_plus, t1, p)
}

/// `(i s)^n`.
pub fn level_phase(n: u32, p: &PhysicalParams) -> Complex64 {
    let s = if p.sign() > 0.0 { 1 } else { 3 };
    i_pow(n * s)
}

/// Value and first two `T1` derivatives of [`change_of_basis`].
pub fn change_of_basis_jet(n_plus: u32, t1: f64, p: &PhysicalParams) -> [Complex64; 3] {
    let k = p.momentum_scale_sq().sqrt();
    let [f, d1, d2] = hermite_function_jet(n_plus, t1 / k);
    // <n+|T1> = i^n+ k^(-1/2) psi_n+(T1 / k).
    let pre = i_pow(n_plus) / k.sqrt();
    [pre * f, pre * (d1 / k), pre * (d2 / (k * k))]
}
