//! Operators acting on functions of `T1` within one Landau level.

use num_complex::Complex64;

use crate::fockspace::tables::{change_of_basis_jet, level_phase, t1_kernel, T1Kernel};
use crate::observable::Observable;
use crate::params::PhysicalParams;
use crate::{Error, Result};

/// `(O f)(T1)` for `f` given by its value and first two derivatives at `T1`:
/// `T1 -> T1 f`, `T2 -> i s hbar m w f'`,
/// `M3 -> -s hbar^2 m w f'' / 2 + s hbar (T1^2 / (2 hbar m w) - (n + 1/2)) f`.
pub fn t1rep_apply(name: Observable, f: [Complex64; 3], n: u32, t1: f64, p: &PhysicalParams) -> Result<Complex64> {
    match name {
        Observable::T1 | Observable::T2 | Observable::M3 => {
            let k = t1_kernel(name, n as i64, n as i64, t1, p)?;
            Ok(k.delta * f[0] + k.delta1 * f[1] + k.delta2 * f[2])
        }
        other => Err(Error::UnknownObservable(format!("{other} (T1 representation covers T1, T2, M3)"))),
    }
}

/// `<T1, E_n | n+, n>` and its first two `T1` derivatives.
pub fn t1_overlap_jet(n_plus: u32, n: u32, t1: f64, p: &PhysicalParams) -> [Complex64; 3] {
    let ph = level_phase(n, p);
    change_of_basis_jet(n_plus, t1, p).map(|v| (ph * v).conj())
}

/// Least-squares fit of `(c0, c1, c2)` in `g = c0 f + c1 f' + c2 f''` over
/// samples `(f jet, g)`.
pub fn fit_kernel(samples: &[([Complex64; 3], Complex64)], order: usize) -> Result<T1Kernel> {
    use nalgebra::{DMatrix, DVector};
    let cols = order + 1;
    if samples.len() < cols {
        return Err(Error::InvalidArgument("not enough samples for kernel fit".into()));
    }
    let a = DMatrix::from_fn(samples.len(), cols, |r, c| samples[r].0[c]);
    let b = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));
    let sol = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::InvalidArgument(format!("kernel fit failed: {e}")))?;
    let get = |k: usize| if k < cols { sol[k] } else { Complex64::new(0.0, 0.0) };
    Ok(T1Kernel {
        delta: get(0),
        delta1: get(1),
        delta2: get(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_lowers_into_first_excited() {
        for p in [PhysicalParams::natural(), PhysicalParams::new(1.3, -0.7, 1.1, 0.6).unwrap()] {
            let c = (0.5 * p.momentum_scale_sq()).sqrt();
            for t in [-1.1, 0.0, 0.4, 2.0] {
                let f0 = t1_overlap_jet(0, 0, t, &p);
                let f1 = t1_overlap_jet(1, 0, t, &p);
                let got = t1rep_apply(Observable::T2, f0, 0, t, &p).unwrap();
                assert!((got - f1[0] * (p.sign() * c)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn m3_eigenvalues() {
        let p = PhysicalParams::new(0.9, 1.0, -1.6, 1.2).unwrap();
        for n in 0..4 {
            for np in 0..7 {
                for t in [-0.8, 0.3, 1.7] {
                    let f = t1_overlap_jet(np, n, t, &p);
                    let got = t1rep_apply(Observable::M3, f, n, t, &p).unwrap();
                    let expect = f[0] * (p.sign() * p.hbar() * (np as f64 - n as f64));
                    assert!((got - expect).norm() < 1e-12, "{np} {n} {t}");
                }
            }
        }
    }

    #[test]
    fn t1_at_origin_vanishes() {
        let p = PhysicalParams::natural();
        let f = [Complex64::new(0.3, 1.0), Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.5)];
        assert_eq!(t1rep_apply(Observable::T1, f, 2, 0.0, &p).unwrap(), Complex64::new(0.0, 0.0));
        assert!(t1rep_apply(Observable::H, f, 2, 0.0, &p).is_err());
    }
}
