//! Overlaps between the `T1` and helicity bases: closed form, orthonormality
//! and reconstruction of the Fock wave functions from `T1` states.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CampaignConfig, TOL_QUADRATURE};
use crate::fockspace::{change_of_basis, change_of_basis_full};
use crate::quadrature::{inner_product, line_integral, Grid2};
use crate::report::{Check, VerificationReport};
use crate::waves::{psi_fock, psi_t1, psi_t1_form, psi_fock_form};
use crate::Result;

/// Tolerance of orthonormality and reconstruction.
pub const TOL_RECONSTRUCTION: f64 = 1e-7;
/// Largest `n+` compared against the closed-form overlap.
pub const MAX_NPLUS: u32 = 8;
/// Largest `n-` compared against the closed-form overlap.
pub const MAX_NMINUS: u32 = 2;
/// Largest index of the orthonormality check.
pub const MAX_ORTHO: u32 = 10;

fn to_check(id: &str, r: Result<f64>, tol: f64) -> Check {
    match r {
        Ok(d) => Check::new(id, d, tol),
        Err(e) => Check::failed(id, tol, e.to_string()),
    }
}

pub fn run_basis_change(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let p = &cfg.params;
    let g = &cfg.gauge;
    let x0 = g.x0();
    let tol = cfg.tol_or(TOL_QUADRATURE);
    let tol_rec = cfg.tol_or(TOL_RECONSTRUCTION);
    let mut report = VerificationReport::new("basis-change", p, std::slice::from_ref(g), cfg.settings());
    let k = p.momentum_scale_sq().sqrt();
    let nodes = cfg.grid;

    // Overlaps <n+, n-|T1, E_n-> by 2-D quadrature. The product decays only as
    // exp(-u^2 / 4 lambda^2) along x1, hence the wider grid.
    let grid = Grid2::new(cfg.grid_spec(std::f64::consts::SQRT_2))?;
    let overlaps = (|| -> Result<(f64, f64)> {
        let mut dev = 0.0f64;
        let mut cross = 0.0f64;
        for ts in [-1.5, -0.3, 0.0, 0.8] {
            let t = ts * k;
            for nm in 0..=MAX_NMINUS {
                let ket = psi_t1_form(g, p, t, nm);
                for np in 0..=MAX_NPLUS {
                    let q = inner_product(&psi_fock_form(g, p, np, nm), &ket, &grid)?.value;
                    dev = dev.max((q - change_of_basis_full(np, nm, t, p)).norm());
                    let other = inner_product(&psi_fock_form(g, p, np, (nm + 1) % (MAX_NMINUS + 1)), &ket, &grid)?;
                    cross = cross.max(other.value.norm());
                }
            }
        }
        Ok((dev, cross))
    })();
    match overlaps {
        Ok((dev, cross)) => {
            report.push(Check::new("change-of-basis/closed-vs-quadrature", dev, tol));
            report.push(Check::new("change-of-basis/other-levels-orthogonal", cross, tol));
        }
        Err(e) => {
            report.push(Check::failed("change-of-basis/closed-vs-quadrature", tol, e.to_string()));
            report.push(Check::failed("change-of-basis/other-levels-orthogonal", tol, e.to_string()));
        }
    }

    // int dT1 <n+|T1><T1|m+>* = delta.
    let ortho = (|| -> Result<f64> {
        let mut dev = 0.0f64;
        for a in 0..=MAX_ORTHO {
            for b in 0..=MAX_ORTHO {
                let r = line_integral(
                    |t| change_of_basis(a, t, p) * change_of_basis(b, t, p).conj(),
                    cfg.scheme,
                    nodes,
                    0.0,
                    k,
                )?;
                let expect = if a == b { 1.0 } else { 0.0 };
                dev = dev.max((r.value - expect).norm());
            }
        }
        Ok(dev)
    })();
    report.push(to_check("change-of-basis/orthonormality", ortho, tol_rec));

    // <x|n+, n-> = int dT1 <x|T1, E_n-> <T1, E_n-|n+, n->.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let lambda = p.magnetic_length();
    let points: Vec<[f64; 2]> = (0..20)
        .map(|_| {
            [
                x0[0] + rng.random_range(-2.5..2.5) * lambda,
                x0[1] + rng.random_range(-2.5..2.5) * lambda,
            ]
        })
        .collect();
    let recon = (|| -> Result<f64> {
        let mut dev = 0.0f64;
        for &x in &points {
            let u2 = x[1] - x0[1];
            for nm in 0..=MAX_NMINUS {
                for np in 0..=6u32 {
                    let r = line_integral(
                        |t| psi_t1(g, p, t, nm, x) * change_of_basis_full(np, nm, t, p).conj(),
                        cfg.scheme,
                        nodes,
                        -0.5 * p.qb() * u2,
                        k,
                    )?;
                    dev = dev.max((r.value - psi_fock(g, p, np, nm, x)).norm());
                }
            }
        }
        Ok(dev)
    })();
    report.push(to_check("change-of-basis/laguerre-reconstruction", recon, tol_rec));

    // int |<x|T1, E_n>|^2 dx2 = 1 / (2 pi hbar) at fixed x1.
    let norm = (|| -> Result<f64> {
        let mut dev = 0.0f64;
        let target = 1.0 / (2.0 * std::f64::consts::PI * p.hbar());
        for ts in [-1.0, 0.0, 0.7] {
            let t = ts * k;
            for n in 0..4 {
                let centre = x0[1] - t / p.qb();
                let r = line_integral(
                    |y| {
                        let v = psi_t1(g, p, t, n, [x0[0] + 0.3, y]);
                        Complex64::new(v.norm_sqr(), 0.0)
                    },
                    cfg.scheme,
                    nodes,
                    centre,
                    lambda,
                )?;
                dev = dev.max((r.value.re - target).abs() / target);
            }
        }
        Ok(dev)
    })();
    report.push(to_check("t1-states/transverse-normalisation", norm, tol));
    Ok(report)
}
