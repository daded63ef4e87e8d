//! Commutator algebra, charge relation, spectrum and Hermiticity of the
//! truncated Fock matrices.

use super::{CampaignConfig, TOL_ALGEBRA};
use crate::fockspace::{build_observable, run_identity_suite, FockBasis};
use crate::observable::Observable;
use crate::report::{Check, VerificationReport};

pub fn run_verify_algebra(cfg: &CampaignConfig) -> VerificationReport {
    let p = &cfg.params;
    let tol = cfg.tol_or(TOL_ALGEBRA);
    let mut report = VerificationReport::new("verify-algebra", p, std::slice::from_ref(&cfg.gauge), cfg.settings());
    if cfg.nmax < cfg.margin + 2 {
        report.push(Check::failed(
            "precondition/nmax>=margin+2",
            tol,
            format!("nmax {} is smaller than margin {} + 2", cfg.nmax, cfg.margin),
        ));
        return report;
    }
    let basis = match FockBasis::new(cfg.nmax) {
        Ok(b) => b,
        Err(e) => {
            report.push(Check::failed("precondition/basis", tol, e.to_string()));
            return report;
        }
    };
    let x0 = cfg.gauge.x0();
    for c in run_identity_suite(p, x0, basis, cfg.margin) {
        let check = Check::new(format!("algebra/{}", c.id), c.deviation, tol);
        report.push(if c.margin_too_small {
            let mut check = check.with_note("margin smaller than the operators' ladder excursion");
            check.pass = false;
            check
        } else {
            check
        });
    }

    let h = build_observable(Observable::H, p, x0, basis);
    let hw = p.hbar() * p.omega_c();
    let mut diag = 0.0f64;
    let mut off = 0.0f64;
    for i in 0..basis.dim() {
        for j in 0..basis.dim() {
            let e = h.matrix()[(i, j)];
            if i == j {
                let (_, nm) = basis.label(i);
                diag = diag.max((e - hw * (nm as f64 + 0.5)).norm());
            } else {
                off = off.max(e.norm());
            }
        }
    }
    report.push(Check::new("spectrum/diagonal=hbar*omega*(n-+1/2)", diag, tol));
    report.push(Check::new("spectrum/off-diagonal=0", off, tol));
    for o in Observable::ALL {
        let d = build_observable(o, p, x0, basis).hermiticity_defect();
        report.push(Check::new(format!("hermitian/{o}"), d, tol));
    }
    report
}
