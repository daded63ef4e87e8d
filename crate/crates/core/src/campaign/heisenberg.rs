//! Matrix elements in a representation with a pure-gauge connection agree
//! with the ones in the standard representation once states are rephased.

use super::CampaignConfig;
use crate::observable::Observable;
use crate::poly::Poly2;
use crate::quadrature::{matrix_element, Grid2};
use crate::report::{Check, VerificationReport};
use crate::waves::{position_op, psi_fock_form};
use crate::Result;

/// Tolerance of the representation comparison.
pub const TOL_REPRESENTATION: f64 = 1e-10;

/// Connection potentials `lambda` used by the demonstration.
pub fn demo_potentials() -> Vec<(&'static str, Poly2)> {
    ["0.4*u1 - 0.25*u2", "0.3*u1*u2 + 0.1*u2^2", "0.05*u1^3 - 0.2*u1*u2^2 + 0.1*u2"]
        .into_iter()
        .map(|s| (s, Poly2::parse(s).expect("valid literal")))
        .collect()
}

/// Helicity labels `(n+, n-)`.
type Labels = (u32, u32);

/// `(operator, bra, ket)`.
const PAIRS: [(Observable, Labels, Labels); 5] = [
    (Observable::P1, (0, 1), (0, 0)),
    (Observable::P2, (1, 2), (1, 1)),
    (Observable::T1, (2, 0), (1, 0)),
    (Observable::H, (1, 1), (1, 1)),
    (Observable::L3, (1, 0), (0, 1)),
];

pub fn run_heisenberg_demo(cfg: &CampaignConfig) -> Result<VerificationReport> {
    let p = &cfg.params;
    let g = &cfg.gauge;
    let tol = cfg.tol_or(TOL_REPRESENTATION);
    let mut report = VerificationReport::new("heisenberg-demo", p, std::slice::from_ref(g), cfg.settings());
    let grid = Grid2::new(cfg.grid_spec(1.0))?;
    for (k, (label, lambda)) in demo_potentials().into_iter().enumerate() {
        let shift = lambda.scale(-1.0);
        for (o, (ap, am), (bp, bm)) in PAIRS {
            let id = format!("flat-connection/L{k}/{o}/<{ap},{am}|{bp},{bm}>");
            let bra = psi_fock_form(g, p, ap, am);
            let ket = psi_fock_form(g, p, bp, bm);
            let op = position_op(o, g, p);
            let lifted = op.flat_connection(&lambda, p.hbar());
            let r = matrix_element(&bra, &op, &ket, &grid).and_then(|plain| {
                let moved = matrix_element(
                    &bra.with_phase_shift(&shift),
                    &lifted,
                    &ket.with_phase_shift(&shift),
                    &grid,
                )?;
                Ok((plain.value - moved.value).norm() / plain.value.norm().max(1.0))
            });
            report.push(match r {
                Ok(d) => Check::new(id, d, tol).with_note(format!("lambda = {label}")),
                Err(e) => Check::failed(id, tol, e.to_string()),
            });
        }
    }
    Ok(report)
}
