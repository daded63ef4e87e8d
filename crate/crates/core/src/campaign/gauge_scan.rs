//! Matrix elements recomputed by quadrature across many gauges.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CampaignConfig, TOL_QUADRATURE};
use crate::fockspace::{build_observable, gauge_variant_matrix, FockBasis, FockOperator};
use crate::observable::{GaugeVariant, Observable};
use crate::params::{GaugeChoice, Point};
use crate::poly::Poly2;
use crate::quadrature::{Field, Grid2, JetField};
use crate::report::{Check, VerificationReport};
use crate::waves::{position_op, position_variant_op, psi_fock_form, DiffOpSpec};
use crate::{Error, PhysicalParams, Result};

/// Angular labels `(l, n)` with `n <= n_max`, `-n <= l <= l_max`.
pub fn angular_states(n_max: i64, l_max: i64) -> Vec<(i64, i64)> {
    (0..=n_max)
        .flat_map(|n| (-n.min(l_max)..=l_max).map(move |l| (l, n)))
        .collect()
}

/// Random polynomial with every monomial of total degree `1..=degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, degree: u32, amplitude: f64) -> Poly2 {
    let mut out = Poly2::zero();
    for d in 1..=degree {
        for i in 0..=d {
            let c: f64 = rng.random_range(-amplitude..amplitude);
            out.add_term(i, d - i, c);
        }
    }
    out
}

/// The standard scan: `alpha` in `{-1, 0, 0.37, 1, 2}` with `phi = 0`, then
/// a random quadratic and a random cubic `phi` with random `alpha`.
pub fn default_gauges(x0: Point, seed: u64) -> Vec<GaugeChoice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<GaugeChoice> = [-1.0, 0.0, 0.37, 1.0, 2.0]
        .into_iter()
        .map(|a| GaugeChoice::new(a, x0, Poly2::zero()).expect("zero phi"))
        .collect();
    for degree in [2, 3] {
        let alpha = rng.random_range(-2.0..2.0);
        let phi = random_poly(&mut rng, degree, 0.3);
        out.push(GaugeChoice::new(alpha, x0, phi).expect("degree within bound"));
    }
    out
}

/// Quadrature matrix of `op` between sampled states.
fn quad_matrix(grid: &Grid2, op: &DiffOpSpec, jets: &[JetField], bras: &[Field]) -> Result<Vec<Vec<Complex64>>> {
    let opf = grid.sample_op(op);
    let kets: Vec<Field> = jets.iter().map(|j| grid.apply(&opf, j)).collect();
    bras.iter()
        .map(|b| kets.iter().map(|k| Ok(grid.braket(b, k)?.value)).collect())
        .collect()
}

fn fock_matrix(m: &FockOperator, states: &[(i64, i64)]) -> Vec<Vec<Complex64>> {
    states
        .iter()
        .map(|&(l1, n1)| {
            states
                .iter()
                .map(|&(l2, n2)| m.angular_element(l1, n1, l2, n2).expect("state inside basis"))
                .collect()
        })
        .collect()
}

fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

fn sub(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn sample_states(grid: &Grid2, g: &GaugeChoice, p: &PhysicalParams, states: &[(i64, i64)]) -> Vec<JetField> {
    states
        .iter()
        .map(|&(l, n)| grid.sample_state(&psi_fock_form(g, p, (n + l) as u32, n as u32)))
        .collect()
}

/// Matrices per gauge of the seven invariant observables and the three
/// gauge-variant ones, by quadrature.
pub struct GaugeSample {
    pub invariant: Vec<Result<Vec<Vec<Complex64>>>>,
    pub variant: Vec<Result<Vec<Vec<Complex64>>>>,
    pub predicted: Vec<Result<Vec<Vec<Complex64>>>>,
}

pub fn sample_gauge(
    grid: &Grid2,
    g: &GaugeChoice,
    p: &PhysicalParams,
    states: &[(i64, i64)],
    basis: FockBasis,
) -> GaugeSample {
    let jets = sample_states(grid, g, p, states);
    let bras: Vec<Field> = jets.iter().map(JetField::values).collect();
    GaugeSample {
        invariant: Observable::TABULATED
            .iter()
            .map(|&o| quad_matrix(grid, &position_op(o, g, p), &jets, &bras))
            .collect(),
        variant: GaugeVariant::ALL
            .iter()
            .map(|&w| quad_matrix(grid, &position_variant_op(w, g.x0(), p), &jets, &bras))
            .collect(),
        predicted: GaugeVariant::ALL
            .iter()
            .map(|&w| gauge_variant_matrix(w, g, p, basis).map(|m| fock_matrix(&m, states)))
            .collect(),
    }
}

pub fn run_gauge_scan(cfg: &CampaignConfig, gauges: &[GaugeChoice]) -> Result<VerificationReport> {
    let p = &cfg.params;
    let tol = cfg.tol_or(TOL_QUADRATURE);
    if let Some(g) = gauges.iter().find(|g| g.x0() != gauges[0].x0()) {
        return Err(Error::OriginMismatch {
            a: gauges[0].x0(),
            b: g.x0(),
        });
    }
    let mut report = VerificationReport::new("gauge-scan", p, gauges, cfg.settings());
    let Some(first) = gauges.first() else {
        report.push(Check::failed("precondition/gauges", tol, "empty gauge list"));
        return Ok(report);
    };
    let x0 = first.x0();
    let states = angular_states(4, 4);
    let top = states.iter().map(|&(l, n)| (n + l) as usize).max().unwrap_or(1);
    let basis = FockBasis::new(top.max(1))?;
    let spec = {
        let mut s = cfg.grid_spec(1.0);
        s.centre = x0;
        s
    };
    let grid = Grid2::new(spec)?;
    let samples: Vec<GaugeSample> = gauges.iter().map(|g| sample_gauge(&grid, g, p, &states, basis)).collect();

    for (k, o) in Observable::TABULATED.iter().enumerate() {
        let fock = fock_matrix(&build_observable(*o, p, x0, basis), &states);
        let mut spread: Result<f64> = Ok(0.0);
        let mut vs_fock: Result<f64> = Ok(0.0);
        let reference = &samples[0].invariant[k];
        for s in &samples {
            match (&s.invariant[k], reference) {
                (Ok(m), Ok(r)) => {
                    spread = spread.map(|d| d.max(max_diff(m, r)));
                    vs_fock = vs_fock.map(|d| d.max(max_diff(m, &fock)));
                }
                (Err(e), _) | (_, Err(e)) => {
                    spread = Err(Error::InvalidArgument(e.to_string()));
                    vs_fock = Err(Error::InvalidArgument(e.to_string()));
                }
            }
        }
        report.push(to_check(format!("gauge-scan/{o}/cross-gauge-spread"), spread, tol));
        report.push(to_check(format!("gauge-scan/{o}/vs-fock"), vs_fock, tol));
    }

    for (gi, s) in samples.iter().enumerate() {
        for (k, w) in GaugeVariant::ALL.iter().enumerate() {
            let dec = match (&s.variant[k], &s.predicted[k]) {
                (Ok(q), Ok(pr)) => Ok(max_diff(q, pr)),
                (Err(e), _) | (_, Err(e)) => Err(Error::InvalidArgument(e.to_string())),
            };
            report.push(to_check(format!("gauge-scan/g{gi}/{w}/decomposition"), dec, tol));
            if gi == 0 {
                continue;
            }
            let base = &samples[0];
            let shift = match (&s.variant[k], &base.variant[k], &s.predicted[k], &base.predicted[k]) {
                (Ok(q), Ok(q0), Ok(pr), Ok(pr0)) => {
                    let dq = sub(q, q0);
                    let dp = sub(pr, pr0);
                    let size = dp.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
                    Ok((max_diff(&dq, &dp), size))
                }
                _ => Err(Error::InvalidArgument("missing gauge sample".into())),
            };
            let id = format!("gauge-scan/g{gi}-g0/{w}/predicted-shift");
            report.push(match shift {
                Ok((d, size)) => Check::new(id, d, tol).with_note(format!("max predicted shift {size:.6e}")),
                Err(e) => Check::failed(id, tol, e.to_string()),
            });
        }
    }
    Ok(report)
}

fn to_check(id: String, r: Result<f64>, tol: f64) -> Check {
    match r {
        Ok(d) => Check::new(id, d, tol),
        Err(e) => Check::failed(id, tol, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_counts() {
        assert_eq!(angular_states(4, 4).len(), 35);
        assert_eq!(angular_states(6, 6).len(), 70);
        assert!(angular_states(2, 1).contains(&(-1, 2)));
        assert!(!angular_states(2, 1).contains(&(-2, 2)));
    }

    #[test]
    fn seeded_gauges_are_reproducible() {
        let a = default_gauges([0.0, 0.0], 7);
        let b = default_gauges([0.0, 0.0], 7);
        assert_eq!(a.len(), 7);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.phi(), y.phi());
            assert_eq!(x.alpha(), y.alpha());
        }
        assert_eq!(a[6].phi().degree(), 3);
        assert_ne!(default_gauges([0.0, 0.0], 8)[6].phi(), a[6].phi());
    }
}
