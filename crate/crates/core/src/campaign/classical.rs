//! Classical orbit integration with charge-drift and relation checks.

use super::{CampaignConfig, CsvTable, TOL_ALGEBRA, TOL_DRIFT};
use crate::params::{GaugeChoice, PhysicalParams};
use crate::classical::observable::named::{centre, energy, rotation, translation};
use crate::classical::observable::{to_canonical, PoissonEngine, PolyObservable};
use crate::classical::{
    analytic_derivatives, analytic_trajectory, integrate, lorentz_residual, noether_charges, Method,
    PhaseSpacePoint, TrajectoryParams,
};
use crate::report::{Check, VerificationReport};
use crate::Result;


/// Tolerance of the charge relation, relative to its largest term.
pub const TOL_RELATION: f64 = 1e-10;
/// Tolerance of the Lorentz residual of the analytic orbit, relative to `|q B v|`.
pub const TOL_LORENTZ: f64 = 1e-10;
/// Tolerance of the integrated orbit against the analytic one, in units of
/// the magnetic length.
pub const TOL_ORBIT: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct ClassicalOptions {
    pub trajectory: TrajectoryParams,
    /// Step size; one thousandth of a period when unset.
    pub dt: Option<f64>,
    /// Step count; ten periods when unset.
    pub steps: Option<usize>,
    pub method: Method,
}

impl ClassicalOptions {
    pub fn new(trajectory: TrajectoryParams) -> Self {
        Self {
            trajectory,
            dt: None,
            steps: None,
            method: Method::Boris,
        }
    }
}

/// Drift of `values` from their first entry, relative to `scale` (absolute
/// when `scale` is zero).
fn drift(values: impl Iterator<Item = f64>, first: f64, scale: f64) -> f64 {
    let d = values.map(|v| (v - first).abs()).fold(0.0, f64::max);
    if scale > 0.0 {
        d / scale
    } else {
        d
    }
}

pub fn run_classical_sim(cfg: &CampaignConfig, opts: &ClassicalOptions) -> Result<(VerificationReport, CsvTable)> {
    let p = &cfg.params;
    let tol = cfg.tol_or(TOL_DRIFT);
    let x0 = cfg.gauge.x0();
    let tp = &opts.trajectory;
    let w = p.omega_c();
    let period = 2.0 * std::f64::consts::PI / w;
    let dt = opts.dt.unwrap_or(period / 1000.0);
    let steps = opts.steps.unwrap_or_else(|| (10.0 * period / dt).round().max(1.0) as usize);
    let start = analytic_trajectory(p, tp, tp.t0());
    let path = integrate(p, start, dt, steps, opts.method)?;

    let mut report = VerificationReport::new("classical-sim", p, std::slice::from_ref(&cfg.gauge), cfg.settings());
    report.settings.nmax = None;
    report.settings.margin = None;
    report.settings.grid = None;
    report.settings.scheme = None;

    let charges: Vec<_> = path.iter().map(|s| noether_charges(p, x0, s)).collect();
    let c0 = charges[0];
    let e0 = c0.energy;
    let t_ref = c0.t[0].hypot(c0.t[1]).max((2.0 * p.mass() * e0).sqrt());
    let m_ref = c0.m3.abs().max(e0 / w);
    let method = match opts.method {
        Method::Rk4 => "rk4",
        Method::Boris => "boris",
    };
    report.push(Check::new(
        format!("drift/{method}/E"),
        drift(charges.iter().map(|c| c.energy), e0, e0),
        tol,
    ));
    for i in 0..2 {
        report.push(Check::new(
            format!("drift/{method}/T{}", i + 1),
            drift(charges.iter().map(|c| c.t[i]), c0.t[i], t_ref),
            tol,
        ));
    }
    report.push(Check::new(
        format!("drift/{method}/M3"),
        drift(charges.iter().map(|c| c.m3), c0.m3, m_ref),
        tol,
    ));

    let rel_scale = (t_ref * t_ref).max((2.0 * p.qb() * c0.m3).abs());
    let rel = charges
        .iter()
        .map(|c| c.relation_residual(p).abs())
        .fold(0.0, f64::max);
    report.push(Check::new(
        "relation/T^2-2mE-2qB*M3",
        if rel_scale > 0.0 { rel / rel_scale } else { rel },
        TOL_RELATION,
    ));

    let lambda = p.magnetic_length();
    let orbit = path
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let a = analytic_trajectory(p, tp, tp.t0() + k as f64 * dt);
            (s.x[0] - a.x[0]).hypot(s.x[1] - a.x[1])
        })
        .fold(0.0, f64::max);
    report.push(Check::new(format!("orbit/{method}/vs-analytic"), orbit / lambda, TOL_ORBIT));

    let v_scale = (2.0 * e0 / p.mass()).sqrt() * p.qb().abs();
    let lorentz = (0..=100)
        .map(|k| {
            let t = tp.t0() + period * k as f64 / 10.0;
            let (v, a) = analytic_derivatives(p, tp, t);
            let r = lorentz_residual(p, v, a);
            r[0].hypot(r[1])
        })
        .fold(0.0, f64::max);
    report.push(Check::new(
        "analytic/lorentz-residual",
        if v_scale > 0.0 { lorentz / v_scale } else { lorentz },
        TOL_LORENTZ,
    ));

    let tol_alg = cfg.tol_or(TOL_ALGEBRA);
    match poisson_identities(p, &cfg.gauge) {
        Ok(list) => report.extend(list.into_iter().map(|(id, d)| Check::new(format!("poisson/{id}"), d, tol_alg))),
        Err(e) => report.push(Check::failed("poisson/suite", tol_alg, e.to_string())),
    }

    let mut csv = CsvTable::new(&["t", "x1", "x2", "p1", "p2", "E", "T1", "T2", "M3"]);
    for (k, (s, c)) in path.iter().zip(&charges).enumerate() {
        let PhaseSpacePoint { x, p: mom } = *s;
        csv.push([
            tp.t0() + k as f64 * dt,
            x[0],
            x[1],
            mom[0],
            mom[1],
            c.energy,
            c.t[0],
            c.t[1],
            c.m3,
        ]);
    }
    Ok((report, csv))
}

/// Coefficient-level Poisson identities of the charges, as `(id, max |coefficient|
/// of lhs - rhs|)`.
pub fn poisson_identities(p: &PhysicalParams, g: &GaugeChoice) -> Result<Vec<(String, f64)>> {
    let e = PoissonEngine::new(p);
    let qb = p.qb();
    let h = energy(p);
    let t1 = translation(p, 0);
    let t2 = translation(p, 1);
    let m3 = rotation(p);
    let c = PolyObservable::constant;
    let zero = PolyObservable::zero();
    let dev = |a: &PolyObservable, b: &PolyObservable| (a - b).max_abs_coeff();
    let mut out = Vec::new();
    let mut push = |id: &str, lhs: PolyObservable, rhs: &PolyObservable| out.push((id.to_string(), dev(&lhs, rhs)));

    for (i, v) in [(0usize, "u1"), (1, "u2")] {
        push(&format!("{{{v},p{}}}=1", i + 1), e.bracket(&PolyObservable::var(i), &PolyObservable::var(2 + i))?, &c(1.0));
    }
    push("{p1,p2}=qB", e.bracket(&PolyObservable::var(2), &PolyObservable::var(3))?, &c(qb));
    push("{T1,T2}=-qB", e.bracket(&t1, &t2)?, &c(-qb));
    push("{T1,E}=0", e.bracket(&t1, &h)?, &zero);
    push("{T2,E}=0", e.bracket(&t2, &h)?, &zero);
    push("{M3,E}=0", e.bracket(&m3, &h)?, &zero);
    push("{M3,T1}=T2", e.bracket(&m3, &t1)?, &t2);
    push("{M3,T2}=-T1", e.bracket(&m3, &t2)?, &(-&t1));
    push(
        "{Xc1,Xc2}=-1/qB",
        e.bracket(&centre(p, 0), &centre(p, 1))?,
        &c(-1.0 / qb),
    );
    let rel = &(&(&(&t1 * &t1) + &(&t2 * &t2)) - &h.scale(2.0 * p.mass())) - &m3.scale(2.0 * qb);
    push("T1^2+T2^2-2mE-2qB*M3=0", rel, &zero);

    // The bracket is the same in canonical variables of any gauge.
    for (id, f, gg) in [("T1,T2", &t1, &t2), ("M3,T1", &m3, &t1), ("E,M3", &h, &m3)] {
        let lhs = e.canonical_bracket(&to_canonical(f, g, p), &to_canonical(gg, g, p))?;
        let rhs = to_canonical(&e.bracket(f, gg)?, g, p);
        push(&format!("canonical-{{{id}}}"), lhs, &rhs);
    }
    Ok(out)
}
