//! Classical cyclotron motion: closed-form orbits, integrators and the
//! conserved charges.

pub mod observable;

use serde::{Deserialize, Serialize};

use crate::params::{vector_potential, GaugeChoice, PhysicalParams, Point};
use crate::{Error, Result};

pub use observable::{PoissonEngine, PolyObservable};

/// Position and velocity momentum `p = m dx/dt`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub x: Point,
    pub p: [f64; 2],
}

impl PhaseSpacePoint {
    pub fn new(x: Point, p: [f64; 2]) -> Self {
        Self { x, p }
    }
}

/// Energy, orbit centre and phase time of a circular orbit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryParams {
    energy: f64,
    centre: Point,
    t0: f64,
}

impl TrajectoryParams {
    pub fn new(energy: f64, centre: Point, t0: f64) -> Result<Self> {
        if !(energy >= 0.0 && energy.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "orbit energy must be finite and >= 0, got {energy}"
            )));
        }
        Ok(Self { energy, centre, t0 })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn centre(&self) -> Point {
        self.centre
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }
}

/// Orbit amplitude `(1/omega) sqrt(2E/m)`.
fn radius(p: &PhysicalParams, tp: &TrajectoryParams) -> f64 {
    (2.0 * tp.energy / p.mass()).sqrt() / p.omega_c()
}

pub fn analytic_trajectory(p: &PhysicalParams, tp: &TrajectoryParams, t: f64) -> PhaseSpacePoint {
    let (w, s) = (p.omega_c(), p.sign());
    let (sn, cs) = (w * (t - tp.t0)).sin_cos();
    let r = radius(p, tp);
    let pm = (2.0 * p.mass() * tp.energy).sqrt();
    PhaseSpacePoint {
        x: [tp.centre[0] + r * cs, tp.centre[1] - s * r * sn],
        p: [-pm * sn, -s * pm * cs],
    }
}

/// Velocity and acceleration of the closed-form orbit at `t`.
pub fn analytic_derivatives(p: &PhysicalParams, tp: &TrajectoryParams, t: f64) -> ([f64; 2], [f64; 2]) {
    let (w, s) = (p.omega_c(), p.sign());
    let (sn, cs) = (w * (t - tp.t0)).sin_cos();
    let rw = radius(p, tp) * w;
    let v = [-rw * sn, -s * rw * cs];
    let a = [-rw * w * cs, s * rw * w * sn];
    (v, a)
}

/// `m a_i - qB eps_ij v_j`, zero along solutions of the Lorentz equation.
pub fn lorentz_residual(p: &PhysicalParams, v: [f64; 2], a: [f64; 2]) -> [f64; 2] {
    let qb = p.qb();
    [p.mass() * a[0] - qb * v[1], p.mass() * a[1] + qb * v[0]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rk4,
    Boris,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rk4" => Ok(Method::Rk4),
            "boris" => Ok(Method::Boris),
            _ => Err(Error::InvalidArgument(format!("unknown integrator `{s}`"))),
        }
    }
}

/// Integrates the Lorentz flow for `n` steps, returning `n + 1` states
/// starting with `s0`.
pub fn integrate(
    p: &PhysicalParams,
    s0: PhaseSpacePoint,
    dt: f64,
    n: usize,
    method: Method,
) -> Result<Vec<PhaseSpacePoint>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("step count must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(s0);
    let mut s = s0;
    match method {
        Method::Rk4 => {
            for _ in 0..n {
                s = rk4_step(p, s, dt);
                out.push(s);
            }
        }
        Method::Boris => {
            let stepper = BorisStep::new(p, dt);
            for _ in 0..n {
                s = stepper.apply(s);
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn force(p: &PhysicalParams, mom: [f64; 2]) -> [f64; 2] {
    let k = p.qb() / p.mass();
    [k * mom[1], -k * mom[0]]
}

fn rk4_step(p: &PhysicalParams, s: PhaseSpacePoint, dt: f64) -> PhaseSpacePoint {
    let inv_m = 1.0 / p.mass();
    let deriv = |x: &PhaseSpacePoint| {
        let f = force(p, x.p);
        ([x.p[0] * inv_m, x.p[1] * inv_m], f)
    };
    let shift = |x: &PhaseSpacePoint, d: &([f64; 2], [f64; 2]), h: f64| PhaseSpacePoint {
        x: [x.x[0] + h * d.0[0], x.x[1] + h * d.0[1]],
        p: [x.p[0] + h * d.1[0], x.p[1] + h * d.1[1]],
    };
    let k1 = deriv(&s);
    let k2 = deriv(&shift(&s, &k1, 0.5 * dt));
    let k3 = deriv(&shift(&s, &k2, 0.5 * dt));
    let k4 = deriv(&shift(&s, &k3, dt));
    let comb = |a: f64, b: f64, c: f64, d: f64| dt / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    PhaseSpacePoint {
        x: [
            s.x[0] + comb(k1.0[0], k2.0[0], k3.0[0], k4.0[0]),
            s.x[1] + comb(k1.0[1], k2.0[1], k3.0[1], k4.0[1]),
        ],
        p: [
            s.p[0] + comb(k1.1[0], k2.1[0], k3.1[0], k4.1[0]),
            s.p[1] + comb(k1.1[1], k2.1[1], k3.1[1], k4.1[1]),
        ],
    }
}

/// Boris rotation split around a drift: two half-step rotations of `p`
/// using the phase-exact `tan(theta/4)` parameter, with the drift taken
/// along the chord of the rotated momentum.
struct BorisStep {
    t: f64,
    s: f64,
    drift: f64,
}

impl BorisStep {
    fn new(p: &PhysicalParams, dt: f64) -> Self {
        // The Boris parameter t = tan(phi / 2) turns p by -2 atan(t) in the
        // counterclockwise sense; each half step turns it by -qB dt / (2m).
        let t = (0.25 * p.qb() / p.mass() * dt).tan();
        let half = 0.5 * p.omega_c() * dt;
        let sinc = if half == 0.0 { 1.0 } else { half.sin() / half };
        Self {
            t,
            s: 2.0 * t / (1.0 + t * t),
            drift: dt * sinc / p.mass(),
        }
    }

    fn rotate(&self, v: [f64; 2]) -> [f64; 2] {
        // v' = v + v x t; v+ = v + v' x s, for t, s along the z axis.
        let vp = [v[0] + v[1] * self.t, v[1] - v[0] * self.t];
        [v[0] + vp[1] * self.s, v[1] - vp[0] * self.s]
    }

    fn apply(&self, st: PhaseSpacePoint) -> PhaseSpacePoint {
        let mid = self.rotate(st.p);
        let x = [st.x[0] + self.drift * mid[0], st.x[1] + self.drift * mid[1]];
        PhaseSpacePoint { x, p: self.rotate(mid) }
    }
}

/// The four conserved charges about `x0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoetherCharges {
    pub energy: f64,
    pub t: [f64; 2],
    pub m3: f64,
}

impl NoetherCharges {
    /// `T^2 - 2mE - 2qB M3`.
    pub fn relation_residual(&self, p: &PhysicalParams) -> f64 {
        self.t[0] * self.t[0] + self.t[1] * self.t[1]
            - 2.0 * p.mass() * self.energy
            - 2.0 * p.qb() * self.m3
    }
}

pub fn noether_charges(p: &PhysicalParams, x0: Point, s: &PhaseSpacePoint) -> NoetherCharges {
    let qb = p.qb();
    let u = [s.x[0] - x0[0], s.x[1] - x0[1]];
    NoetherCharges {
        energy: (s.p[0] * s.p[0] + s.p[1] * s.p[1]) / (2.0 * p.mass()),
        t: [s.p[0] - qb * u[1], s.p[1] + qb * u[0]],
        m3: u[0] * s.p[1] - u[1] * s.p[0] + 0.5 * qb * (u[0] * u[0] + u[1] * u[1]),
    }
}

/// `xc_i = x0_i + eps_ij T_j / (qB)`.
pub fn magnetic_centre(p: &PhysicalParams, x0: Point, t: [f64; 2]) -> Point {
    let qb = p.qb();
    [x0[0] + t[1] / qb, x0[1] - t[0] / qb]
}

/// `pi_i = p_i + q A_i(x)`.
pub fn canonical_momenta(g: &GaugeChoice, p: &PhysicalParams, s: &PhaseSpacePoint) -> [f64; 2] {
    let a = vector_potential(g, p, s.x);
    [s.p[0] + p.charge() * a[0], s.p[1] + p.charge() * a[1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_energy_orbit_is_static() {
        let p = PhysicalParams::natural();
        let tp = TrajectoryParams::new(0.0, [0.3, -1.0], 0.0).unwrap();
        for t in [0.0, 1.0, 17.5] {
            let s = analytic_trajectory(&p, &tp, t);
            assert_eq!(s.x, [0.3, -1.0]);
            assert_eq!(s.p, [0.0, 0.0]);
        }
    }

    #[test]
    fn unit_orbit_start() {
        let p = PhysicalParams::natural();
        let tp = TrajectoryParams::new(0.5, [0.0, 0.0], 0.0).unwrap();
        let s = analytic_trajectory(&p, &tp, 0.0);
        assert_eq!(s.x, [1.0, 0.0]);
        assert_eq!(s.p, [0.0, -1.0]);
    }

    #[test]
    fn worked_charges() {
        let p = PhysicalParams::natural();
        let c = noether_charges(&p, [0.0, 0.0], &PhaseSpacePoint::new([1.0, 0.0], [0.0, 1.0]));
        assert_eq!(c.energy, 0.5);
        assert_eq!(c.t, [0.0, 2.0]);
        assert_eq!(c.m3, 1.5);
        assert_eq!(c.relation_residual(&p), 0.0);
        assert_eq!(magnetic_centre(&p, [0.0, 0.0], c.t), [2.0, 0.0]);
    }

    #[test]
    fn origin_charges_vanish() {
        let c = noether_charges(
            &PhysicalParams::natural(),
            [0.5, 0.5],
            &PhaseSpacePoint::new([0.5, 0.5], [0.0, 0.0]),
        );
        assert_eq!((c.energy, c.t, c.m3), (0.0, [0.0, 0.0], 0.0));
    }

    #[test]
    fn landau_gauge_canonical_momentum() {
        let g = GaugeChoice::first_landau([0.0, 0.0]);
        let pi = canonical_momenta(
            &g,
            &PhysicalParams::natural(),
            &PhaseSpacePoint::new([0.0, 1.0], [1.0, 0.0]),
        );
        assert_eq!(pi, [0.0, 0.0]);
    }

    #[test]
    fn static_particle_stays_put() {
        let p = PhysicalParams::natural();
        let s0 = PhaseSpacePoint::new([0.2, 0.4], [0.0, 0.0]);
        for m in [Method::Rk4, Method::Boris] {
            let path = integrate(&p, s0, 0.01, 50, m).unwrap();
            assert!(path.iter().all(|s| *s == s0));
        }
    }

    #[test]
    fn rejects_bad_step() {
        let p = PhysicalParams::natural();
        let s0 = PhaseSpacePoint::new([0.0, 0.0], [1.0, 0.0]);
        assert!(integrate(&p, s0, 0.0, 10, Method::Rk4).is_err());
        assert!(integrate(&p, s0, 0.1, 0, Method::Boris).is_err());
    }
}
