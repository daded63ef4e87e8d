//! Physical constants and the `(alpha, phi)` gauge family.

use serde::{Deserialize, Serialize};

use crate::poly::{Poly2, DEFAULT_MAX_DEGREE};
use crate::{Error, Result};

/// A point of the plane in absolute coordinates.
pub type Point = [f64; 2];

/// Mass, charge, field and action quantum of the planar particle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    mass: f64,
    charge: f64,
    field: f64,
    hbar: f64,
}

/// Cyclotron frequency, orientation sign and magnetic length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedParams {
    pub omega_c: f64,
    /// `sign(q B)`, either `1.0` or `-1.0`.
    pub s: f64,
    pub lambda: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, charge: f64, field: f64, hbar: f64) -> Result<Self> {
        let finite = [mass, charge, field, hbar].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if mass <= 0.0 {
            return Err(Error::InvalidParams(format!("mass must be > 0, got {mass}")));
        }
        if charge == 0.0 {
            return Err(Error::InvalidParams("charge must be nonzero".into()));
        }
        if field == 0.0 {
            return Err(Error::InvalidParams("field must be nonzero".into()));
        }
        if hbar <= 0.0 {
            return Err(Error::InvalidParams(format!("hbar must be > 0, got {hbar}")));
        }
        Ok(Self {
            mass,
            charge,
            field,
            hbar,
        })
    }

    /// `m = q = B = hbar = 1`.
    pub fn natural() -> Self {
        Self {
            mass: 1.0,
            charge: 1.0,
            field: 1.0,
            hbar: 1.0,
        }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn qb(&self) -> f64 {
        self.charge * self.field
    }

    pub fn omega_c(&self) -> f64 {
        self.qb().abs() / self.mass
    }

    pub fn sign(&self) -> f64 {
        self.qb().signum()
    }

    /// `sqrt(hbar / (m omega_c))`.
    pub fn magnetic_length(&self) -> f64 {
        (self.hbar / (self.mass * self.omega_c())).sqrt()
    }

    /// `hbar m omega_c`, the natural squared scale of `T_i` and `p_i`.
    pub fn momentum_scale_sq(&self) -> f64 {
        self.hbar * self.mass * self.omega_c()
    }

    pub fn derived(&self) -> DerivedParams {
        DerivedParams {
            omega_c: self.omega_c(),
            s: self.sign(),
            lambda: self.magnetic_length(),
        }
    }
}

/// Gauge fixing data: `phibar = -(alpha B / 2) u1 u2 + phi(u)` with
/// `u = x - x0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeChoice {
    alpha: f64,
    x0: Point,
    phi: Poly2,
}

impl GaugeChoice {
    pub fn new(alpha: f64, x0: Point, phi: Poly2) -> Result<Self> {
        Self::with_degree_bound(alpha, x0, phi, DEFAULT_MAX_DEGREE)
    }

    pub fn with_degree_bound(alpha: f64, x0: Point, phi: Poly2, max_degree: u32) -> Result<Self> {
        if !alpha.is_finite() || !x0.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument("gauge parameters must be finite".into()));
        }
        phi.check_degree(max_degree)?;
        Ok(Self { alpha, x0, phi })
    }

    /// `alpha = 0, phi = 0`.
    pub fn symmetric(x0: Point) -> Self {
        Self {
            alpha: 0.0,
            x0,
            phi: Poly2::zero(),
        }
    }

    /// `alpha = 1, phi = 0`: invariant under translations in `x1`.
    pub fn first_landau(x0: Point) -> Self {
        Self {
            alpha: 1.0,
            x0,
            phi: Poly2::zero(),
        }
    }

    /// `alpha = -1, phi = 0`: invariant under translations in `x2`.
    pub fn second_landau(x0: Point) -> Self {
        Self {
            alpha: -1.0,
            x0,
            phi: Poly2::zero(),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn x0(&self) -> Point {
        self.x0
    }

    pub fn phi(&self) -> &Poly2 {
        &self.phi
    }

    /// Shifted coordinates `u = x - x0`.
    pub fn shift(&self, x: Point) -> [f64; 2] {
        [x[0] - self.x0[0], x[1] - self.x0[1]]
    }

    /// The total gauge function `phibar` for field `B`.
    pub fn phi_bar(&self, field: f64) -> Poly2 {
        let mut out = self.phi.clone();
        out.add_term(1, 1, -0.5 * self.alpha * field);
        out
    }

    /// Cartesian components of `A` as polynomials in `u`.
    pub fn vector_potential_poly(&self, p: &PhysicalParams) -> [Poly2; 2] {
        let b = p.field();
        let mut a1 = self.phi.deriv(0);
        a1.add_term(0, 1, -0.5 * (self.alpha + 1.0) * b);
        let mut a2 = self.phi.deriv(1);
        a2.add_term(1, 0, -0.5 * (self.alpha - 1.0) * b);
        [a1, a2]
    }
}

/// `(alpha, phi, x0)` → `(A1, A2)` at absolute point `x`.
pub fn vector_potential(g: &GaugeChoice, p: &PhysicalParams, x: Point) -> [f64; 2] {
    let u = g.shift(x);
    let [a1, a2] = g.vector_potential_poly(p);
    [a1.eval(u), a2.eval(u)]
}

/// Generator `phibar_to - phibar_from` of the gauge transformation between
/// two members of the family. Both must share `x0`.
pub fn gauge_delta(from: &GaugeChoice, to: &GaugeChoice, field: f64) -> Result<Poly2> {
    if from.x0 != to.x0 {
        return Err(Error::OriginMismatch {
            a: from.x0,
            b: to.x0,
        });
    }
    let mut out = &to.phi - &from.phi;
    out.add_term(1, 1, -0.5 * (to.alpha - from.alpha) * field);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_identity_scale() {
        let d = PhysicalParams::natural().derived();
        assert_eq!((d.omega_c, d.s, d.lambda), (1.0, 1.0, 1.0));
    }

    #[test]
    fn derived_general() {
        let d = PhysicalParams::new(2.0, -3.0, 4.0, 1.0).unwrap().derived();
        assert_eq!(d.omega_c, 6.0);
        assert_eq!(d.s, -1.0);
        assert!((d.lambda - 1.0 / 12f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn field_sign_only_flips_s() {
        let d = PhysicalParams::new(1.0, 1.0, -1.0, 1.0).unwrap().derived();
        assert_eq!((d.omega_c, d.s, d.lambda), (1.0, -1.0, 1.0));
    }

    #[test]
    fn rejects_degenerate_params() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, -1.0).is_err());
        assert!(PhysicalParams::new(f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn first_landau_potential() {
        let g = GaugeChoice::first_landau([0.0, 0.0]);
        let a = vector_potential(&g, &PhysicalParams::natural(), [0.5, 2.0]);
        assert_eq!(a, [-2.0, 0.0]);
    }

    #[test]
    fn symmetric_potential() {
        let g = GaugeChoice::symmetric([0.0, 0.0]);
        let a = vector_potential(&g, &PhysicalParams::natural(), [1.0, 1.0]);
        assert_eq!(a, [-0.5, 0.5]);
    }

    #[test]
    fn delta_identity_is_zero() {
        let g = GaugeChoice::new(0.3, [1.0, 2.0], Poly2::parse("u1^2 - u2").unwrap()).unwrap();
        assert!(gauge_delta(&g, &g, 1.7).unwrap().is_zero());
    }

    #[test]
    fn delta_symmetric_to_landau() {
        let d = gauge_delta(
            &GaugeChoice::symmetric([0.0, 0.0]),
            &GaugeChoice::first_landau([0.0, 0.0]),
            1.0,
        )
        .unwrap();
        assert_eq!(d, Poly2::monomial(1, 1, -0.5));
    }

    #[test]
    fn delta_landau_to_phi_gauge() {
        let to = GaugeChoice::new(0.0, [0.0, 0.0], Poly2::parse("u1^2").unwrap()).unwrap();
        let d = gauge_delta(&GaugeChoice::first_landau([0.0, 0.0]), &to, 1.0).unwrap();
        assert_eq!(d, Poly2::parse("0.5*u1*u2 + u1^2").unwrap());
    }

    #[test]
    fn delta_rejects_origin_mismatch() {
        let r = gauge_delta(
            &GaugeChoice::symmetric([0.0, 0.0]),
            &GaugeChoice::symmetric([0.0, 1.0]),
            1.0,
        );
        assert!(matches!(r, Err(Error::OriginMismatch { .. })));
    }

    #[test]
    fn gauge_degree_bound() {
        let phi = Poly2::parse_bounded("u1^7", 8).unwrap();
        assert!(GaugeChoice::new(0.0, [0.0, 0.0], phi.clone()).is_err());
        assert!(GaugeChoice::with_degree_bound(0.0, [0.0, 0.0], phi, 8).is_ok());
    }
}
