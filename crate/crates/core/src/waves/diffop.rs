//! Second-order differential operators with complex polynomial coefficients
//! and their position-space listings in the `(alpha, phi)` gauge.

use num_complex::Complex64;

use super::waveform::{Jet, WaveForm};
use crate::observable::{GaugeVariant, Observable};
use crate::params::{GaugeChoice, PhysicalParams, Point};
use crate::poly::{CPoly2, CompiledPoly, Poly2};
use crate::{Error, Result};

/// Derivative multi-indices in storage order: `1, d1, d2, d1^2, d1 d2, d2^2`.
const MULTI: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

fn slot(a: (u32, u32)) -> Option<usize> {
    MULTI.iter().position(|&m| m == a)
}

fn binom(n: u32, k: u32) -> f64 {
    match (n, k) {
        (_, 0) => 1.0,
        (n, k) if k == n => 1.0,
        (2, 1) => 2.0,
        _ => 0.0,
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `c(u) + b1 d1 + b2 d2 + a11 d1^2 + a12 d1 d2 + a22 d2^2`, coefficients in
/// `u = x - x0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOpSpec {
    x0: Point,
    coeffs: [CPoly2; 6],
}

impl DiffOpSpec {
    pub fn zero(x0: Point) -> Self {
        Self {
            x0,
            coeffs: Default::default(),
        }
    }

    /// Multiplication by `f(u)`.
    pub fn multiply(x0: Point, f: CPoly2) -> Self {
        let mut out = Self::zero(x0);
        out.coeffs[0] = f;
        out
    }

    /// `-i hbar d_i`.
    pub fn momentum(x0: Point, hbar: f64, i: usize) -> Self {
        let mut out = Self::zero(x0);
        out.coeffs[1 + i] = CPoly2::constant(c(0.0, -hbar));
        out
    }

    /// Sets the coefficient of `d1^a d2^b` (`a + b <= 2`).
    pub fn with_term(mut self, a: u32, b: u32, coeff: CPoly2) -> Self {
        let k = slot((a, b)).expect("order at most 2");
        self.coeffs[k] = coeff;
        self
    }

    pub fn x0(&self) -> Point {
        self.x0
    }

    pub fn coeff(&self, a: u32, b: u32) -> Option<&CPoly2> {
        slot((a, b)).map(|k| &self.coeffs[k])
    }

    pub fn order(&self) -> u32 {
        MULTI
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, p)| !p.is_zero())
            .map(|(m, _)| m.0 + m.1)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            x0: self.x0,
            coeffs: self.coeffs.clone().map(|p| p.scale(k)),
        }
    }

    /// `self o other`. Fails when the product has order above two.
    pub fn compose(&self, other: &DiffOpSpec) -> Result<DiffOpSpec> {
        let mut out = DiffOpSpec::zero(self.x0);
        for (&al, a) in MULTI.iter().zip(&self.coeffs) {
            if a.is_zero() {
                continue;
            }
            for (&be, b) in MULTI.iter().zip(&other.coeffs) {
                if b.is_zero() {
                    continue;
                }
                for g1 in 0..=al.0 {
                    for g2 in 0..=al.1 {
                        let mut db = b.clone();
                        for _ in 0..g1 {
                            db = db.deriv(0);
                        }
                        for _ in 0..g2 {
                            db = db.deriv(1);
                        }
                        if db.is_zero() {
                            continue;
                        }
                        let k = binom(al.0, g1) * binom(al.1, g2);
                        let term = (a * &db).scale(c(k, 0.0));
                        let target = (al.0 - g1 + be.0, al.1 - g2 + be.1);
                        match slot(target) {
                            Some(s) => out.coeffs[s] = &out.coeffs[s] + &term,
                            None => {
                                return Err(Error::InvalidArgument(format!(
                                    "operator product has order {} > 2",
                                    target.0 + target.1
                                )))
                            }
                        }
                    }
                }
            }
        }
        Ok(out.pruned())
    }

    fn pruned(mut self) -> Self {
        for p in &mut self.coeffs {
            *p = CPoly2::from_terms(p.terms().filter(|(_, c)| c.norm() > 0.0));
        }
        self
    }

    /// The operator in the representation with flat connection `V = grad(lambda)`:
    /// every `d_i` becomes `d_i + (i / hbar) V_i`.
    pub fn flat_connection(&self, lambda: &Poly2, hbar: f64) -> DiffOpSpec {
        let v = [lambda.deriv(0).to_complex(), lambda.deriv(1).to_complex()];
        let ih = c(0.0, 1.0 / hbar);
        let cov = |i: usize| {
            let mut d = DiffOpSpec::zero(self.x0);
            d.coeffs[1 + i] = CPoly2::constant(c(1.0, 0.0));
            d.coeffs[0] = v[i].scale(ih);
            d
        };
        let d = [cov(0), cov(1)];
        let mut out = DiffOpSpec::multiply(self.x0, self.coeffs[0].clone());
        for (k, &(a, b)) in MULTI.iter().enumerate().skip(1) {
            let coeff = &self.coeffs[k];
            if coeff.is_zero() {
                continue;
            }
            let mut chain: Vec<&DiffOpSpec> = Vec::new();
            chain.extend(std::iter::repeat_n(&d[0], a as usize));
            chain.extend(std::iter::repeat_n(&d[1], b as usize));
            let mut op = DiffOpSpec::multiply(self.x0, coeff.clone());
            for factor in chain {
                op = op.compose(factor).expect("covariant derivatives of order <= 2");
            }
            out = &out + &op;
        }
        out.pruned()
    }

    /// Prepares the coefficients for repeated application.
    pub fn compile(&self) -> CompiledDiffOp {
        CompiledDiffOp {
            x0: self.x0,
            coeffs: std::array::from_fn(|k| {
                (!self.coeffs[k].is_zero()).then(|| self.coeffs[k].compile())
            }),
        }
    }

    /// `(self psi)(x)` from the analytic jet of `psi`.
    pub fn apply(&self, psi: &WaveForm, x: Point) -> Complex64 {
        self.compile().apply_jet(&psi.jet(x), x)
    }
}

impl std::ops::Add for &DiffOpSpec {
    type Output = DiffOpSpec;
    fn add(self, rhs: &DiffOpSpec) -> DiffOpSpec {
        DiffOpSpec {
            x0: self.x0,
            coeffs: std::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]),
        }
    }
}

impl std::ops::Sub for &DiffOpSpec {
    type Output = DiffOpSpec;
    fn sub(self, rhs: &DiffOpSpec) -> DiffOpSpec {
        DiffOpSpec {
            x0: self.x0,
            coeffs: std::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompiledDiffOp {
    x0: Point,
    coeffs: [Option<CompiledPoly<Complex64>>; 6],
}

impl CompiledDiffOp {
    /// Coefficient values at `x`, in storage order.
    pub fn coeffs_at(&self, x: Point) -> [Complex64; 6] {
        let u = [x[0] - self.x0[0], x[1] - self.x0[1]];
        std::array::from_fn(|k| self.coeffs[k].as_ref().map_or(c(0.0, 0.0), |p| p.eval(u)))
    }

    pub fn apply_jet(&self, j: &Jet, x: Point) -> Complex64 {
        apply_coeffs(&self.coeffs_at(x), j)
    }
}

/// Contracts coefficient values with a jet.
pub fn apply_coeffs(k: &[Complex64; 6], j: &Jet) -> Complex64 {
    k[0] * j.value
        + k[1] * j.grad[0]
        + k[2] * j.grad[1]
        + k[3] * j.hess[0][0]
        + k[4] * j.hess[0][1]
        + k[5] * j.hess[1][1]
}

/// Real polynomial as a complex multiplication coefficient.
fn cmul(p: &Poly2) -> CPoly2 {
    p.to_complex()
}

/// Position-space form of an observable in gauge `g`, written out term by term.
pub fn position_op(name: Observable, g: &GaugeChoice, p: &PhysicalParams) -> DiffOpSpec {
    let x0 = g.x0();
    let hbar = p.hbar();
    let q = p.charge();
    let m = p.mass();
    let qb = p.qb();
    let alpha = g.alpha();
    let qphi = g.phi().scale(q);
    let [a1, a2] = g.vector_potential_poly(p);
    let u1 = Poly2::var(0);
    let u2 = Poly2::var(1);
    let mom = |i: usize, qa: &Poly2| {
        DiffOpSpec::momentum(x0, hbar, i).with_term(0, 0, cmul(qa).scale(c(-1.0, 0.0)))
    };
    let translation = |i: usize| {
        // T_i = -i hbar d_i - (-(1/2)(alpha -+ 1) qB u_j + q d_i phi).
        let mut shift = qphi.deriv(i);
        if i == 0 {
            shift.add_term(0, 1, -0.5 * (alpha - 1.0) * qb);
        } else {
            shift.add_term(1, 0, -0.5 * (alpha + 1.0) * qb);
        }
        mom(i, &shift)
    };
    let rotation = || {
        let mut extra = &(&u2 * &qphi.deriv(0)) - &(&u1 * &qphi.deriv(1));
        extra.add_term(2, 0, 0.5 * alpha * qb);
        extra.add_term(0, 2, -0.5 * alpha * qb);
        DiffOpSpec::zero(x0)
            .with_term(1, 0, cmul(&u2).scale(c(0.0, hbar)))
            .with_term(0, 1, cmul(&u1).scale(c(0.0, -hbar)))
            .with_term(0, 0, cmul(&extra))
    };
    match name {
        Observable::H => {
            let a = [a1.scale(q), a2.scale(q)];
            let div = &a[0].deriv(0) + &a[1].deriv(1);
            let sq = &(&a[0] * &a[0]) + &(&a[1] * &a[1]);
            let mut c0 = div.to_complex().scale(c(0.0, hbar / (2.0 * m)));
            c0 = &c0 + &sq.scale(1.0 / (2.0 * m)).to_complex();
            let lap = CPoly2::constant(c(-hbar * hbar / (2.0 * m), 0.0));
            DiffOpSpec::zero(x0)
                .with_term(0, 0, c0)
                .with_term(1, 0, a[0].to_complex().scale(c(0.0, hbar / m)))
                .with_term(0, 1, a[1].to_complex().scale(c(0.0, hbar / m)))
                .with_term(2, 0, lap.clone())
                .with_term(0, 2, lap)
        }
        Observable::T1 => translation(0),
        Observable::T2 => translation(1),
        Observable::M3 => rotation(),
        Observable::P1 => mom(0, &a1.scale(q)),
        Observable::P2 => mom(1, &a2.scale(q)),
        Observable::L3 => {
            let r2 = Poly2::from_terms([((2, 0), -0.5 * qb), ((0, 2), -0.5 * qb)]);
            &rotation() + &DiffOpSpec::multiply(x0, cmul(&r2))
        }
        Observable::Xc1 => {
            // x0_1 + T2 / qB
            let t = translation(1).scale(c(1.0 / qb, 0.0));
            &t + &DiffOpSpec::multiply(x0, CPoly2::constant(c(x0[0], 0.0)))
        }
        Observable::Xc2 => {
            let t = translation(0).scale(c(-1.0 / qb, 0.0));
            &t + &DiffOpSpec::multiply(x0, CPoly2::constant(c(x0[1], 0.0)))
        }
        Observable::X1 => DiffOpSpec::multiply(x0, cmul(&(&u1 + &Poly2::constant(x0[0])))),
        Observable::X2 => DiffOpSpec::multiply(x0, cmul(&(&u2 + &Poly2::constant(x0[1])))),
    }
}

/// Canonical momenta `-i hbar d_i` and canonical angular momentum
/// `-i hbar (u1 d2 - u2 d1)`; their meaning depends on the gauge only
/// through the states they act on.
pub fn position_variant_op(which: GaugeVariant, x0: Point, p: &PhysicalParams) -> DiffOpSpec {
    let hbar = p.hbar();
    match which {
        GaugeVariant::Pi1 => DiffOpSpec::momentum(x0, hbar, 0),
        GaugeVariant::Pi2 => DiffOpSpec::momentum(x0, hbar, 1),
        GaugeVariant::L3c => DiffOpSpec::zero(x0)
            .with_term(1, 0, Poly2::var(1).to_complex().scale(c(0.0, hbar)))
            .with_term(0, 1, Poly2::var(0).to_complex().scale(c(0.0, -hbar))),
    }
}

/// `-i hbar (d_i + (i / hbar) V_i) psi` at `x`, with `V = grad(lambda)`.
pub fn flat_connection_rep(lambda: &Poly2, psi: &WaveForm, i: usize, x: Point) -> Complex64 {
    DiffOpSpec::momentum(psi.x0(), psi.hbar(), i)
        .flat_connection(lambda, psi.hbar())
        .apply(psi, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauge() -> GaugeChoice {
        GaugeChoice::new(0.37, [0.4, -0.3], Poly2::parse("0.2*u1^2 - 0.1*u1*u2^2 + u2").unwrap()).unwrap()
    }

    #[test]
    fn hamiltonian_listing_matches_momentum_squares() {
        let p = PhysicalParams::new(1.4, -0.8, 1.2, 0.9).unwrap();
        let g = gauge();
        let p1 = position_op(Observable::P1, &g, &p);
        let p2 = position_op(Observable::P2, &g, &p);
        let sum = &p1.compose(&p1).unwrap() + &p2.compose(&p2).unwrap();
        let h = sum.scale(c(0.5 / p.mass(), 0.0));
        let d = &h - &position_op(Observable::H, &g, &p);
        for k in d.coeffs {
            assert!(k.max_abs_coeff() < 1e-14);
        }
    }

    #[test]
    fn rotation_listing_matches_charge_formula() {
        // M3 = u1 p2 - u2 p1 + qB u^2 / 2
        let p = PhysicalParams::new(1.4, -0.8, 1.2, 0.9).unwrap();
        let g = gauge();
        let x0 = g.x0();
        let u = |i| DiffOpSpec::multiply(x0, Poly2::var(i).to_complex());
        let l = &u(0).compose(&position_op(Observable::P2, &g, &p)).unwrap()
            - &u(1).compose(&position_op(Observable::P1, &g, &p)).unwrap();
        let r2 = Poly2::parse("u1^2 + u2^2").unwrap().scale(0.5 * p.qb()).to_complex();
        let m3 = &l + &DiffOpSpec::multiply(x0, r2);
        let d = &m3 - &position_op(Observable::M3, &g, &p);
        for k in d.coeffs {
            assert!(k.max_abs_coeff() < 1e-14);
        }
        let dl = &l - &position_op(Observable::L3, &g, &p);
        for k in dl.coeffs {
            assert!(k.max_abs_coeff() < 1e-14);
        }
    }

    #[test]
    fn compose_rejects_third_order() {
        let x0 = [0.0, 0.0];
        let d = DiffOpSpec::momentum(x0, 1.0, 0);
        let d2 = d.compose(&d).unwrap();
        assert_eq!(d2.order(), 2);
        assert!(d2.compose(&d).is_err());
    }

    #[test]
    fn plane_wave_is_momentum_eigenfunction() {
        let w = WaveForm::plane_wave([0.0, 0.0], 1.0, [0.7, -1.3]);
        let x = [0.2, 0.5];
        for (i, k) in [0.7, -1.3].into_iter().enumerate() {
            let got = flat_connection_rep(&Poly2::zero(), &w, i, x);
            assert!((got - w.value(x) * k).norm() < 1e-14);
        }
    }

    #[test]
    fn pure_gauge_conjugation() {
        let lambda = Poly2::parse("0.3*u1^2*u2 - u2^3 + 0.5*u1").unwrap();
        let w = WaveForm::plane_wave([0.1, 0.2], 0.8, [0.4, 0.9]);
        let shifted = w.with_phase_shift(&lambda.scale(-1.0));
        let x = [0.7, -0.6];
        let u = [0.6, -0.8];
        let k = Complex64::from_polar(1.0, -lambda.eval(u) / 0.8);
        for i in 0..2 {
            let lhs = flat_connection_rep(&lambda, &shifted, i, x);
            let rhs = k * flat_connection_rep(&Poly2::zero(), &w, i, x);
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }
}
