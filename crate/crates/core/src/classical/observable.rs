//! Polynomial phase-space functions and their Poisson brackets.
//!
//! Variables are ordered `(u1, u2, p1, p2)`. In the default reading the last
//! two slots hold the velocity momenta `p` and brackets carry the magnetic
//! term `{p_i, p_j} = qB eps_ij`. After [`to_canonical`] the same slots hold
//! the canonical momenta `pi` and [`PoissonEngine::canonical_bracket`]
//! applies.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::params::{GaugeChoice, PhysicalParams};
use crate::poly::Poly2;
use crate::{Error, Result};

pub const U1: usize = 0;
pub const U2: usize = 1;
pub const P1: usize = 2;
pub const P2: usize = 3;

/// Default bound on the total degree of bracket results.
pub const DEFAULT_PHASE_SPACE_DEGREE: u32 = 16;

#[derive(Clone, PartialEq, Default)]
pub struct PolyObservable {
    terms: BTreeMap<[u32; 4], f64>,
}

impl PolyObservable {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(exp: [u32; 4], c: f64) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, c);
        out
    }

    pub fn var(k: usize) -> Self {
        let mut exp = [0; 4];
        exp[k] = 1;
        Self::monomial(exp, 1.0)
    }

    pub fn add_term(&mut self, exp: [u32; 4], c: f64) {
        if c == 0.0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 4], f64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: [u32; 4]) -> f64 {
        self.terms.get(&exp).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(e, c * k);
        }
        out
    }

    pub fn deriv(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (mut e, c) in self.terms() {
            if e[k] == 0 {
                continue;
            }
            let n = e[k];
            e[k] -= 1;
            out.add_term(e, c * n as f64);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1.0), |acc, _| &acc * self)
    }

    pub fn eval(&self, z: [f64; 4]) -> f64 {
        self.terms()
            .map(|(e, c)| {
                c * e
                    .iter()
                    .zip(z)
                    .map(|(&k, v)| v.powi(k as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Lifts a configuration-space polynomial.
    pub fn from_position(f: &Poly2) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in f.terms() {
            out.add_term([i, j, 0, 0], c);
        }
        out
    }

    /// Replaces `p_i` by `p_i + shift_i(u)`.
    pub fn shift_momenta(&self, shift: &[Poly2; 2]) -> Self {
        let s1 = &Self::var(P1) + &Self::from_position(&shift[0]);
        let s2 = &Self::var(P2) + &Self::from_position(&shift[1]);
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            let base = Self::monomial([e[0], e[1], 0, 0], c);
            let term = &(&base * &s1.pow(e[2])) * &s2.pow(e[3]);
            out = &out + &term;
        }
        out
    }

    /// Drops coefficients whose magnitude is at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            if c.abs() > tol {
                out.add_term(e, c);
            }
        }
        out
    }
}

impl fmt::Debug for PolyObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Add for &PolyObservable {
    type Output = PolyObservable;
    fn add(self, rhs: &PolyObservable) -> PolyObservable {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &PolyObservable {
    type Output = PolyObservable;
    fn sub(self, rhs: &PolyObservable) -> PolyObservable {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &PolyObservable {
    type Output = PolyObservable;
    fn mul(self, rhs: &PolyObservable) -> PolyObservable {
        let mut out = PolyObservable::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], ca * cb);
            }
        }
        out
    }
}

impl Neg for &PolyObservable {
    type Output = PolyObservable;
    fn neg(self) -> PolyObservable {
        self.scale(-1.0)
    }
}

/// Named charges and coordinates as phase-space polynomials.
pub mod named {
    use super::*;

    pub fn energy(p: &PhysicalParams) -> PolyObservable {
        let k = 0.5 / p.mass();
        &PolyObservable::monomial([0, 0, 2, 0], k) + &PolyObservable::monomial([0, 0, 0, 2], k)
    }

    /// `T_i = p_i - qB eps_ij u_j`.
    pub fn translation(p: &PhysicalParams, i: usize) -> PolyObservable {
        let qb = p.qb();
        match i {
            0 => &PolyObservable::var(P1) - &PolyObservable::var(U2).scale(qb),
            1 => &PolyObservable::var(P2) + &PolyObservable::var(U1).scale(qb),
            _ => panic!("component index {i} out of range"),
        }
    }

    /// `L3 = eps_ij u_i p_j`.
    pub fn angular(_: &PhysicalParams) -> PolyObservable {
        &PolyObservable::monomial([1, 0, 0, 1], 1.0) - &PolyObservable::monomial([0, 1, 1, 0], 1.0)
    }

    /// `M3 = L3 + qB u^2 / 2`.
    pub fn rotation(p: &PhysicalParams) -> PolyObservable {
        let h = 0.5 * p.qb();
        let mut out = angular(p);
        out.add_term([2, 0, 0, 0], h);
        out.add_term([0, 2, 0, 0], h);
        out
    }

    /// Magnetic-centre coordinate relative to `x0`: `eps_ij T_j / (qB)`.
    pub fn centre(p: &PhysicalParams, i: usize) -> PolyObservable {
        match i {
            0 => translation(p, 1).scale(1.0 / p.qb()),
            1 => translation(p, 0).scale(-1.0 / p.qb()),
            _ => panic!("component index {i} out of range"),
        }
    }

    /// Canonical momentum `pi_i = p_i + q A_i(u)` in velocity coordinates.
    pub fn canonical_momentum(g: &GaugeChoice, p: &PhysicalParams, i: usize) -> PolyObservable {
        let a = &g.vector_potential_poly(p)[i];
        &PolyObservable::var(P1 + i) + &PolyObservable::from_position(a).scale(p.charge())
    }

    /// Canonical angular momentum `eps_ij u_i pi_j`.
    pub fn canonical_angular(g: &GaugeChoice, p: &PhysicalParams) -> PolyObservable {
        let pi1 = canonical_momentum(g, p, 0);
        let pi2 = canonical_momentum(g, p, 1);
        &(&PolyObservable::var(U1) * &pi2) - &(&PolyObservable::var(U2) * &pi1)
    }
}

/// Rewrites an observable of `(u, p)` as one of `(u, pi)` via `p = pi - qA`.
pub fn to_canonical(f: &PolyObservable, g: &GaugeChoice, p: &PhysicalParams) -> PolyObservable {
    let [a1, a2] = g.vector_potential_poly(p);
    let q = p.charge();
    f.shift_momenta(&[a1.scale(-q), a2.scale(-q)])
}

/// Inverse of [`to_canonical`].
pub fn from_canonical(f: &PolyObservable, g: &GaugeChoice, p: &PhysicalParams) -> PolyObservable {
    let [a1, a2] = g.vector_potential_poly(p);
    let q = p.charge();
    f.shift_momenta(&[a1.scale(q), a2.scale(q)])
}

/// Bracket evaluator with a degree bound on results.
#[derive(Clone, Copy, Debug)]
pub struct PoissonEngine {
    qb: f64,
    max_degree: u32,
}

impl PoissonEngine {
    pub fn new(p: &PhysicalParams) -> Self {
        Self {
            qb: p.qb(),
            max_degree: DEFAULT_PHASE_SPACE_DEGREE,
        }
    }

    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self
    }

    /// `{f, g}` in velocity coordinates, including `{p1, p2} = qB`.
    pub fn bracket(&self, f: &PolyObservable, g: &PolyObservable) -> Result<PolyObservable> {
        let mut out = self.symplectic(f, g);
        let cross = &(&f.deriv(P1) * &g.deriv(P2)) - &(&f.deriv(P2) * &g.deriv(P1));
        out = &out + &cross.scale(self.qb);
        self.bounded(out)
    }

    /// `{f, g}` in canonical coordinates `(u, pi)`.
    pub fn canonical_bracket(&self, f: &PolyObservable, g: &PolyObservable) -> Result<PolyObservable> {
        self.bounded(self.symplectic(f, g))
    }

    fn symplectic(&self, f: &PolyObservable, g: &PolyObservable) -> PolyObservable {
        let mut out = PolyObservable::zero();
        for i in 0..2 {
            out = &out + &(&f.deriv(U1 + i) * &g.deriv(P1 + i));
            out = &out - &(&f.deriv(P1 + i) * &g.deriv(U1 + i));
        }
        out
    }

    fn bounded(&self, f: PolyObservable) -> Result<PolyObservable> {
        let degree = f.degree();
        if degree > self.max_degree {
            return Err(Error::DegreeOverflow {
                degree,
                max: self.max_degree,
            });
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn params() -> PhysicalParams {
        PhysicalParams::new(1.5, -0.5, 2.0, 1.0).unwrap()
    }

    #[test]
    fn canonical_pair() {
        let e = PoissonEngine::new(&params());
        let b = e.bracket(&PolyObservable::var(U1), &PolyObservable::var(P1)).unwrap();
        assert_eq!(b, PolyObservable::constant(1.0));
        let b = e.bracket(&PolyObservable::var(P1), &PolyObservable::var(P2)).unwrap();
        assert_eq!(b, PolyObservable::constant(params().qb()));
    }

    #[test]
    fn translations_anticommute_to_minus_qb() {
        let p = params();
        let b = PoissonEngine::new(&p)
            .bracket(&translation(&p, 0), &translation(&p, 1))
            .unwrap();
        assert_eq!(b, PolyObservable::constant(-p.qb()));
    }

    #[test]
    fn charges_commute_with_energy() {
        let p = params();
        let e = PoissonEngine::new(&p);
        let h = energy(&p);
        for f in [translation(&p, 0), translation(&p, 1), rotation(&p)] {
            assert!(e.bracket(&f, &h).unwrap().is_zero());
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let p = params();
        let f = PolyObservable::monomial([3, 0, 0, 0], 1.0);
        let g = PolyObservable::monomial([0, 0, 3, 0], 1.0);
        let r = PoissonEngine::new(&p).with_max_degree(3).bracket(&f, &g);
        assert!(matches!(r, Err(Error::DegreeOverflow { degree: 4, max: 3 })));
    }

    #[test]
    fn canonical_round_trip() {
        let p = params();
        let g = GaugeChoice::new(0.5, [0.0, 0.0], Poly2::parse("u1^2*u2 - u2").unwrap()).unwrap();
        let f = &rotation(&p) * &energy(&p);
        let back = from_canonical(&to_canonical(&f, &g, &p), &g, &p);
        assert!((&back - &f).max_abs_coeff() < 1e-12);
    }

    #[test]
    fn canonical_momentum_becomes_a_coordinate() {
        let p = params();
        let g = GaugeChoice::new(-0.25, [0.0, 0.0], Poly2::parse("u1*u2^2").unwrap()).unwrap();
        for i in 0..2 {
            let pi = to_canonical(&canonical_momentum(&g, &p, i), &g, &p);
            assert!((&pi - &PolyObservable::var(P1 + i)).max_abs_coeff() < 1e-15);
        }
    }
}
