//! Factored closed-form wave functions
//! `pre(u) * S(g(u)) * exp(-Q(u)) * exp(i P(u) / hbar)` with `u = x - x0`.

use num_complex::Complex64;

use super::special::{hermite_jet, laguerre_jet, SpecialKind};
use crate::params::Point;
use crate::poly::{CPoly2, CompiledPoly, Poly2};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Value, gradient and Hessian of a complex function at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub grad: [Complex64; 2],
    pub hess: [[Complex64; 2]; 2],
}

impl Jet {
    pub fn zero() -> Self {
        Self {
            value: ZERO,
            grad: [ZERO; 2],
            hess: [[ZERO; 2]; 2],
        }
    }

    /// Product rule.
    pub fn mul(&self, o: &Jet) -> Jet {
        let mut out = Jet::zero();
        out.value = self.value * o.value;
        for i in 0..2 {
            out.grad[i] = self.grad[i] * o.value + self.value * o.grad[i];
            for j in 0..2 {
                out.hess[i][j] = self.hess[i][j] * o.value
                    + self.grad[i] * o.grad[j]
                    + self.grad[j] * o.grad[i]
                    + self.value * o.hess[i][j];
            }
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> Jet {
        let mut out = *self;
        out.value *= k;
        for i in 0..2 {
            out.grad[i] *= k;
            for j in 0..2 {
                out.hess[i][j] *= k;
            }
        }
        out
    }
}

/// A real polynomial compiled together with its first and second
/// derivatives.
#[derive(Clone, Debug)]
struct RealJetPoly {
    f: CompiledPoly<f64>,
    d: [CompiledPoly<f64>; 2],
    dd: [CompiledPoly<f64>; 3],
}

impl RealJetPoly {
    fn new(p: &Poly2) -> Self {
        let d1 = p.deriv(0);
        let d2 = p.deriv(1);
        Self {
            f: p.compile(),
            dd: [d1.deriv(0).compile(), d1.deriv(1).compile(), d2.deriv(1).compile()],
            d: [d1.compile(), d2.compile()],
        }
    }

    /// `(f, [f_1, f_2], [f_11, f_12, f_22])`.
    fn eval(&self, u: [f64; 2]) -> (f64, [f64; 2], [f64; 3]) {
        (
            self.f.eval(u),
            [self.d[0].eval(u), self.d[1].eval(u)],
            [self.dd[0].eval(u), self.dd[1].eval(u), self.dd[2].eval(u)],
        )
    }
}

#[derive(Clone, Debug)]
struct ComplexJetPoly {
    f: CompiledPoly<Complex64>,
    d: [CompiledPoly<Complex64>; 2],
    dd: [CompiledPoly<Complex64>; 3],
}

impl ComplexJetPoly {
    fn new(p: &CPoly2) -> Self {
        let d1 = p.deriv(0);
        let d2 = p.deriv(1);
        Self {
            f: p.compile(),
            dd: [d1.deriv(0).compile(), d1.deriv(1).compile(), d2.deriv(1).compile()],
            d: [d1.compile(), d2.compile()],
        }
    }

    fn jet(&self, u: [f64; 2]) -> Jet {
        let h12 = self.dd[1].eval(u);
        Jet {
            value: self.f.eval(u),
            grad: [self.d[0].eval(u), self.d[1].eval(u)],
            hess: [[self.dd[0].eval(u), h12], [h12, self.dd[2].eval(u)]],
        }
    }
}

/// Optional one-dimensional special-function factor `S(g(u))`.
#[derive(Clone, Debug)]
pub struct SpecialFactor {
    pub kind: SpecialKind,
    pub arg: Poly2,
}

/// A closed-form wave function in shifted coordinates.
#[derive(Clone, Debug)]
pub struct WaveForm {
    x0: Point,
    hbar: f64,
    prefactor: CPoly2,
    gauss: Poly2,
    phase: Poly2,
    special: Option<SpecialFactor>,
    compiled: Compiled,
}

#[derive(Clone, Debug)]
struct Compiled {
    pre: ComplexJetPoly,
    gauss: RealJetPoly,
    phase: RealJetPoly,
    arg: Option<RealJetPoly>,
}

impl WaveForm {
    pub fn new(
        x0: Point,
        hbar: f64,
        prefactor: CPoly2,
        gauss: Poly2,
        phase: Poly2,
        special: Option<SpecialFactor>,
    ) -> Self {
        let compiled = Compiled {
            pre: ComplexJetPoly::new(&prefactor),
            gauss: RealJetPoly::new(&gauss),
            phase: RealJetPoly::new(&phase),
            arg: special.as_ref().map(|s| RealJetPoly::new(&s.arg)),
        };
        Self {
            x0,
            hbar,
            prefactor,
            gauss,
            phase,
            special,
            compiled,
        }
    }

    /// `exp(i k.u / hbar)`.
    pub fn plane_wave(x0: Point, hbar: f64, k: [f64; 2]) -> Self {
        let phase = Poly2::from_terms([((1, 0), k[0]), ((0, 1), k[1])]);
        Self::new(x0, hbar, CPoly2::constant(Complex64::new(1.0, 0.0)), Poly2::zero(), phase, None)
    }

    pub fn x0(&self) -> Point {
        self.x0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn prefactor(&self) -> &CPoly2 {
        &self.prefactor
    }

    pub fn gauss(&self) -> &Poly2 {
        &self.gauss
    }

    pub fn phase(&self) -> &Poly2 {
        &self.phase
    }

    pub fn special(&self) -> Option<&SpecialFactor> {
        self.special.as_ref()
    }

    /// The same state with `exp(i shift / hbar)` multiplied in.
    pub fn with_phase_shift(&self, shift: &Poly2) -> Self {
        Self::new(
            self.x0,
            self.hbar,
            self.prefactor.clone(),
            self.gauss.clone(),
            &self.phase + shift,
            self.special.clone(),
        )
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self::new(
            self.x0,
            self.hbar,
            self.prefactor.scale(k),
            self.gauss.clone(),
            self.phase.clone(),
            self.special.clone(),
        )
    }

    pub fn value(&self, x: Point) -> Complex64 {
        let u = [x[0] - self.x0[0], x[1] - self.x0[1]];
        let c = &self.compiled;
        let pre = c.pre.f.eval(u);
        let s = match (&self.special, &c.arg) {
            (Some(sp), Some(arg)) => super::special::special_eval(sp.kind, arg.f.eval(u)),
            _ => 1.0,
        };
        let g = (-c.gauss.f.eval(u)).exp();
        pre * (s * g) * Complex64::from_polar(1.0, c.phase.f.eval(u) / self.hbar)
    }

    pub fn gradient(&self, x: Point) -> [Complex64; 2] {
        self.jet(x).grad
    }

    /// Value, gradient and Hessian by the product rule over the factors.
    pub fn jet(&self, x: Point) -> Jet {
        let u = [x[0] - self.x0[0], x[1] - self.x0[1]];
        let c = &self.compiled;
        let mut out = c.pre.jet(u);
        if let (Some(sp), Some(arg)) = (&self.special, &c.arg) {
            let (g, dg, ddg) = arg.eval(u);
            let [s0, s1, s2] = match sp.kind {
                SpecialKind::Hermite(n) => hermite_jet(n, g),
                SpecialKind::Laguerre(n, m) => laguerre_jet(n, m, g),
            };
            out = out.mul(&real_chain(s0, s1, s2, dg, ddg));
        }
        let (q, dq, ddq) = c.gauss.eval(u);
        let e = (-q).exp();
        let gauss = Jet {
            value: re(e),
            grad: [re(-dq[0] * e), re(-dq[1] * e)],
            hess: [
                [re((dq[0] * dq[0] - ddq[0]) * e), re((dq[0] * dq[1] - ddq[1]) * e)],
                [re((dq[0] * dq[1] - ddq[1]) * e), re((dq[1] * dq[1] - ddq[2]) * e)],
            ],
        };
        out = out.mul(&gauss);
        let (ph, dp, ddp) = c.phase.eval(u);
        let h = self.hbar;
        let v = Complex64::from_polar(1.0, ph / h);
        let i = Complex64::new(0.0, 1.0);
        let hess = |a: usize, b: usize, k: usize| v * (i * ddp[k] / h - dp[a] * dp[b] / (h * h));
        let phase = Jet {
            value: v,
            grad: [v * i * (dp[0] / h), v * i * (dp[1] / h)],
            hess: [[hess(0, 0, 0), hess(0, 1, 1)], [hess(0, 1, 1), hess(1, 1, 2)]],
        };
        out.mul(&phase)
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Jet of `S(g(u))` from `S, S', S''` and the derivatives of `g`.
fn real_chain(s0: f64, s1: f64, s2: f64, dg: [f64; 2], ddg: [f64; 3]) -> Jet {
    let h = |a: usize, b: usize, k: usize| re(s2 * dg[a] * dg[b] + s1 * ddg[k]);
    Jet {
        value: re(s0),
        grad: [re(s1 * dg[0]), re(s1 * dg[1])],
        hess: [[h(0, 0, 0), h(0, 1, 1)], [h(0, 1, 1), h(1, 1, 2)]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> WaveForm {
        let pre = CPoly2::from_terms([((0, 0), Complex64::new(0.3, 0.1)), ((1, 1), Complex64::new(-0.2, 0.5))]);
        WaveForm::new(
            [0.2, -0.1],
            0.7,
            pre,
            Poly2::parse("0.4*u1^2 + 0.3*u2^2 + 0.1*u1*u2").unwrap(),
            Poly2::parse("u1^3 - 0.5*u1*u2 + 2*u2").unwrap(),
            Some(SpecialFactor {
                kind: SpecialKind::Laguerre(3, 2),
                arg: Poly2::parse("0.5*u1^2 + 0.5*u2^2").unwrap(),
            }),
        )
    }

    #[test]
    fn jet_matches_finite_differences() {
        let w = sample();
        let h = 1e-4;
        for x in [[0.3, 0.4], [-0.8, 1.1], [1.5, -0.3]] {
            let j = w.jet(x);
            assert!((j.value - w.value(x)).norm() < 1e-14);
            for a in 0..2 {
                let mut xp = x;
                let mut xm = x;
                xp[a] += h;
                xm[a] -= h;
                let fd = (w.value(xp) - w.value(xm)) / (2.0 * h);
                assert!((fd - j.grad[a]).norm() < 1e-6 * (1.0 + j.grad[a].norm()));
                let fd2 = (w.gradient(xp)[a] - w.gradient(xm)[a]) / (2.0 * h);
                assert!((fd2 - j.hess[a][a]).norm() < 1e-6 * (1.0 + j.hess[a][a].norm()));
            }
            assert_eq!(j.hess[0][1], j.hess[1][0]);
        }
    }

    #[test]
    fn phase_shift_multiplies_by_unit_phase() {
        let w = sample();
        let shift = Poly2::parse("0.3*u1*u2^2 - u1").unwrap();
        let shifted = w.with_phase_shift(&shift);
        let x = [0.5, -0.25];
        let u = [x[0] - 0.2, x[1] + 0.1];
        let k = Complex64::from_polar(1.0, shift.eval(u) / 0.7);
        assert!((shifted.value(x) - k * w.value(x)).norm() < 1e-15);
    }

    #[test]
    fn plane_wave_gradient() {
        let w = WaveForm::plane_wave([0.0, 0.0], 1.0, [2.0, -1.0]);
        let x = [0.3, 0.9];
        let g = w.gradient(x);
        let v = w.value(x);
        assert!((g[0] - Complex64::new(0.0, 2.0) * v).norm() < 1e-15);
        assert!((g[1] - Complex64::new(0.0, -1.0) * v).norm() < 1e-15);
    }
}
