//! Landau eigenfunctions in the `(alpha, phi)` gauge: the `|T1, E_n>` family
//! and the helicity Fock states `|n+, n->`.

use num_complex::Complex64;

use super::special::SpecialKind;
use super::waveform::{SpecialFactor, WaveForm};
use crate::params::{GaugeChoice, PhysicalParams, Point};
use crate::poly::{CPoly2, Poly2};

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `<x | T1, E_n>`: plane wave in `u1` with momentum `T1`, normalised
/// Hermite-Gaussian in `u2` centred at `-T1 / qB`.
pub fn psi_t1_form(g: &GaugeChoice, p: &PhysicalParams, t1: f64, n: u32) -> WaveForm {
    let hbar = p.hbar();
    let mw = p.mass() * p.omega_c();
    let shift = t1 / p.qb();
    let pre = (2.0 * std::f64::consts::PI * hbar).powf(-0.5) * (mw / (std::f64::consts::PI * hbar)).powf(0.25)
        / (2f64.powi(n as i32) * factorial(n)).sqrt();
    let k = (mw / hbar).sqrt();
    // (u2 + shift) as a polynomial
    let y = Poly2::from_terms([((0, 1), 1.0), ((0, 0), shift)]);
    let gauss = (&y * &y).scale(mw / (2.0 * hbar));
    let mut phase = g.phi().scale(p.charge());
    phase.add_term(1, 1, 0.5 * (1.0 - g.alpha()) * p.qb());
    phase.add_term(1, 0, t1);
    WaveForm::new(
        g.x0(),
        hbar,
        CPoly2::constant(Complex64::new(pre, 0.0)),
        gauss,
        phase,
        Some(SpecialFactor {
            kind: SpecialKind::Hermite(n),
            arg: y.scale(k),
        }),
    )
}

pub fn psi_t1(g: &GaugeChoice, p: &PhysicalParams, t1: f64, n: u32, x: Point) -> Complex64 {
    psi_t1_form(g, p, t1, n).value(x)
}

/// `<x | n+, n->` with the `(-1)^n` convention and gauge phase
/// `exp(i q phibar / hbar)`.
///
/// The angular factor `exp(i s l theta) v^|l|` is carried as the polynomial
/// `(kappa^(1/2) (u1 + i sigma u2))^|l|`, `sigma = sgn(s l)`, which equals it
/// everywhere including `u = 0`.
pub fn psi_fock_form(g: &GaugeChoice, p: &PhysicalParams, n_plus: u32, n_minus: u32) -> WaveForm {
    let hbar = p.hbar();
    let mw = p.mass() * p.omega_c();
    let kappa = mw / (2.0 * hbar);
    let n = n_plus.min(n_minus);
    let l = n_plus as i64 - n_minus as i64;
    let al = l.unsigned_abs() as u32;
    let sigma = if (p.sign() * l as f64) < 0.0 { -1.0 } else { 1.0 };
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = (mw / (2.0 * std::f64::consts::PI * hbar)).sqrt() * sign * (factorial(n) / factorial(n + al)).sqrt();
    let z = CPoly2::from_terms([
        ((1, 0), Complex64::new(kappa.sqrt(), 0.0)),
        ((0, 1), Complex64::new(0.0, sigma * kappa.sqrt())),
    ]);
    let pre = z.pow(al).scale(Complex64::new(norm, 0.0));
    let r2 = Poly2::from_terms([((2, 0), kappa), ((0, 2), kappa)]);
    WaveForm::new(
        g.x0(),
        hbar,
        pre,
        r2.scale(0.5),
        g.phi_bar(p.field()).scale(p.charge()),
        Some(SpecialFactor {
            kind: SpecialKind::Laguerre(n, al),
            arg: r2,
        }),
    )
}

pub fn psi_fock(g: &GaugeChoice, p: &PhysicalParams, n_plus: u32, n_minus: u32, x: Point) -> Complex64 {
    psi_fock_form(g, p, n_plus, n_minus).value(x)
}

/// `exp(i q delta / hbar)` at `x`, with `delta` in shifted coordinates about
/// `x0`.
pub fn gauge_phase(delta: &Poly2, q: f64, hbar: f64, x0: Point, x: Point) -> Complex64 {
    let u = [x[0] - x0[0], x[1] - x0[1]];
    Complex64::from_polar(1.0, q * delta.eval(u) / hbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::gauge_delta;

    #[test]
    fn vacuum_values() {
        let p = PhysicalParams::new(1.2, 0.9, -1.5, 0.8).unwrap();
        let g = GaugeChoice::symmetric([0.3, 0.1]);
        let mw = p.mass() * p.omega_c();
        let v = psi_fock(&g, &p, 0, 0, [0.3, 0.1]);
        assert!((v.re - (mw / (2.0 * std::f64::consts::PI * p.hbar())).sqrt()).abs() < 1e-15);
        assert_eq!(psi_fock(&g, &p, 1, 0, [0.3, 0.1]).norm(), 0.0);
        let t = psi_t1(&g, &p, 0.0, 0, [0.3, 0.1]);
        let pi = std::f64::consts::PI;
        let expect = (2.0 * pi * p.hbar()).powf(-0.5) * (mw / (pi * p.hbar())).powf(0.25);
        assert!((t.re - expect).abs() < 1e-15 && t.im == 0.0);
    }

    #[test]
    fn angular_factor_matches_polar_form() {
        let p = PhysicalParams::new(1.0, -1.3, 0.7, 1.1).unwrap();
        let g = GaugeChoice::symmetric([0.0, 0.0]);
        let kappa = p.mass() * p.omega_c() / (2.0 * p.hbar());
        for (np, nm) in [(3, 1), (1, 4), (2, 2), (5, 0)] {
            let x: [f64; 2] = [0.4, -0.9];
            let theta = x[1].atan2(x[0]);
            let v = (kappa * (x[0] * x[0] + x[1] * x[1])).sqrt();
            let n = np.min(nm);
            let l = np as i32 - nm as i32;
            let al = l.unsigned_abs();
            let mw = p.mass() * p.omega_c();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let norm = (mw / (2.0 * std::f64::consts::PI * p.hbar())).sqrt()
                * sign
                * (factorial(n) / factorial(n + al)).sqrt();
            let expect = Complex64::from_polar(1.0, p.sign() * l as f64 * theta)
                * norm
                * v.powi(al as i32)
                * (-0.5 * v * v).exp()
                * super::super::special::laguerre(n, al, v * v);
            let got = psi_fock(&g, &p, np, nm, x);
            assert!((got - expect).norm() < 1e-14, "{np},{nm}: {got} vs {expect}");
        }
    }

    #[test]
    fn gauge_covariance() {
        let p = PhysicalParams::new(1.0, 0.8, 1.4, 1.0).unwrap();
        let x0 = [0.2, -0.4];
        let g1 = GaugeChoice::new(0.37, x0, Poly2::parse("u1^2 - 0.3*u2").unwrap()).unwrap();
        let g2 = GaugeChoice::new(-1.0, x0, Poly2::parse("0.1*u1^3 + u1*u2").unwrap()).unwrap();
        let delta = gauge_delta(&g1, &g2, p.field()).unwrap();
        for x in [[0.1, 0.7], [-1.2, 0.3]] {
            let k = gauge_phase(&delta, p.charge(), p.hbar(), x0, x);
            assert!((k.norm() - 1.0).abs() < 1e-15);
            let a = psi_fock(&g2, &p, 2, 1, x);
            let b = k * psi_fock(&g1, &p, 2, 1, x);
            assert!((a - b).norm() < 1e-14);
            let a = psi_t1(&g2, &p, 0.6, 3, x);
            let b = k * psi_t1(&g1, &p, 0.6, 3, x);
            assert!((a - b).norm() < 1e-14);
        }
    }
}
