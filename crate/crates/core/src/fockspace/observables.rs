//! Observable matrices in the helicity Fock basis.

use num_complex::Complex64;

use super::basis::{ladder_matrix, FockBasis, FockOperator, LadderTerm};
use crate::observable::{GaugeVariant, Observable};
use crate::params::{GaugeChoice, PhysicalParams, Point};
use crate::poly::Poly2;
use crate::{Error, Result};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn im(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

/// Ladder expansion of each observable. `x0` enters only through `x_i` and
/// `xc_i`.
pub fn ladder_terms(name: Observable, p: &PhysicalParams, x0: Point) -> Vec<LadderTerm> {
    let hbar = p.hbar();
    let w = p.omega_c();
    let s = p.sign();
    let c = (0.5 * p.momentum_scale_sq()).sqrt();
    let l = p.magnetic_length() / std::f64::consts::SQRT_2;
    let t = |k: Complex64, e: [u32; 4]| LadderTerm::new(k, e);
    const ID: [u32; 4] = [0, 0, 0, 0];
    const CP: [u32; 4] = [1, 0, 0, 0];
    const AP: [u32; 4] = [0, 1, 0, 0];
    const CM: [u32; 4] = [0, 0, 1, 0];
    const AM: [u32; 4] = [0, 0, 0, 1];
    const NP: [u32; 4] = [1, 1, 0, 0];
    const NM: [u32; 4] = [0, 0, 1, 1];
    let u1 = vec![t(re(l), AP), t(re(l), AM), t(re(l), CP), t(re(l), CM)];
    let u2 = vec![
        t(im(s * l), AP),
        t(im(-s * l), AM),
        t(im(-s * l), CP),
        t(im(s * l), CM),
    ];
    let shifted = |mut terms: Vec<LadderTerm>, k: f64| {
        terms.push(t(re(k), ID));
        terms
    };
    let qb = p.qb();
    match name {
        Observable::H => vec![t(re(hbar * w), NM), t(re(0.5 * hbar * w), ID)],
        Observable::T1 => vec![t(im(c), CP), t(im(-c), AP)],
        Observable::T2 => vec![t(re(s * c), CP), t(re(s * c), AP)],
        Observable::M3 => vec![t(re(s * hbar), NP), t(re(-s * hbar), NM)],
        Observable::P1 => vec![t(im(c), CM), t(im(-c), AM)],
        Observable::P2 => vec![t(re(-s * c), CM), t(re(-s * c), AM)],
        Observable::L3 => {
            let k = -s * hbar;
            vec![
                t(re(2.0 * k), NM),
                t(re(k), ID),
                t(re(k), [1, 0, 1, 0]),
                t(re(k), [0, 1, 0, 1]),
            ]
        }
        Observable::Xc1 => shifted(
            vec![t(re(s * c / qb), CP), t(re(s * c / qb), AP)],
            x0[0],
        ),
        Observable::Xc2 => shifted(vec![t(im(-c / qb), CP), t(im(c / qb), AP)], x0[1]),
        Observable::X1 => shifted(u1, x0[0]),
        Observable::X2 => shifted(u2, x0[1]),
    }
}

/// Exact (untruncated) matrix elements of `name` on the basis.
pub fn build_observable(name: Observable, p: &PhysicalParams, x0: Point, b: FockBasis) -> FockOperator {
    ladder_matrix(b, &ladder_terms(name, p, x0))
}

/// Matrix of `f(x1 - x01, x2 - x02)`. Products are formed on a basis padded
/// by `deg f` so every returned entry is exact.
pub fn poly_operator(f: &Poly2, p: &PhysicalParams, b: FockBasis) -> Result<FockOperator> {
    let degree = f.degree() as usize;
    if degree > b.nmax() {
        return Err(Error::Truncation {
            required: degree,
            margin: b.nmax(),
        });
    }
    if f.is_zero() {
        return Ok(FockOperator::zero(b));
    }
    let big = FockBasis::new(b.nmax() + degree)?;
    let origin = [0.0, 0.0];
    let x1 = build_observable(Observable::X1, p, origin, big);
    let x2 = build_observable(Observable::X2, p, origin, big);
    let (max_i, max_j) = f
        .terms()
        .fold((0, 0), |(a, c), ((i, j), _)| (a.max(i), c.max(j)));
    let powers = |x: &FockOperator, n: u32| {
        let mut out = vec![FockOperator::identity(big)];
        for k in 1..=n as usize {
            let next = &out[k - 1] * x;
            out.push(next);
        }
        out
    };
    let p1 = powers(&x1, max_i);
    let p2 = powers(&x2, max_j);
    let mut acc = FockOperator::zero(big);
    for ((i, j), c) in f.terms() {
        let term = &p1[i as usize] * &p2[j as usize];
        acc = &acc + &term.scale_re(c);
    }
    Ok(acc.restrict(b).with_excursion(degree))
}

/// Position-space polynomial that turns a Noether charge into the
/// gauge-variant operator: `pi_i = T_i + extra`, `L3c = M3 + extra`.
pub fn gauge_variant_shift(which: GaugeVariant, g: &GaugeChoice, p: &PhysicalParams) -> (Observable, Poly2) {
    let qb = p.qb();
    let qphi = g.phi().scale(p.charge());
    let alpha = g.alpha();
    match which {
        GaugeVariant::Pi1 => {
            let mut extra = qphi.deriv(0);
            extra.add_term(0, 1, -0.5 * (alpha - 1.0) * qb);
            (Observable::T1, extra)
        }
        GaugeVariant::Pi2 => {
            let mut extra = qphi.deriv(1);
            extra.add_term(1, 0, -0.5 * (alpha + 1.0) * qb);
            (Observable::T2, extra)
        }
        GaugeVariant::L3c => {
            let mut extra = &(&Poly2::var(0) * &qphi.deriv(1)) - &(&Poly2::var(1) * &qphi.deriv(0));
            extra.add_term(2, 0, -0.5 * alpha * qb);
            extra.add_term(0, 2, 0.5 * alpha * qb);
            (Observable::M3, extra)
        }
    }
}

/// `pi[A]_i` or `L3c[A]` in gauge `g`, assembled from the invariant charge and
/// a position polynomial.
pub fn gauge_variant_matrix(
    which: GaugeVariant,
    g: &GaugeChoice,
    p: &PhysicalParams,
    b: FockBasis,
) -> Result<FockOperator> {
    let (base, extra) = gauge_variant_shift(which, g, p);
    let charge = build_observable(base, p, g.x0(), b);
    let shift = poly_operator(&extra, p, b)?;
    Ok(&charge + &shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (PhysicalParams, FockBasis) {
        (
            PhysicalParams::new(1.3, 0.7, -2.0, 0.9).unwrap(),
            FockBasis::new(8).unwrap(),
        )
    }

    #[test]
    fn hamiltonian_diagonal() {
        let (p, b) = setup();
        let h = build_observable(Observable::H, &p, [0.0, 0.0], b);
        for np in 0..=8 {
            for nm in 0..=8 {
                let e = h.element((np, nm), (np, nm));
                let expect = p.hbar() * p.omega_c() * (nm as f64 + 0.5);
                assert!((e.re - expect).abs() < 1e-14 && e.im == 0.0);
            }
        }
    }

    #[test]
    fn all_observables_hermitian() {
        let (p, b) = setup();
        for o in Observable::ALL {
            assert_eq!(build_observable(o, &p, [0.4, -0.2], b).hermiticity_defect(), 0.0, "{o}");
        }
    }

    #[test]
    fn translation_from_momentum_and_position() {
        let (p, b) = setup();
        let o = [0.0, 0.0];
        let t1 = build_observable(Observable::T1, &p, o, b);
        let p1 = build_observable(Observable::P1, &p, o, b);
        let x2 = build_observable(Observable::X2, &p, o, b);
        let d = &(&p1 - &x2.scale_re(p.qb())) - &t1;
        assert!(d.interior_max_abs(0) < 1e-13);
    }

    #[test]
    fn poly_operator_identity_and_vacuum() {
        let (p, b) = setup();
        let one = poly_operator(&Poly2::constant(1.0), &p, b).unwrap();
        assert_eq!(one, FockOperator::identity(b));
        let u1 = poly_operator(&Poly2::var(0), &p, b).unwrap();
        assert_eq!(u1.element((0, 0), (0, 0)), Complex64::new(0.0, 0.0));
        let r2 = poly_operator(&Poly2::parse("u1^2 + u2^2").unwrap(), &p, b).unwrap();
        let lam2 = p.magnetic_length().powi(2);
        assert!((r2.element((0, 0), (0, 0)) - re(2.0 * lam2)).norm() < 1e-14);
    }

    #[test]
    fn poly_operator_rejects_high_degree() {
        let p = PhysicalParams::natural();
        let b = FockBasis::new(2).unwrap();
        let r = poly_operator(&Poly2::parse("u1^3").unwrap(), &p, b);
        assert!(matches!(r, Err(Error::Truncation { required: 3, margin: 2 })));
    }

    #[test]
    fn symmetric_and_landau_gauge_coincidences() {
        let (p, b) = setup();
        let o = [0.0, 0.0];
        let l3c = gauge_variant_matrix(GaugeVariant::L3c, &GaugeChoice::symmetric(o), &p, b).unwrap();
        assert_eq!(l3c, build_observable(Observable::M3, &p, o, b));
        let pi1 = gauge_variant_matrix(GaugeVariant::Pi1, &GaugeChoice::first_landau(o), &p, b).unwrap();
        assert_eq!(pi1, build_observable(Observable::T1, &p, o, b));
        let pi2 = gauge_variant_matrix(GaugeVariant::Pi2, &GaugeChoice::second_landau(o), &p, b).unwrap();
        assert_eq!(pi2, build_observable(Observable::T2, &p, o, b));
    }
}
