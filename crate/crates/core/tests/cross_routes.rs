//! Fock matrices, closed forms and position-space quadrature against each
//! other.

use landau_core::fockspace::{build_observable, change_of_basis_full, table2_element, FockBasis};
use landau_core::observable::Observable;
use landau_core::quadrature::{inner_product, matrix_element, Grid2};
use landau_core::waves::{position_op, psi_fock_form, psi_t1_form};
use landau_core::{GaugeChoice, PhysicalParams, Poly2};

fn params() -> Vec<PhysicalParams> {
    vec![
        PhysicalParams::natural(),
        PhysicalParams::new(1.3, -0.7, 1.1, 0.6).unwrap(),
    ]
}

#[test]
fn quadrature_matches_fock_matrices() {
    let x0 = [0.3, -0.2];
    for p in params() {
        let g = GaugeChoice::new(0.37, x0, Poly2::parse("0.4*u1^2 - 0.2*u1*u2 + 0.1*u2^3").unwrap()).unwrap();
        let grid = Grid2::gauss_hermite(60, x0, p.magnetic_length()).unwrap();
        let b = FockBasis::new(6).unwrap();
        let states = [(0u32, 0u32), (1, 0), (0, 1), (2, 1), (1, 2)];
        for o in Observable::ALL {
            let op = position_op(o, &g, &p);
            let m = build_observable(o, &p, x0, b);
            for &(a1, a2) in &states {
                for &(b1, b2) in &states {
                    let bra = psi_fock_form(&g, &p, a1, a2);
                    let ket = psi_fock_form(&g, &p, b1, b2);
                    let q = matrix_element(&bra, &op, &ket, &grid).unwrap().value;
                    let f = m.element((a1 as usize, a2 as usize), (b1 as usize, b2 as usize));
                    assert!((q - f).norm() < 1e-9, "{o} <{a1},{a2}|.|{b1},{b2}>: quad {q} fock {f}");
                }
            }
        }
    }
}

#[test]
fn closed_forms_match_fock_interior() {
    for p in params() {
        let b = FockBasis::new(14).unwrap();
        for o in Observable::TABULATED.into_iter().filter(|o| *o != Observable::H) {
            let m = build_observable(o, &p, [0.0, 0.0], b);
            for n1 in 0..=6i64 {
                for l1 in -n1..=6 {
                    for n2 in 0..=6i64 {
                        for l2 in -n2..=6 {
                            let t = table2_element(o, l1, n1, l2, n2, &p).unwrap().value;
                            let f = m
                                .angular_element(l1, n1, l2, n2)
                                .unwrap();
                            assert!((t - f).norm() < 1e-12, "{o} ({l1},{n1};{l2},{n2}): {t} vs {f}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn change_of_basis_matches_overlaps() {
    let x0 = [0.1, 0.2];
    for p in params() {
        let g = GaugeChoice::new(-0.4, x0, Poly2::parse("0.3*u1*u2 - u2^2").unwrap()).unwrap();
        // The product decays only as exp(-u^2 / 4 lambda^2) along x1.
        let grid = Grid2::gauss_hermite(80, x0, std::f64::consts::SQRT_2 * p.magnetic_length()).unwrap();
        let k = p.momentum_scale_sq().sqrt();
        for t in [-1.2 * k, 0.0, 0.5 * k] {
            for nm in 0..3u32 {
                let ket = psi_t1_form(&g, &p, t, nm);
                for np in 0..=8u32 {
                    let bra = psi_fock_form(&g, &p, np, nm);
                    let q = inner_product(&bra, &ket, &grid).unwrap().value;
                    let c = change_of_basis_full(np, nm, t, &p);
                    assert!((q - c).norm() < 1e-8, "n+={np} n-={nm} T1={t}: quad {q} closed {c}");
                    // other levels are orthogonal
                    let other = psi_fock_form(&g, &p, np, nm + 1);
                    assert!(inner_product(&other, &ket, &grid).unwrap().value.norm() < 1e-9);
                }
            }
        }
    }
}
