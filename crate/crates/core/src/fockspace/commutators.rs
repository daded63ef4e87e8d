//! Commutator identities of the Landau algebra, checked on the interior of a
//! truncated basis.

use num_complex::Complex64;

use super::basis::{FockBasis, FockOperator};
use super::observables::build_observable;
use crate::observable::Observable;
use crate::params::{PhysicalParams, Point};
use crate::{Error, Result};

/// `max |[A, B] - expected|` over the interior with the given margin.
pub fn commutator_check(
    a: &FockOperator,
    b: &FockOperator,
    expected: &FockOperator,
    margin: usize,
) -> Result<f64> {
    let required = a.excursion() + b.excursion();
    if margin < required {
        return Err(Error::Truncation { required, margin });
    }
    Ok((&a.commutator(b) - expected).interior_max_abs(margin))
}

/// Outcome of one identity of the registry.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub deviation: f64,
    /// Set when the margin was too small for the operators involved; the
    /// deviation is then measured on the requested margin regardless.
    pub margin_too_small: bool,
}

/// All observables on one basis, with the shifted coordinates `u_i`.
struct Ops {
    basis: FockBasis,
    h: FockOperator,
    t: [FockOperator; 2],
    m3: FockOperator,
    p: [FockOperator; 2],
    l3: FockOperator,
    xc: [FockOperator; 2],
    x: [FockOperator; 2],
    u: [FockOperator; 2],
    id: FockOperator,
}

impl Ops {
    fn new(params: &PhysicalParams, x0: Point, basis: FockBasis) -> Self {
        let b = |o| build_observable(o, params, x0, basis);
        let id = FockOperator::identity(basis);
        let x = [b(Observable::X1), b(Observable::X2)];
        let u = [
            &x[0] - &id.scale_re(x0[0]),
            &x[1] - &id.scale_re(x0[1]),
        ];
        Self {
            basis,
            h: b(Observable::H),
            t: [b(Observable::T1), b(Observable::T2)],
            m3: b(Observable::M3),
            p: [b(Observable::P1), b(Observable::P2)],
            l3: b(Observable::L3),
            xc: [b(Observable::Xc1), b(Observable::Xc2)],
            x,
            u,
            id,
        }
    }

    fn zero(&self) -> FockOperator {
        FockOperator::zero(self.basis)
    }

    fn c_id(&self, k: Complex64) -> FockOperator {
        self.id.scale(k)
    }
}

fn eps(i: usize, j: usize) -> f64 {
    match (i, j) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// The other index of the pair `(0, 1)`.
fn other(i: usize) -> usize {
    1 - i
}

type Pair<'a> = (&'a FockOperator, &'a FockOperator, FockOperator);

/// Identifiers of the registry, in evaluation order.
pub const IDENTITY_IDS: [&str; 20] = [
    "[x_i,x_j]=0",
    "[x_i,p_j]=i*hbar*delta_ij",
    "[p_i,p_j]=i*hbar*qB*eps_ij",
    "[T_i,H]=0",
    "[M3,H]=0",
    "[T1,T2]=-i*hbar*qB",
    "[T_i,M3]=-i*hbar*eps_ij*T_j",
    "[xc_i,xc_j]=-i*hbar*eps_ij/(qB)",
    "[xc_i,H]=0",
    "[xc_i,p_j]=0",
    "[p_i,H]=i*s*hbar*omega*eps_ij*p_j",
    "[L3,M3]=0",
    "[L3,H]=-i*hbar*s*omega*(u.p+p.u)/2",
    "[x_i,T_j]=i*hbar*delta_ij",
    "[p_i,T_j]=0",
    "[u_i,M3]=-i*hbar*eps_ij*u_j",
    "[p_i,M3]=-i*hbar*eps_ij*p_j",
    "[T_i,L3]=-i*hbar*eps_ij*p_j",
    "[p_i,L3]=i*hbar*eps_ij*T_j-2i*hbar*eps_ij*p_j",
    "T1^2+T2^2-2mH-2qB*M3=0",
];

/// Runs the full registry. Each identity reports the largest deviation
/// over its index components.
pub fn run_identity_suite(
    params: &PhysicalParams,
    x0: Point,
    basis: FockBasis,
    margin: usize,
) -> Vec<IdentityCheck> {
    let o = Ops::new(params, x0, basis);
    let hbar = params.hbar();
    let qb = params.qb();
    let s = params.sign();
    let w = params.omega_c();
    let ih = |k: f64| Complex64::new(0.0, hbar * k);

    let mut out = Vec::with_capacity(IDENTITY_IDS.len());
    let mut record = |id: &'static str, pairs: Vec<Pair<'_>>| {
        let mut deviation = 0.0f64;
        let mut small = false;
        for (a, b, e) in pairs {
            match commutator_check(a, b, &e, margin) {
                Ok(d) => deviation = deviation.max(d),
                Err(_) => {
                    small = true;
                    deviation = deviation.max((&a.commutator(b) - &e).interior_max_abs(margin));
                }
            }
        }
        out.push(IdentityCheck {
            id,
            deviation,
            margin_too_small: small,
        });
    };
    let ij = [(0, 0), (0, 1), (1, 0), (1, 1)];

    record(
        IDENTITY_IDS[0],
        ij.iter().map(|&(i, j)| (&o.x[i], &o.x[j], o.zero())).collect(),
    );
    record(
        IDENTITY_IDS[1],
        ij.iter()
            .map(|&(i, j)| (&o.x[i], &o.p[j], o.c_id(ih(delta(i, j)))))
            .collect(),
    );
    record(
        IDENTITY_IDS[2],
        ij.iter()
            .map(|&(i, j)| (&o.p[i], &o.p[j], o.c_id(ih(qb * eps(i, j)))))
            .collect(),
    );
    record(
        IDENTITY_IDS[3],
        (0..2).map(|i| (&o.t[i], &o.h, o.zero())).collect(),
    );
    record(IDENTITY_IDS[4], vec![(&o.m3, &o.h, o.zero())]);
    record(IDENTITY_IDS[5], vec![(&o.t[0], &o.t[1], o.c_id(ih(-qb)))]);
    record(
        IDENTITY_IDS[6],
        (0..2)
            .map(|i| {
                let j = other(i);
                (&o.t[i], &o.m3, o.t[j].scale(ih(-eps(i, j))))
            })
            .collect(),
    );
    record(
        IDENTITY_IDS[7],
        ij.iter()
            .map(|&(i, j)| (&o.xc[i], &o.xc[j], o.c_id(ih(-eps(i, j) / qb))))
            .collect(),
    );
    record(
        IDENTITY_IDS[8],
        (0..2).map(|i| (&o.xc[i], &o.h, o.zero())).collect(),
    );
    record(
        IDENTITY_IDS[9],
        ij.iter().map(|&(i, j)| (&o.xc[i], &o.p[j], o.zero())).collect(),
    );
    record(
        IDENTITY_IDS[10],
        (0..2)
            .map(|i| {
                let j = other(i);
                (&o.p[i], &o.h, o.p[j].scale(ih(s * w * eps(i, j))))
            })
            .collect(),
    );
    record(IDENTITY_IDS[11], vec![(&o.l3, &o.m3, o.zero())]);
    let dilation = {
        let mut acc = o.zero();
        for i in 0..2 {
            acc = &acc + &(&o.u[i] * &o.p[i]);
            acc = &acc + &(&o.p[i] * &o.u[i]);
        }
        acc.scale(ih(-0.5 * s * w))
    };
    record(IDENTITY_IDS[12], vec![(&o.l3, &o.h, dilation)]);
    record(
        IDENTITY_IDS[13],
        ij.iter()
            .map(|&(i, j)| (&o.x[i], &o.t[j], o.c_id(ih(delta(i, j)))))
            .collect(),
    );
    record(
        IDENTITY_IDS[14],
        ij.iter().map(|&(i, j)| (&o.p[i], &o.t[j], o.zero())).collect(),
    );
    record(
        IDENTITY_IDS[15],
        (0..2)
            .map(|i| {
                let j = other(i);
                (&o.u[i], &o.m3, o.u[j].scale(ih(-eps(i, j))))
            })
            .collect(),
    );
    record(
        IDENTITY_IDS[16],
        (0..2)
            .map(|i| {
                let j = other(i);
                (&o.p[i], &o.m3, o.p[j].scale(ih(-eps(i, j))))
            })
            .collect(),
    );
    record(
        IDENTITY_IDS[17],
        (0..2)
            .map(|i| {
                let j = other(i);
                (&o.t[i], &o.l3, o.p[j].scale(ih(-eps(i, j))))
            })
            .collect(),
    );
    record(
        IDENTITY_IDS[18],
        (0..2)
            .map(|i| {
                let j = other(i);
                let e = &o.t[j].scale(ih(eps(i, j))) - &o.p[j].scale(ih(2.0 * eps(i, j)));
                (&o.p[i], &o.l3, e)
            })
            .collect(),
    );

    let relation = {
        let tt = &(&o.t[0] * &o.t[0]) + &(&o.t[1] * &o.t[1]);
        let rhs = &o.h.scale_re(2.0 * params.mass()) + &o.m3.scale_re(2.0 * qb);
        &tt - &rhs
    };
    out.push(IdentityCheck {
        id: IDENTITY_IDS[19],
        deviation: relation.interior_max_abs(margin),
        margin_too_small: margin < relation.excursion(),
    });
    out
}
