//! Two-sector helicity Fock basis `|n+, n->` truncated at `n+- <= Nmax`, and
//! operators on it.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockBasis {
    nmax: usize,
}

impl FockBasis {
    pub fn new(nmax: usize) -> Result<Self> {
        if nmax < 1 {
            return Err(Error::InvalidArgument("Nmax must be >= 1".into()));
        }
        Ok(Self { nmax })
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn dim(&self) -> usize {
        (self.nmax + 1) * (self.nmax + 1)
    }

    /// Flat index of `|n+, n->`.
    pub fn index(&self, n_plus: usize, n_minus: usize) -> usize {
        debug_assert!(n_plus <= self.nmax && n_minus <= self.nmax);
        n_plus * (self.nmax + 1) + n_minus
    }

    /// Flat index of `|n+, n->`, or `None` outside the truncation.
    pub fn try_index(&self, n_plus: i64, n_minus: i64) -> Option<usize> {
        let max = self.nmax as i64;
        if (0..=max).contains(&n_plus) && (0..=max).contains(&n_minus) {
            Some(self.index(n_plus as usize, n_minus as usize))
        } else {
            None
        }
    }

    /// `(n+, n-)` of a flat index.
    pub fn label(&self, index: usize) -> (usize, usize) {
        (index / (self.nmax + 1), index % (self.nmax + 1))
    }

    /// Flat index of the angular-basis state `|s hbar l, E_n>`.
    pub fn angular_index(&self, l: i64, n: i64) -> Option<usize> {
        if n < 0 || l < -n {
            return None;
        }
        self.try_index(n + l, n)
    }

    /// Indices with `n+- <= Nmax - margin`, in flat order.
    pub fn interior(&self, margin: usize) -> Vec<usize> {
        let Some(top) = self.nmax.checked_sub(margin) else {
            return Vec::new();
        };
        (0..self.dim())
            .filter(|&i| {
                let (a, b) = self.label(i);
                a <= top && b <= top
            })
            .collect()
    }
}

/// Complex matrix on a [`FockBasis`] together with the largest net ladder
/// step it takes in either sector.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    basis: FockBasis,
    matrix: CMatrix,
    excursion: usize,
}

impl FockOperator {
    pub fn new(basis: FockBasis, matrix: CMatrix, excursion: usize) -> Self {
        assert_eq!(matrix.nrows(), basis.dim(), "matrix does not match basis");
        assert_eq!(matrix.ncols(), basis.dim(), "matrix does not match basis");
        Self {
            basis,
            matrix,
            excursion,
        }
    }

    pub fn zero(basis: FockBasis) -> Self {
        Self::new(basis, CMatrix::zeros(basis.dim(), basis.dim()), 0)
    }

    pub fn identity(basis: FockBasis) -> Self {
        Self::new(basis, CMatrix::identity(basis.dim(), basis.dim()), 0)
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn excursion(&self) -> usize {
        self.excursion
    }

    pub fn with_excursion(mut self, excursion: usize) -> Self {
        self.excursion = excursion;
        self
    }

    /// `<n+, n-| O |m+, m->`.
    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        self.matrix[(self.basis.index(bra.0, bra.1), self.basis.index(ket.0, ket.1))]
    }

    /// `<s hbar l1, E_n1| O |s hbar l2, E_n2>`; `None` outside the truncation.
    pub fn angular_element(&self, l1: i64, n1: i64, l2: i64, n2: i64) -> Option<Complex64> {
        let i = self.basis.angular_index(l1, n1)?;
        let j = self.basis.angular_index(l2, n2)?;
        Some(self.matrix[(i, j)])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.basis, self.matrix.map(|z| z * k), self.excursion)
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.basis, self.matrix.adjoint(), self.excursion)
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest `|O_ij|` over interior rows and columns.
    pub fn interior_max_abs(&self, margin: usize) -> f64 {
        let idx = self.basis.interior(margin);
        let mut max = 0.0f64;
        for &i in &idx {
            for &j in &idx {
                max = max.max(self.matrix[(i, j)].norm());
            }
        }
        max
    }

    /// `max |O - O^dagger|` over the whole matrix.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let mut max = 0.0f64;
        for i in 0..n {
            for j in i..n {
                max = max.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        max
    }

    /// Restricts to the first `basis.dim()` sectors of a larger basis.
    pub(crate) fn restrict(&self, basis: FockBasis) -> Self {
        assert!(basis.nmax <= self.basis.nmax);
        let idx: Vec<usize> = (0..basis.dim())
            .map(|i| {
                let (a, b) = basis.label(i);
                self.basis.index(a, b)
            })
            .collect();
        let m = CMatrix::from_fn(basis.dim(), basis.dim(), |i, j| self.matrix[(idx[i], idx[j])]);
        Self::new(basis, m, self.excursion)
    }
}

/// Dense product that skips structural zeros of both factors.
fn sparse_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::zeros(n, b.ncols());
    for j in 0..b.ncols() {
        for k in 0..b.nrows() {
            let bkj = b[(k, j)];
            if bkj == ZERO {
                continue;
            }
            for i in 0..n {
                let aik = a[(i, k)];
                if aik != ZERO {
                    out[(i, j)] += aik * bkj;
                }
            }
        }
    }
    out
}

impl Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, rhs.basis, "operators live on different bases");
        FockOperator::new(
            self.basis,
            sparse_mul(&self.matrix, &rhs.matrix),
            self.excursion + rhs.excursion,
        )
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, rhs.basis, "operators live on different bases");
        FockOperator::new(
            self.basis,
            &self.matrix + &rhs.matrix,
            self.excursion.max(rhs.excursion),
        )
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, rhs.basis, "operators live on different bases");
        FockOperator::new(
            self.basis,
            &self.matrix - &rhs.matrix,
            self.excursion.max(rhs.excursion),
        )
    }
}

impl Neg for &FockOperator {
    type Output = FockOperator;
    fn neg(self) -> FockOperator {
        self.scale_re(-1.0)
    }
}

/// Normal-ordered ladder monomial `(a+^dag)^cp a+^ap (a-^dag)^cm a-^am`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderTerm {
    pub coeff: Complex64,
    pub exps: [u32; 4],
}

impl LadderTerm {
    pub fn new(coeff: Complex64, exps: [u32; 4]) -> Self {
        Self { coeff, exps }
    }

    fn step(&self) -> usize {
        let [cp, ap, cm, am] = self.exps;
        (cp as i64 - ap as i64)
            .unsigned_abs()
            .max((cm as i64 - am as i64).unsigned_abs()) as usize
    }
}

/// Amplitude of `(a^dag)^c a^k |n>`, landing on `n - k + c`. The factorial
/// ratios are multiplied as integers under a single square root, so number
/// operators come out exact.
fn sector_action(n: usize, create: u32, annihilate: u32) -> Option<(usize, f64)> {
    let k = annihilate as usize;
    if k > n {
        return None;
    }
    let base = n - k;
    let top = base + create as usize;
    let prod: u128 = ((base + 1)..=n).chain((base + 1)..=top).map(|j| j as u128).product();
    Some((top, (prod as f64).sqrt()))
}

/// Exact matrix of a sum of normal-ordered ladder monomials: every entry
/// equals the untruncated matrix element.
pub fn ladder_matrix(basis: FockBasis, terms: &[LadderTerm]) -> FockOperator {
    let dim = basis.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let (np, nm) = basis.label(col);
        for t in terms {
            let [cp, ap, cm, am] = t.exps;
            let Some((np2, a1)) = sector_action(np, cp, ap) else {
                continue;
            };
            let Some((nm2, a2)) = sector_action(nm, cm, am) else {
                continue;
            };
            if np2 > basis.nmax || nm2 > basis.nmax {
                continue;
            }
            m[(basis.index(np2, nm2), col)] += t.coeff * (a1 * a2);
        }
    }
    let excursion = terms.iter().map(LadderTerm::step).max().unwrap_or(0);
    FockOperator::new(basis, m, excursion)
}

/// The helicity ladder operators.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub a_plus: FockOperator,
    pub a_plus_dag: FockOperator,
    pub a_minus: FockOperator,
    pub a_minus_dag: FockOperator,
}

pub fn ladder_ops(basis: FockBasis) -> Ladder {
    let a_plus = ladder_matrix(basis, &[LadderTerm::new(ONE, [0, 1, 0, 0])]);
    let a_minus = ladder_matrix(basis, &[LadderTerm::new(ONE, [0, 0, 0, 1])]);
    Ladder {
        a_plus_dag: a_plus.adjoint(),
        a_minus_dag: a_minus.adjoint(),
        a_plus,
        a_minus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_map_is_bijective() {
        let b = FockBasis::new(5).unwrap();
        assert_eq!(b.dim(), 36);
        for i in 0..b.dim() {
            let (p, m) = b.label(i);
            assert_eq!(b.index(p, m), i);
        }
        assert_eq!(b.angular_index(-1, 1), Some(b.index(0, 1)));
        assert_eq!(b.angular_index(-2, 1), None);
    }

    #[test]
    fn ladder_actions() {
        let b = FockBasis::new(4).unwrap();
        let l = ladder_ops(b);
        assert_eq!(l.a_plus_dag.element((1, 0), (0, 0)), ONE);
        let v = l.a_minus.element((0, 2), (0, 3));
        assert!((v.re - 3f64.sqrt()).abs() < 1e-15 && v.im == 0.0);
        assert_eq!(l.a_plus.excursion(), 1);
    }

    #[test]
    fn canonical_commutator_on_interior() {
        let b = FockBasis::new(6).unwrap();
        let l = ladder_ops(b);
        for (a, ad) in [(&l.a_plus, &l.a_plus_dag), (&l.a_minus, &l.a_minus_dag)] {
            let c = &a.commutator(ad) - &FockOperator::identity(b);
            assert!(c.interior_max_abs(1) < 1e-14);
            assert!(c.interior_max_abs(0) > 1.0);
        }
    }

    #[test]
    fn rejects_tiny_basis() {
        assert!(FockBasis::new(0).is_err());
    }
}
