//! Tensor-product Gauss-Hermite and Simpson quadrature for Gaussian-weighted
//! integrands, with compensated fixed-order summation.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::params::Point;
use crate::waves::diffop::{apply_coeffs, DiffOpSpec};
use crate::waves::waveform::{Jet, WaveForm};
use crate::{Error, Result};

/// Boundary-to-peak ratio above which an integrand counts as not contained.
pub const SUPPORT_RATIO: f64 = 1e-12;
/// Default node count per axis.
pub const DEFAULT_NODES: usize = 80;
const MAX_NODES: usize = 512;
/// Half-width of the Simpson window in units of the scale.
pub const SIMPSON_HALF_WIDTH: f64 = 12.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    #[serde(rename = "gh")]
    GaussHermite,
    Simpson,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::GaussHermite => "gh",
            Scheme::Simpson => "simpson",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gh" | "gauss-hermite" | "gauss_hermite" => Ok(Scheme::GaussHermite),
            "simpson" | "uniform_simpson" => Ok(Scheme::Simpson),
            other => Err(Error::InvalidArgument(format!("unknown quadrature scheme `{other}`"))),
        }
    }
}

/// One-dimensional rule: `int f(x) dx ~ sum w_i f(x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    /// `k`-point Gauss-Hermite rule for `int f(x) dx` with `x = centre + scale t`;
    /// the Gaussian weight is folded back into the weights.
    pub fn gauss_hermite(k: usize, centre: f64, scale: f64) -> Result<Self> {
        check_nodes(k)?;
        let (t, w) = hermite_nodes(k);
        Ok(Self {
            nodes: t.iter().map(|t| centre + scale * t).collect(),
            weights: w.iter().map(|w| w * scale).collect(),
        })
    }

    /// Composite Simpson rule on `[centre - half, centre + half]`; an even `n`
    /// is bumped to the next odd count.
    pub fn simpson(n: usize, centre: f64, half: f64) -> Result<Self> {
        check_nodes(n)?;
        let n = n | 1;
        let h = 2.0 * half / (n - 1) as f64;
        let nodes = (0..n).map(|i| centre - half + h * i as f64).collect();
        let weights = (0..n)
            .map(|i| {
                let k = if i == 0 || i == n - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                k * h / 3.0
            })
            .collect();
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn check_nodes(k: usize) -> Result<()> {
    if !(3..=MAX_NODES).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "node count must lie in 3..={MAX_NODES}, got {k}"
        )));
    }
    Ok(())
}

/// Nodes `t_i` and weights `W_i = w_i exp(t_i^2)` of the `k`-point
/// Gauss-Hermite rule, ascending.
fn hermite_nodes(k: usize) -> (Vec<f64>, Vec<f64>) {
    let n = k as f64;
    let mut roots = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let mut z = 0.0f64;
    for i in 0..k.div_ceil(2) {
        z = match i {
            0 => (2.0 * n + 1.0).sqrt() - 1.85575 * (2.0 * n + 1.0).powf(-0.16667),
            1 => z - 1.14 * n.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * roots[0],
            3 => 1.91 * z - 0.91 * roots[1],
            _ => 2.0 * z - roots[i - 2],
        };
        for _ in 0..200 {
            let (pk, pk1) = hermite_pair(k, z);
            // psi_k' = sqrt(2k) psi_{k-1} - z psi_k
            let step = pk / ((2.0 * n).sqrt() * pk1 - z * pk);
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        roots[i] = z;
        roots[k - 1 - i] = -z;
        let psi = hermite_pair(k, z).1;
        let w = 1.0 / (n * psi * psi);
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    roots.reverse();
    weights.reverse();
    (roots, weights)
}

/// Orthonormal Hermite functions `(psi_k(z), psi_{k-1}(z))`. Carrying the
/// Gaussian factor keeps the recurrence in range for large `k`.
fn hermite_pair(k: usize, z: f64) -> (f64, f64) {
    let mut p1 = std::f64::consts::PI.powf(-0.25) * (-0.5 * z * z).exp();
    let mut p2 = 0.0;
    for j in 1..=k {
        let p3 = p2;
        p2 = p1;
        p1 = z * (2.0 / j as f64).sqrt() * p2 - ((j - 1) as f64 / j as f64).sqrt() * p3;
    }
    (p1, p2)
}

/// Scheme, node count, centre and per-axis scale of a grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub scheme: Scheme,
    pub nodes: usize,
    pub centre: Point,
    pub scale: [f64; 2],
}

impl GridSpec {
    pub fn gauss_hermite(nodes: usize, centre: Point, scale: f64) -> Self {
        Self {
            scheme: Scheme::GaussHermite,
            nodes,
            centre,
            scale: [scale, scale],
        }
    }

    pub fn simpson(nodes: usize, centre: Point, scale: f64) -> Self {
        Self {
            scheme: Scheme::Simpson,
            nodes,
            centre,
            scale: [scale, scale],
        }
    }

    /// Node count of the companion rule used for the error estimate.
    pub fn coarse_nodes(&self) -> usize {
        match self.scheme {
            Scheme::GaussHermite => (self.nodes / 2).max(3),
            Scheme::Simpson => ((self.nodes | 1) - 1) / 2 + 1,
        }
    }

    pub fn rule(&self, axis: usize, nodes: usize) -> Result<Rule> {
        match self.scheme {
            Scheme::GaussHermite => Rule::gauss_hermite(nodes, self.centre[axis], self.scale[axis]),
            Scheme::Simpson => Rule::simpson(nodes.max(3), self.centre[axis], SIMPSON_HALF_WIDTH * self.scale[axis]),
        }
    }
}

/// Value of a quadrature and `|Q_k - Q_{k/2}|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Neumaier-compensated sum of a complex sequence, in order.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: [f64; 2],
    comp: [f64; 2],
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        for (k, x) in [z.re, z.im].into_iter().enumerate() {
            let t = self.sum[k] + x;
            if self.sum[k].abs() >= x.abs() {
                self.comp[k] += (self.sum[k] - t) + x;
            } else {
                self.comp[k] += (x - t) + self.sum[k];
            }
            self.sum[k] = t;
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.sum[0] + self.comp[0], self.sum[1] + self.comp[1])
    }
}

/// A tensor grid: nodes in row-major order (axis 0 outer).
#[derive(Clone, Debug)]
struct Tensor {
    rules: [Rule; 2],
}

impl Tensor {
    fn n1(&self) -> usize {
        self.rules[1].len()
    }

    fn len(&self) -> usize {
        self.rules[0].len() * self.rules[1].len()
    }

    fn point(&self, idx: usize) -> Point {
        let n1 = self.n1();
        [self.rules[0].nodes[idx / n1], self.rules[1].nodes[idx % n1]]
    }

    fn points(&self) -> Vec<Point> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    fn is_boundary(&self, idx: usize) -> bool {
        let n1 = self.n1();
        let (i, j) = (idx / n1, idx % n1);
        i == 0 || j == 0 || i + 1 == self.rules[0].len() || j + 1 == n1
    }

    /// `sum w f` with rows in parallel and a fixed-order reduction; also
    /// reports the boundary-to-peak ratio of `|f|`.
    fn sum(&self, f: &[Complex64]) -> (Complex64, f64) {
        let n1 = self.n1();
        let w0 = &self.rules[0].weights;
        let w1 = &self.rules[1].weights;
        let rows: Vec<(Complex64, f64, f64)> = f
            .par_chunks(n1)
            .enumerate()
            .map(|(i, row)| {
                let mut acc = CompensatedSum::default();
                let mut peak = 0.0f64;
                let mut edge = 0.0f64;
                for (j, v) in row.iter().enumerate() {
                    acc.add(v * w1[j]);
                    let a = v.norm();
                    peak = peak.max(a);
                    if self.is_boundary(i * n1 + j) {
                        edge = edge.max(a);
                    }
                }
                (acc.value() * w0[i], peak, edge)
            })
            .collect();
        let mut acc = CompensatedSum::default();
        let mut peak = 0.0f64;
        let mut edge = 0.0f64;
        for (v, p, e) in rows {
            acc.add(v);
            peak = peak.max(p);
            edge = edge.max(e);
        }
        let ratio = if peak > 0.0 { edge / peak } else { 0.0 };
        (acc.value(), ratio)
    }
}

/// A grid together with its coarse companion.
#[derive(Clone, Debug)]
pub struct Grid2 {
    spec: GridSpec,
    fine: Tensor,
    coarse: Tensor,
}

/// Values of a function on both grids.
#[derive(Clone, Debug)]
pub struct Field {
    fine: Vec<Complex64>,
    coarse: Vec<Complex64>,
}

/// Jets of a state on both grids.
#[derive(Clone, Debug)]
pub struct JetField {
    fine: Vec<Jet>,
    coarse: Vec<Jet>,
}

impl JetField {
    pub fn values(&self) -> Field {
        Field {
            fine: self.fine.iter().map(|j| j.value).collect(),
            coarse: self.coarse.iter().map(|j| j.value).collect(),
        }
    }
}

/// Coefficient values of an operator on both grids.
#[derive(Clone, Debug)]
pub struct OpField {
    fine: Vec<[Complex64; 6]>,
    coarse: Vec<[Complex64; 6]>,
}

impl Grid2 {
    pub fn new(spec: GridSpec) -> Result<Self> {
        let coarse_n = spec.coarse_nodes();
        Ok(Self {
            spec,
            fine: Tensor {
                rules: [spec.rule(0, spec.nodes)?, spec.rule(1, spec.nodes)?],
            },
            coarse: Tensor {
                rules: [spec.rule(0, coarse_n)?, spec.rule(1, coarse_n)?],
            },
        })
    }

    /// Default Gauss-Hermite grid about `centre` at scale `scale`.
    pub fn gauss_hermite(nodes: usize, centre: Point, scale: f64) -> Result<Self> {
        Self::new(GridSpec::gauss_hermite(nodes, centre, scale))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    /// Fine-grid nodes, row-major.
    pub fn points(&self) -> Vec<Point> {
        self.fine.points()
    }

    pub fn sample<F>(&self, f: F) -> Field
    where
        F: Fn(Point) -> Complex64 + Sync,
    {
        let eval = |t: &Tensor| t.points().into_par_iter().map(&f).collect();
        Field {
            fine: eval(&self.fine),
            coarse: eval(&self.coarse),
        }
    }

    pub fn sample_state(&self, psi: &WaveForm) -> JetField {
        let eval = |t: &Tensor| t.points().into_par_iter().map(|x| psi.jet(x)).collect();
        JetField {
            fine: eval(&self.fine),
            coarse: eval(&self.coarse),
        }
    }

    pub fn sample_op(&self, op: &DiffOpSpec) -> OpField {
        let c = op.compile();
        let eval = |t: &Tensor| t.points().into_par_iter().map(|x| c.coeffs_at(x)).collect();
        OpField {
            fine: eval(&self.fine),
            coarse: eval(&self.coarse),
        }
    }

    /// `op psi` on the grid nodes.
    pub fn apply(&self, op: &OpField, psi: &JetField) -> Field {
        let go = |k: &[[Complex64; 6]], j: &[Jet]| {
            k.par_iter().zip(j.par_iter()).map(|(k, j)| apply_coeffs(k, j)).collect()
        };
        Field {
            fine: go(&op.fine, &psi.fine),
            coarse: go(&op.coarse, &psi.coarse),
        }
    }

    /// `int f`, with the support check on the fine grid.
    pub fn integrate(&self, f: &Field) -> Result<QuadResult> {
        let (fine, ratio) = self.fine.sum(&f.fine);
        if ratio > SUPPORT_RATIO {
            return Err(Error::SupportOverflow { ratio });
        }
        let (coarse, _) = self.coarse.sum(&f.coarse);
        Ok(QuadResult {
            value: fine,
            error_estimate: (fine - coarse).norm(),
        })
    }

    /// `int conj(bra) ket`.
    pub fn braket(&self, bra: &Field, ket: &Field) -> Result<QuadResult> {
        let prod = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).map(|(a, b)| a.conj() * b).collect();
        self.integrate(&Field {
            fine: prod(&bra.fine, &ket.fine),
            coarse: prod(&bra.coarse, &ket.coarse),
        })
    }
}

/// `<psi1 | psi2>`.
pub fn inner_product(psi1: &WaveForm, psi2: &WaveForm, grid: &Grid2) -> Result<QuadResult> {
    let a = grid.sample(|x| psi1.value(x));
    let b = grid.sample(|x| psi2.value(x));
    grid.braket(&a, &b)
}

/// `<psi1 | op | psi2>` with analytic derivatives of `psi2`.
pub fn matrix_element(psi1: &WaveForm, op: &DiffOpSpec, psi2: &WaveForm, grid: &Grid2) -> Result<QuadResult> {
    let a = grid.sample(|x| psi1.value(x));
    let k = grid.apply(&grid.sample_op(op), &grid.sample_state(psi2));
    grid.braket(&a, &k)
}

/// One-dimensional quadrature of `f` with the companion-rule error estimate.
pub fn line_integral<F>(f: F, scheme: Scheme, nodes: usize, centre: f64, scale: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let spec = GridSpec {
        scheme,
        nodes,
        centre: [centre, 0.0],
        scale: [scale, scale],
    };
    let run = |rule: &Rule| {
        let mut acc = CompensatedSum::default();
        let mut peak = 0.0f64;
        let mut edge = 0.0f64;
        let last = rule.len() - 1;
        for (i, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            let v = f(x);
            acc.add(v * w);
            peak = peak.max(v.norm());
            if i == 0 || i == last {
                edge = edge.max(v.norm());
            }
        }
        (acc.value(), if peak > 0.0 { edge / peak } else { 0.0 })
    };
    let (fine, ratio) = run(&spec.rule(0, nodes)?);
    if ratio > SUPPORT_RATIO {
        return Err(Error::SupportOverflow { ratio });
    }
    let (coarse, _) = run(&spec.rule(0, spec.coarse_nodes())?);
    Ok(QuadResult {
        value: fine,
        error_estimate: (fine - coarse).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integral() {
        let r = line_integral(|t| Complex64::new((-t * t).exp(), 0.0), Scheme::GaussHermite, 20, 0.0, 1.0).unwrap();
        assert!((r.value.re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        let r = line_integral(|t| Complex64::new((-t * t).exp(), 0.0), Scheme::Simpson, 201, 0.0, 0.5).unwrap();
        assert!((r.value.re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hermite_rule_moments() {
        for k in [3usize, 10, 80, 200] {
            let (t, w) = hermite_nodes(k);
            assert!(t.windows(2).all(|p| p[0] < p[1]));
            // int t^2 exp(-t^2) = sqrt(pi)/2
            let m2: f64 = t.iter().zip(&w).map(|(t, w)| w * t * t * (-t * t).exp()).sum();
            assert!((m2 - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12, "k={k}: {m2}");
        }
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        for z in [1e16, 1.0, -1e16, 1.0] {
            s.add(Complex64::new(z, -z));
        }
        assert_eq!(s.value(), Complex64::new(2.0, -2.0));
    }

    #[test]
    fn support_overflow_detected() {
        let r = line_integral(|_| Complex64::new(1.0, 0.0), Scheme::Simpson, 11, 0.0, 1.0);
        assert!(matches!(r, Err(Error::SupportOverflow { .. })));
    }

    #[test]
    fn rejects_bad_node_counts() {
        assert!(Rule::gauss_hermite(2, 0.0, 1.0).is_err());
        assert!(Grid2::gauss_hermite(1000, [0.0, 0.0], 1.0).is_err());
    }
}
