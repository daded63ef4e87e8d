//! Verification campaigns behind the CLI subcommands.

pub mod algebra;
pub mod basis_change;
pub mod classical;
pub mod gauge_scan;
pub mod heisenberg;
pub mod tables;

use std::path::Path;

use crate::params::{GaugeChoice, PhysicalParams};
use crate::quadrature::{GridSpec, Scheme, DEFAULT_NODES};
use crate::report::Settings;
use crate::Result;

pub use algebra::run_verify_algebra;
pub use basis_change::run_basis_change;
pub use classical::{run_classical_sim, ClassicalOptions};
pub use gauge_scan::run_gauge_scan;
pub use heisenberg::run_heisenberg_demo;
pub use tables::run_reproduce_tables;

/// Default tolerance of exact algebraic comparisons.
pub const TOL_ALGEBRA: f64 = 1e-12;
/// Default tolerance of quadrature cross-checks.
pub const TOL_QUADRATURE: f64 = 1e-8;
/// Default relative tolerance of classical charge drift.
pub const TOL_DRIFT: f64 = 1e-8;

/// Inputs shared by all campaigns.
#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub params: PhysicalParams,
    pub gauge: GaugeChoice,
    pub nmax: usize,
    pub margin: usize,
    pub grid: usize,
    pub scheme: Scheme,
    /// Overrides the campaign's default tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            params: PhysicalParams::natural(),
            gauge: GaugeChoice::symmetric([0.0, 0.0]),
            nmax: 16,
            margin: 3,
            grid: DEFAULT_NODES,
            scheme: Scheme::GaussHermite,
            tol: None,
            seed: 0,
        }
    }
}

impl CampaignConfig {
    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    /// Grid about `x0` at scale `factor * lambda`.
    pub fn grid_spec(&self, factor: f64) -> GridSpec {
        GridSpec {
            scheme: self.scheme,
            nodes: self.grid,
            centre: self.gauge.x0(),
            scale: [factor * self.params.magnetic_length(); 2],
        }
    }

    pub fn settings(&self) -> Settings {
        Settings {
            nmax: Some(self.nmax),
            margin: Some(self.margin),
            grid: Some(self.grid),
            scheme: Some(self.scheme),
            seed: Some(self.seed),
        }
    }
}

/// Rows destined for a CSV file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Samples `f` on a uniform `n x n` window of half-width `half` about `x0`
/// as `(x1, x2, re, im)` rows.
pub fn dump_grid<F>(x0: [f64; 2], half: f64, n: usize, f: F) -> CsvTable
where
    F: Fn([f64; 2]) -> num_complex::Complex64,
{
    let mut t = CsvTable::new(&["x1", "x2", "re", "im"]);
    let h = 2.0 * half / (n.max(2) - 1) as f64;
    for i in 0..n {
        for j in 0..n {
            let x = [x0[0] - half + h * i as f64, x0[1] - half + h * j as f64];
            let v = f(x);
            t.push([x[0], x[1], v.re, v.im]);
        }
    }
    t
}
