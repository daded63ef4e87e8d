//! Numerical cross-checks of the planar Landau problem in the `(alpha, phi)`
//! gauge family.

pub mod campaign;
pub mod classical;
pub mod error;
pub mod fockspace;
pub mod observable;
pub mod params;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod waves;

pub use error::{Error, Result};
pub use params::{GaugeChoice, PhysicalParams, Point};
pub use poly::{CPoly2, Poly2, PolyParseError};
