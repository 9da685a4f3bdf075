//! Numerics for q-special functions on the q-linear lattice: q-series,
//! third Jackson q-Bessel functions, little q-Jacobi and q-Gegenbauer
//! polynomials, q-Hankel and q-Dunkl-type transforms, and the bilinear
//! kernel expansions built from them, all under a configurable
//! precision/truncation regime with certified identity suites.

pub mod context;
pub mod error;
pub mod lattice;
pub mod qbessel;
pub mod qcore;
pub mod qexpansion;
pub mod qortho;
pub mod qtransform;
pub mod report;
pub mod suites;

pub use context::{QContext, SeriesValue, TruncationPolicy};
pub use error::{QError, Result};
pub use lattice::{LatticeDomain, LatticeFunction, LatticePoint, Sign};
pub use report::Report;
pub use suites::{run_suite, SuiteConfig, SUITE_NAMES};
