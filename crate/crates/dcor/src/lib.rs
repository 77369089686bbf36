//! Distance covariance and distance correlation.
//!
//! This crate computes the distance-dependence measures of energy
//! statistics in four settings:
//!
//! * **Sample statistics** ([`stats`]): squared distance covariance and
//!   distance correlation from data matrices, standard and affinely
//!   invariant, via the O(n²) double-centered distance kernels.
//! * **Exact Gaussian populations** ([`gaussian`]): closed-form values for
//!   subvectors of a multivariate normal law through a one-part zonal
//!   polynomial series, with matrix-argument hypergeometric and
//!   distance-variance closed forms, plus the small-dependence and
//!   high-dimension limit constants.
//! * **Time series** ([`timeseries`]): auto and cross distance correlation
//!   functions at integer lags for jointly stationary vector series.
//! * **Monte Carlo** ([`mc`]): reproducible multivariate normal sampling
//!   and replicate experiments that cross-check the sample statistics
//!   against the exact population values.
//!
//! Supporting modules provide the dense symmetric linear algebra
//! ([`linalg`]), the special functions ([`specfun`]) and CSV/JSON
//! ingestion ([`io`]). Everything is pure and deterministic: equal inputs
//! (including RNG seeds) give bit-identical outputs within one build.
//!
//! ```
//! use dcor::stats::{dcor_sample, DataMatrix};
//!
//! let x = DataMatrix::from_1d(&[1.0, 2.0, 3.0, 4.0]).unwrap();
//! let y = DataMatrix::from_1d(&[1.0, 4.0, 9.0, 16.0]).unwrap();
//! let result = dcor_sample(&x, &y).unwrap();
//! assert!(result.r > 0.9);
//! ```

// index-heavy numeric kernels read better with explicit loops
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod gaussian;
pub mod io;
pub mod linalg;
pub mod mc;
pub mod specfun;
pub mod stats;
pub mod timeseries;

pub use error::{Error, Result};
pub use gaussian::{GaussianSpec, PopulationResult};
pub use linalg::{EigDecomposition, Matrix, SymMatrix};
pub use mc::{McReport, RngSpec};
pub use specfun::SpectralLambda;
pub use stats::{DataMatrix, DcovResult, Variant};
pub use timeseries::{CorrelogramKind, CorrelogramResult, VectorSeries};
