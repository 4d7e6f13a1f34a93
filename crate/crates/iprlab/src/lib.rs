//! Spectral localization statistics on random regular graphs.
//!
//! The crate diagonalizes graph Laplacians `L = z·I − A` of z-regular graphs, measures the
//! inverse participation ratio (IPR) of every eigenvector, and cross-checks the ensemble
//! statistics against exact sphere averages computed three independent ways: closed-form
//! rationals, exact monomial expansion over the rotated sphere, and Monte-Carlo sampling of
//! the subsphere orthogonal to the constant vector.
//!
//! Module map:
//! - [`graphgen`]: random z-regular graphs (pairing model) and exhaustive isomorph-free
//!   enumeration of small connected regular graphs.
//! - [`spectra`]: dense Laplacian eigendecomposition (Householder + implicit-shift QL) and
//!   Kesten-McKay density comparisons.
//! - [`iprstats`]: per-mode IPR, per-graph and ensemble moments, histograms, Gaussian fits,
//!   localized-mode detection.
//! - [`sphere`]: exact monomial sphere integrals, the rotation matrix aligning the constant
//!   vector with a coordinate axis, closed-form moment formulas, and subsphere Monte Carlo.
//! - [`harness`]: run configuration, deterministic ensemble orchestration, CSV/manifest
//!   emission, figure data, and the analytic verification report.

pub mod error;
pub mod graphgen;
pub mod harness;
pub mod iprstats;
pub mod spectra;
pub mod sphere;

pub use error::{Error, Result};
