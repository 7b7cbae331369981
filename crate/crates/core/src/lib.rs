//! A desk-scale numerical laboratory for Liouville conformal field theory on
//! the Riemann sphere.
//!
//! The crate builds the whole pipeline from scratch:
//!
//! - exact-covariance Gaussian free fields on a two-chart sphere grid
//!   ([`field`], [`cov`], [`chol`]), sampled by dense Cholesky factors,
//!   truncated spherical-harmonic expansions, or the disk decomposition
//!   Φ = Φ_D + Pφ;
//! - Gaussian multiplicative chaos measures in Wick normalization and their
//!   moment/covariance diagnostics ([`chaos`], [`chaos_stats`]);
//! - vertex-operator correlation functions through the exact reduction of the
//!   zero-mode integral to Γ(s) times negative chaos moments, with the
//!   identity suite built on top: KPZ, Γ-law of the total mass, Möbius
//!   covariance, the degenerate four-point function and the shift relation
//!   for three-point constants ([`correlator`]);
//! - a level-truncated Fock-space realization of the free-field Virasoro
//!   algebra with central charge 1 + 6Q², and the 1-D exponential-barrier
//!   Hamiltonian with its reflection coefficient ([`algebra`]);
//! - a reproducible experiment runner with flat text configs, JSON-lines
//!   records and CSV plot data ([`config`], [`runner`], [`record`]).
//!
//! Everything is deterministic given (config, master seed, chain count):
//! parallelism is organized in fixed-index chains so results do not depend on
//! the thread count.

pub mod algebra;
pub mod chaos;
pub mod chaos_stats;
pub mod chol;
pub mod circle;
pub mod config;
pub mod correlator;
pub mod cov;
pub mod decomp;
pub mod field;
pub mod geometry;
pub mod girsanov;
pub mod grid;
pub mod liouville;
pub mod mc;
pub mod mobius;
pub mod mollify;
pub mod quadrature;
pub mod record;
pub mod runner;
pub mod special;
pub mod spectral;

pub use geometry::{Chart, ComplexPoint};
pub use grid::{GridChart, Region, TwoChartGrid};
pub use liouville::{Insertion, LiouvilleParams};
