//! Data-dependent upper bounds on the silhouette coefficient.
//!
//! Given a dissimilarity matrix, [`bounds::bound_report`] computes for every
//! point a sharp ceiling on the silhouette width that point can reach in *any*
//! clustering, and averages those ceilings into `UB`, an upper bound on the
//! average silhouette width (ASW) of every possible partition of the data.
//! The computation sorts each row once and then scans it, so it costs
//! `O(n² log n)` and needs no clustering to be run first.
//!
//! Around that core the crate provides:
//!
//! * [`matrix`]: building, validating and row-sorting dissimilarity matrices;
//! * [`silhouette`]: per-point silhouette widths and the ASW;
//! * [`oracle`]: exhaustive set-partition search for exact optima at small `n`;
//! * [`baselines`]: k-means, ASW-swap k-medoids, single/weighted linkage HAC
//!   and a seeded blob generator;
//! * [`selection`]: ASW model selection over `K` with a clusterability gate
//!   and bound-certified early stopping.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use silhouette_ub::matrix::{build_matrix, Metric, PointSet};
//! use silhouette_ub::bounds::bound_report;
//!
//! let points = PointSet::from_rows(&[
//!     [1.0, 2.0], [2.0, 1.0], [1.5, 2.5], [6.0, 2.0], [6.0, 3.0],
//! ]).unwrap();
//! let delta = build_matrix(&points, Metric::Euclidean).unwrap();
//! let report = bound_report(&delta, 1).unwrap();
//! assert!((report.ub - 0.7672).abs() < 1e-3);
//! ```
#![no_std]

extern crate alloc;

pub mod baselines;
pub mod bounds;
pub mod matrix;
pub mod oracle;
pub mod selection;
pub mod silhouette;

mod sum;

pub use bounds::{bound_report, BoundError, BoundReport};
pub use matrix::{
    build_matrix, sort_rows, validate_matrix, DissimilarityMatrix, MatrixError, Metric, PointSet,
    SortedDissimilarity,
};
pub use silhouette::{asw, silhouette_report, Clustering, SilhouetteError, SilhouetteReport};
