//! Per-point silhouette ceilings and the dataset-level ASW upper bound.
//!
//! For a point `i` with sorted off-diagonal row `d̂₁ ≤ … ≤ d̂ₙ₋₁`, the
//! Λ-quotient compares the mean of the `Λ − 1` smallest entries with the
//! mean of the remaining `n − Λ`:
//!
//! ```text
//! q(i, Λ) = 1                                            Λ = 1
//! q(i, Λ) = (n − Λ)/(Λ − 1) · Σ_{j<Λ} d̂ⱼ / Σ_{j≥Λ} d̂ⱼ     Λ > 1
//! ```
//!
//! In any clustering where `i` sits in a cluster of size `Λ`, its cohesion is
//! at least the head mean and its separation at most the tail mean, so
//! `s(i) ≤ 1 − q(i, Λ)`. Minimising over the admissible cluster sizes gives
//! `f_κ(i)` and the ceiling `1 − f_κ(i)`, which is attained by the
//! 2-clustering returned by [`witness_clustering`]. The mean of the ceilings
//! bounds the ASW of every clustering whose smallest cluster has at least `κ`
//! members.

use alloc::vec::Vec;

use crate::matrix::{neighbors_by_distance, sort_rows, DissimilarityMatrix, SortedDissimilarity};
use crate::silhouette::Clustering;
use crate::sum::{compensated_sum, KahanSum};

/// Smallest `n` for which bounds are computed.
pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("TooFewPoints: bounds need at least {MIN_POINTS} points, got {n}")]
    TooFewPoints { n: usize },
    #[error("KappaOutOfRange: kappa = {kappa}, expected 1 <= kappa <= {max}")]
    KappaOutOfRange { kappa: usize, max: usize },
    #[error("LambdaOutOfRange: lambda = {lambda}, expected 1 <= lambda <= {max}")]
    LambdaOutOfRange { lambda: usize, max: usize },
    #[error("PointOutOfRange: point {index} does not exist in a matrix of {n} points")]
    PointOutOfRange { index: usize, n: usize },
}

impl BoundError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::TooFewPoints { .. } => "TooFewPoints",
            Self::KappaOutOfRange { .. } => "KappaOutOfRange",
            Self::LambdaOutOfRange { .. } => "LambdaOutOfRange",
            Self::PointOutOfRange { .. } => "PointOutOfRange",
        }
    }
}

/// Checks `n ≥ 4` and `1 ≤ κ ≤ ⌊n/2⌋`.
pub fn check_kappa(n: usize, kappa: usize) -> Result<(), BoundError> {
    if n < MIN_POINTS {
        return Err(BoundError::TooFewPoints { n });
    }
    if kappa == 0 || kappa > n / 2 {
        return Err(BoundError::KappaOutOfRange { kappa, max: n / 2 });
    }
    Ok(())
}

fn check_point(n: usize, i: usize) -> Result<(), BoundError> {
    if i >= n {
        return Err(BoundError::PointOutOfRange { index: i, n });
    }
    Ok(())
}

/// The Λ-quotient of point `i`, evaluated from prefix sums.
pub fn lambda_quotient(
    sorted: &SortedDissimilarity,
    i: usize,
    lambda: usize,
) -> Result<f64, BoundError> {
    let n = sorted.n();
    check_point(n, i)?;
    if lambda == 0 || lambda >= n {
        return Err(BoundError::LambdaOutOfRange {
            lambda,
            max: n - 1,
        });
    }
    if lambda == 1 {
        return Ok(1.0);
    }
    let head = sorted.range_sum(i, 0, lambda - 1);
    let tail = sorted.range_sum(i, lambda - 1, n - 1);
    Ok((head / (lambda - 1) as f64) / (tail / (n - lambda) as f64))
}

/// Ceiling on the silhouette width of one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointBound {
    /// `1 − f_κ(i)`.
    pub bound: f64,
    /// `f_κ(i)`, the minimal admissible quotient.
    pub quotient: f64,
    /// Smallest Λ attaining the minimum.
    pub lambda_star: usize,
}

/// Running-sum scan over `Λ ∈ {κ, …, n − κ}` for point `i`.
pub fn pointwise_bound(
    sorted: &SortedDissimilarity,
    i: usize,
    kappa: usize,
) -> Result<PointBound, BoundError> {
    let n = sorted.n();
    check_kappa(n, kappa)?;
    check_point(n, i)?;
    Ok(scan_row(sorted.row(i), kappa))
}

/// Scans one sorted row (length `n − 1`); `κ` must already be validated.
///
/// The running sums always start at `Λ = 1`, so the quotient at a given `Λ`
/// is bit-identical for every `κ` and `f_κ` is exactly monotone in `κ`.
pub(crate) fn scan_row(row: &[f64], kappa: usize) -> PointBound {
    let n = row.len() + 1;
    // head: entries 0..Λ-1, tail: entries Λ-1..n-1 (0-based)
    let mut head = KahanSum::new();
    let mut tail = KahanSum::new();
    tail.add(compensated_sum(row.iter().copied()));
    let mut best = if kappa == 1 { 1.0 } else { f64::INFINITY };
    let mut lambda_star = kappa;
    for lambda in 2..=(n - kappa) {
        let moved = row[lambda - 2];
        head.add(moved);
        tail.add(-moved);
        if lambda < kappa {
            continue;
        }
        let q = (head.value() / (lambda - 1) as f64) / (tail.value() / (n - lambda) as f64);
        if q < best {
            best = q;
            lambda_star = lambda;
        }
    }
    PointBound {
        bound: 1.0 - best,
        quotient: best,
        lambda_star,
    }
}

/// Per-point ceilings for a given minimum cluster size and their summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kappa: usize,
    /// `1 − f_κ(i)` for every point.
    pub bounds: Vec<f64>,
    pub lambda_star: Vec<usize>,
    /// Mean of `bounds`: no clustering with all clusters of size ≥ κ has a
    /// larger ASW.
    pub ub: f64,
    pub min_ub: f64,
    pub max_ub: f64,
}

impl BoundReport {
    /// Aggregates per-point results computed elsewhere (e.g. in parallel).
    pub fn from_points(kappa: usize, points: &[PointBound]) -> Self {
        let bounds: Vec<f64> = points.iter().map(|p| p.bound).collect();
        let lambda_star = points.iter().map(|p| p.lambda_star).collect();
        let ub = compensated_sum(bounds.iter().copied()) / bounds.len() as f64;
        let min_ub = bounds.iter().copied().fold(f64::INFINITY, f64::min);
        let max_ub = bounds.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self {
            kappa,
            bounds,
            lambda_star,
            ub,
            min_ub,
            max_ub,
        }
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }
}

pub fn bound_report_sorted(
    sorted: &SortedDissimilarity,
    kappa: usize,
) -> Result<BoundReport, BoundError> {
    let n = sorted.n();
    check_kappa(n, kappa)?;
    let points: Vec<PointBound> = (0..n).map(|i| scan_row(sorted.row(i), kappa)).collect();
    Ok(BoundReport::from_points(kappa, &points))
}

/// Sorts the rows of `delta` and runs the bound scan for every point.
pub fn bound_report(delta: &DissimilarityMatrix, kappa: usize) -> Result<BoundReport, BoundError> {
    check_kappa(delta.n(), kappa)?;
    bound_report_sorted(&sort_rows(delta), kappa)
}

/// Reports for every `κ ∈ {1, …, ⌊n/2⌋}`, sharing one row sort.
pub fn bound_reports_all_kappa(delta: &DissimilarityMatrix) -> Result<Vec<BoundReport>, BoundError> {
    check_kappa(delta.n(), 1)?;
    let sorted = sort_rows(delta);
    (1..=delta.n() / 2)
        .map(|k| bound_report_sorted(&sorted, k))
        .collect()
}

/// The 2-clustering `{i and its Λ − 1 nearest neighbours | everyone else}`
/// (label 0 is the cluster containing `i`). Neighbour ties go to the lower
/// index.
///
/// When the minimal quotient `q(i, Λ*)` is below 1, `i` attains its ceiling in
/// this clustering: `s(i) = 1 − q(i, Λ*)`. For `Λ = 1` the witness isolates
/// `i`, whose silhouette is then 0.
pub fn witness_clustering(
    delta: &DissimilarityMatrix,
    i: usize,
    lambda: usize,
) -> Result<Clustering, BoundError> {
    let n = delta.n();
    check_point(n, i)?;
    if lambda == 0 || lambda >= n {
        return Err(BoundError::LambdaOutOfRange {
            lambda,
            max: n - 1,
        });
    }
    let mut labels = alloc::vec![1usize; n];
    labels[i] = 0;
    for j in neighbors_by_distance(delta, i).into_iter().take(lambda - 1) {
        labels[j] = 0;
    }
    Ok(Clustering::new(labels, 2).expect("both sides of a witness split are nonempty"))
}
