//! Exhaustive search over set partitions for small `n`.
//!
//! Partitions are generated as restricted-growth strings in lexicographic
//! order (`labels[0] = 0`, `labels[p] ≤ 1 + max(labels[..p])`), so each set
//! partition appears exactly once. Cluster-count and minimum-size constraints
//! prune the search tree instead of filtering complete strings.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::matrix::DissimilarityMatrix;
use crate::silhouette::{asw, Clustering, SilhouetteError};

/// Largest `n` the enumerator accepts (`Bell(15) ≈ 1.4·10⁹`).
pub const MAX_POINTS: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("TooLarge: exhaustive search is capped at n = {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },
    #[error("TooFewPoints: need at least 2 points, got {n}")]
    TooFewPoints { n: usize },
    #[error("InvalidConstraints: cluster count range {k_min}..={k_max} or min size {min_size} is empty")]
    InvalidConstraints {
        k_min: usize,
        k_max: usize,
        min_size: usize,
    },
    #[error("NoFeasiblePartition: no partition satisfies the constraints")]
    NoFeasiblePartition,
    #[error(transparent)]
    Silhouette(#[from] SilhouetteError),
}

impl OracleError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::TooLarge { .. } => "TooLarge",
            Self::TooFewPoints { .. } => "TooFewPoints",
            Self::InvalidConstraints { .. } => "InvalidConstraints",
            Self::NoFeasiblePartition => "NoFeasiblePartition",
            Self::Silhouette(e) => e.kind(),
        }
    }
}

/// Which partitions to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionConstraints {
    pub k_min: usize,
    /// `None` means up to `n`.
    pub k_max: Option<usize>,
    /// Smallest allowed cluster size (κ).
    pub min_size: usize,
}

impl Default for PartitionConstraints {
    fn default() -> Self {
        Self::all()
    }
}

impl PartitionConstraints {
    /// Every set partition, including the single-cluster one.
    pub const fn all() -> Self {
        Self {
            k_min: 1,
            k_max: None,
            min_size: 1,
        }
    }

    /// Every partition with at least two clusters.
    pub const fn nontrivial() -> Self {
        Self {
            k_min: 2,
            k_max: None,
            min_size: 1,
        }
    }

    pub const fn exactly(k: usize) -> Self {
        Self {
            k_min: k,
            k_max: Some(k),
            min_size: 1,
        }
    }

    pub const fn with_min_size(mut self, kappa: usize) -> Self {
        self.min_size = kappa;
        self
    }

    pub const fn with_k_range(mut self, k_min: usize, k_max: usize) -> Self {
        self.k_min = k_min;
        self.k_max = Some(k_max);
        self
    }
}

/// Lexicographic restricted-growth-string enumerator.
#[derive(Debug, Clone)]
pub struct PartitionIterator {
    n: usize,
    k_min: usize,
    k_max: usize,
    min_size: usize,
    labels: Vec<usize>,
    counts: Vec<usize>,
    blocks: usize,
    started: bool,
    exhausted: bool,
}

pub fn enumerate_partitions(
    n: usize,
    constraints: PartitionConstraints,
) -> Result<PartitionIterator, OracleError> {
    if n > MAX_POINTS {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_POINTS,
        });
    }
    if n < 2 {
        return Err(OracleError::TooFewPoints { n });
    }
    let k_max = constraints.k_max.unwrap_or(n).min(n);
    if constraints.k_min == 0 || constraints.k_min > k_max || constraints.min_size == 0 {
        return Err(OracleError::InvalidConstraints {
            k_min: constraints.k_min,
            k_max,
            min_size: constraints.min_size,
        });
    }
    Ok(PartitionIterator {
        n,
        k_min: constraints.k_min,
        k_max,
        min_size: constraints.min_size,
        labels: vec![0; n],
        counts: vec![0; n],
        blocks: 0,
        started: false,
        exhausted: false,
    })
}

impl PartitionIterator {
    #[inline]
    fn place(&mut self, p: usize, v: usize) {
        self.labels[p] = v;
        self.counts[v] += 1;
        if v == self.blocks {
            self.blocks += 1;
        }
    }

    #[inline]
    fn unplace(&mut self, p: usize) {
        let v = self.labels[p];
        self.counts[v] -= 1;
        if self.counts[v] == 0 {
            self.blocks -= 1;
        }
    }

    /// Whether the first `filled` positions can still be completed.
    fn feasible(&self, filled: usize) -> bool {
        if self.blocks > self.k_max {
            return false;
        }
        let remaining = self.n - filled;
        let deficit: usize = self.counts[..self.blocks]
            .iter()
            .map(|&c| self.min_size.saturating_sub(c))
            .sum();
        let new_blocks = self.k_min.saturating_sub(self.blocks);
        deficit + new_blocks * self.min_size <= remaining
    }

    /// Moves to the next partition and returns its labels.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.exhausted {
            return None;
        }
        let (mut p, mut v) = if self.started {
            let p = self.n - 1;
            let v = self.labels[p] + 1;
            self.unplace(p);
            (p, v)
        } else {
            self.started = true;
            (0, 0)
        };
        loop {
            let max_v = self.blocks.min(self.k_max - 1);
            let mut placed = false;
            while v <= max_v {
                self.place(p, v);
                if self.feasible(p + 1) {
                    placed = true;
                    break;
                }
                self.unplace(p);
                v += 1;
            }
            if placed {
                if p + 1 == self.n {
                    return Some(&self.labels);
                }
                p += 1;
                v = 0;
            } else {
                if p == 0 {
                    self.exhausted = true;
                    return None;
                }
                p -= 1;
                v = self.labels[p] + 1;
                self.unplace(p);
            }
        }
    }

    /// Number of clusters in the current partition.
    pub fn current_k(&self) -> usize {
        self.blocks
    }

    /// Remaining partitions, counted without building clusterings.
    pub fn count_remaining(mut self) -> u64 {
        let mut c = 0;
        while self.advance().is_some() {
            c += 1;
        }
        c
    }
}

impl Iterator for PartitionIterator {
    type Item = Clustering;

    fn next(&mut self) -> Option<Clustering> {
        let labels = self.advance()?.to_vec();
        let k = self.blocks;
        Some(Clustering::new(labels, k).expect("restricted growth strings are valid clusterings"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalResult {
    pub best: Clustering,
    pub best_asw: f64,
    /// Partitions whose ASW equals `best_asw` exactly (including `best`).
    pub ties: u64,
    pub evaluated: u64,
}

/// Exact ASW maximiser over all partitions with `K ≥ 2` that satisfy
/// `constraints`. The first maximiser in enumeration order is returned.
pub fn optimal_asw(
    delta: &DissimilarityMatrix,
    constraints: PartitionConstraints,
) -> Result<OptimalResult, OracleError> {
    let constraints = PartitionConstraints {
        k_min: constraints.k_min.max(2),
        ..constraints
    };
    let mut best: Option<(Vec<usize>, usize, f64)> = None;
    let mut ties = 0;
    let mut evaluated = 0;
    for c in enumerate_partitions(delta.n(), constraints)? {
        let k = c.k();
        let score = asw(delta, &c)?;
        evaluated += 1;
        match &best {
            Some((_, _, b)) if score < *b => {}
            Some((_, _, b)) if score == *b => ties += 1,
            _ => {
                best = Some((c.labels().to_vec(), k, score));
                ties = 1;
            }
        }
    }
    let (labels, k, best_asw) = best.ok_or(OracleError::NoFeasiblePartition)?;
    Ok(OptimalResult {
        best: Clustering::new(labels, k)?,
        best_asw,
        ties,
        evaluated,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestForK {
    pub k: usize,
    pub best: Clustering,
    pub asw: f64,
    pub ties: u64,
    pub evaluated: u64,
}

/// Exact best ASW within each cluster count in `ks` (values below 2 or above
/// `n` are skipped), from a single enumeration pass.
pub fn best_per_k(
    delta: &DissimilarityMatrix,
    ks: RangeInclusive<usize>,
) -> Result<Vec<BestForK>, OracleError> {
    let n = delta.n();
    let lo = (*ks.start()).max(2);
    let hi = (*ks.end()).min(n);
    if lo > hi {
        return Ok(Vec::new());
    }
    let it = enumerate_partitions(n, PartitionConstraints::nontrivial().with_k_range(lo, hi))?;
    let mut table: Vec<Option<BestForK>> = vec![None; hi - lo + 1];
    for c in it {
        let k = c.k();
        let score = asw(delta, &c)?;
        let slot = &mut table[k - lo];
        match slot {
            Some(b) => {
                b.evaluated += 1;
                if score > b.asw {
                    b.best = c;
                    b.asw = score;
                    b.ties = 1;
                } else if score == b.asw {
                    b.ties += 1;
                }
            }
            None => {
                *slot = Some(BestForK {
                    k,
                    best: c,
                    asw: score,
                    ties: 1,
                    evaluated: 1,
                })
            }
        }
    }
    Ok(table.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_matrix, Metric, PointSet};

    fn toy() -> DissimilarityMatrix {
        let p = PointSet::from_rows(&[[1.0, 2.0], [2.0, 1.0], [1.5, 2.5], [6.0, 2.0], [6.0, 3.0]])
            .unwrap();
        build_matrix(&p, Metric::Euclidean).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_partitions(3, PartitionConstraints::all()).unwrap().count(), 5);
        assert_eq!(
            enumerate_partitions(5, PartitionConstraints::nontrivial()).unwrap().count_remaining(),
            51
        );
        assert_eq!(
            enumerate_partitions(5, PartitionConstraints::exactly(2)).unwrap().count_remaining(),
            15
        );
        // sizes {2,2} and {2,3}-style splits of 5 with every block ≥ 2: only 2+3 → C(5,2) = 10
        assert_eq!(
            enumerate_partitions(5, PartitionConstraints::nontrivial().with_min_size(2))
                .unwrap()
                .count_remaining(),
            10
        );
    }

    #[test]
    fn lexicographic_order() {
        let all: Vec<Vec<usize>> = enumerate_partitions(3, PartitionConstraints::all())
            .unwrap()
            .map(|c| c.labels().to_vec())
            .collect();
        assert_eq!(
            all,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]
        );
    }

    #[test]
    fn limits() {
        assert_eq!(
            enumerate_partitions(16, PartitionConstraints::all()).unwrap_err(),
            OracleError::TooLarge { n: 16, max: 15 }
        );
        assert!(enumerate_partitions(1, PartitionConstraints::all()).is_err());
        assert!(enumerate_partitions(4, PartitionConstraints::exactly(0)).is_err());
    }

    #[test]
    fn toy_optimum() {
        let r = optimal_asw(&toy(), PartitionConstraints::nontrivial()).unwrap();
        assert_eq!(r.evaluated, 51);
        assert_eq!(r.ties, 1);
        assert_eq!(r.best.labels(), &[0, 0, 0, 1, 1]);
        assert!((r.best_asw - 0.7512).abs() < 1e-3);

        let k4 = optimal_asw(&toy(), PartitionConstraints::exactly(4)).unwrap();
        assert_eq!(k4.best.labels(), &[0, 1, 2, 3, 3]);
        assert!((k4.best_asw - 0.3068).abs() < 1e-3);
    }

    #[test]
    fn toy_per_k() {
        let table = best_per_k(&toy(), 2..=5).unwrap();
        let expect = [0.7512, 0.5173, 0.3068, 0.0];
        assert_eq!(table.len(), 4);
        for (row, e) in table.iter().zip(expect) {
            assert!((row.asw - e).abs() < 1e-3, "K={} asw={}", row.k, row.asw);
        }
        assert_eq!(table[1].best.labels(), &[0, 1, 0, 2, 2]);
        assert_eq!(table[3].best, Clustering::singletons(5));
        assert_eq!(table[3].evaluated, 1);
    }

    #[test]
    fn infeasible_constraints() {
        assert_eq!(
            optimal_asw(&toy(), PartitionConstraints::exactly(3).with_min_size(2)).unwrap_err(),
            OracleError::NoFeasiblePartition
        );
    }
}
