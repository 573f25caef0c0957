//! Silhouette widths and the average silhouette width (ASW).

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::DissimilarityMatrix;
use crate::sum::KahanSum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SilhouetteError {
    #[error("SizeMismatch: clustering has {found} labels but the matrix has {expected} points")]
    SizeMismatch { expected: usize, found: usize },
    #[error("LabelOutOfRange: point {index} has label {label}, expected a value below {k}")]
    LabelOutOfRange { index: usize, label: usize, k: usize },
    #[error("EmptyCluster: cluster {cluster} has no members")]
    EmptyCluster { cluster: usize },
    #[error("SingleCluster: silhouettes need at least two clusters")]
    SingleCluster,
    #[error("EmptyClustering: a clustering needs at least one point")]
    EmptyClustering,
}

impl SilhouetteError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::SizeMismatch { .. } => "SizeMismatch",
            Self::LabelOutOfRange { .. } => "LabelOutOfRange",
            Self::EmptyCluster { .. } => "EmptyCluster",
            Self::SingleCluster => "SingleCluster",
            Self::EmptyClustering => "EmptyClustering",
        }
    }
}

/// A hard partition of `n` points into `k` nonempty clusters labelled `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    labels: Vec<usize>,
    sizes: Vec<usize>,
}

impl Clustering {
    /// Labels must lie in `0..k` and every cluster must be used.
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self, SilhouetteError> {
        if labels.is_empty() {
            return Err(SilhouetteError::EmptyClustering);
        }
        let mut sizes = vec![0usize; k];
        for (index, &label) in labels.iter().enumerate() {
            if label >= k {
                return Err(SilhouetteError::LabelOutOfRange { index, label, k });
            }
            sizes[label] += 1;
        }
        if let Some(cluster) = sizes.iter().position(|&s| s == 0) {
            return Err(SilhouetteError::EmptyCluster { cluster });
        }
        Ok(Self { labels, sizes })
    }

    /// Accepts arbitrary identifiers and renumbers them `0..k` in order of
    /// first appearance.
    pub fn from_ids<T: PartialEq + Copy>(ids: &[T]) -> Result<Self, SilhouetteError> {
        let mut seen: Vec<T> = Vec::new();
        let labels = ids
            .iter()
            .map(|id| match seen.iter().position(|s| s == id) {
                Some(p) => p,
                None => {
                    seen.push(*id);
                    seen.len() - 1
                }
            })
            .collect();
        Self::new(labels, seen.len())
    }

    /// Every point in its own cluster.
    pub fn singletons(n: usize) -> Self {
        Self {
            labels: (0..n).collect(),
            sizes: vec![1; n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    #[inline]
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    #[inline]
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn min_cluster_size(&self) -> usize {
        self.sizes.iter().copied().min().unwrap_or(0)
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.labels[i] == cluster).collect()
    }

    /// Same partition, relabelled in order of first appearance. Two
    /// clusterings describe the same partition iff their canonical forms are
    /// equal.
    pub fn canonical(&self) -> Self {
        Self::from_ids(&self.labels).expect("a valid clustering stays valid after renumbering")
    }

    pub fn same_partition(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Per-point silhouette components.
#[derive(Debug, Clone, PartialEq)]
pub struct SilhouetteReport {
    /// Mean dissimilarity to the rest of the own cluster; `None` for singletons.
    pub a: Vec<Option<f64>>,
    /// Smallest mean dissimilarity to another cluster.
    pub b: Vec<f64>,
    pub s: Vec<f64>,
    pub asw: f64,
}

fn check(delta: &DissimilarityMatrix, clustering: &Clustering) -> Result<(), SilhouetteError> {
    if clustering.n() != delta.n() {
        return Err(SilhouetteError::SizeMismatch {
            expected: delta.n(),
            found: clustering.n(),
        });
    }
    if clustering.k() < 2 {
        return Err(SilhouetteError::SingleCluster);
    }
    Ok(())
}

/// Accumulates row `i` into per-cluster sums and returns `(a, b)`.
#[inline]
fn cohesion_separation(
    delta: &DissimilarityMatrix,
    clustering: &Clustering,
    i: usize,
    sums: &mut [KahanSum],
) -> (Option<f64>, f64) {
    sums.fill(KahanSum::new());
    let row = delta.row(i);
    for (j, &label) in clustering.labels().iter().enumerate() {
        if j != i {
            sums[label].add(row[j]);
        }
    }
    let own = clustering.label(i);
    let sizes = clustering.sizes();
    let a = (sizes[own] > 1).then(|| sums[own].value() / (sizes[own] - 1) as f64);
    let b = sums
        .iter()
        .zip(sizes)
        .enumerate()
        .filter(|&(c, _)| c != own)
        .map(|(_, (sum, &size))| sum.value() / size as f64)
        .fold(f64::INFINITY, f64::min);
    (a, b)
}

/// `(b − a) / max(a, b)`, zero for singletons and for `a == b`.
#[inline]
pub fn silhouette_width(a: Option<f64>, b: f64) -> f64 {
    match a {
        None => 0.0,
        Some(a) if a == b => 0.0,
        Some(a) => (b - a) / libm::fmax(a, b),
    }
}

pub fn silhouette_report(
    delta: &DissimilarityMatrix,
    clustering: &Clustering,
) -> Result<SilhouetteReport, SilhouetteError> {
    check(delta, clustering)?;
    let n = delta.n();
    let mut sums = vec![KahanSum::new(); clustering.k()];
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n);
    let mut total = KahanSum::new();
    for i in 0..n {
        let (ai, bi) = cohesion_separation(delta, clustering, i, &mut sums);
        let si = silhouette_width(ai, bi);
        total.add(si);
        a.push(ai);
        b.push(bi);
        s.push(si);
    }
    Ok(SilhouetteReport {
        a,
        b,
        s,
        asw: total.value() / n as f64,
    })
}

/// Average silhouette width without keeping per-point arrays.
pub fn asw(delta: &DissimilarityMatrix, clustering: &Clustering) -> Result<f64, SilhouetteError> {
    check(delta, clustering)?;
    let n = delta.n();
    let mut sums = vec![KahanSum::new(); clustering.k()];
    let mut total = KahanSum::new();
    for i in 0..n {
        let (ai, bi) = cohesion_separation(delta, clustering, i, &mut sums);
        total.add(silhouette_width(ai, bi));
    }
    Ok(total.value() / n as f64)
}
