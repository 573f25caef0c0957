//! Clustering algorithms selectable by name, prepared once per run and then
//! queried for each K.

use std::fmt;
use std::str::FromStr;

use silhouette_ub::baselines::{cut_dendrogram, hac, kmeans, kmedoids_asw, Dendrogram, KMeansConfig, Linkage};
use silhouette_ub::oracle::{optimal_asw, PartitionConstraints};
use silhouette_ub::{Clustering, DissimilarityMatrix, Metric, PointSet};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmName {
    KMeans,
    KMedoids,
    /// Hierarchical clustering with the linkage given by `--linkage`.
    Hac,
    HacSingle,
    HacWeighted,
    Exhaustive,
}

impl AlgorithmName {
    pub fn resolve(self, linkage: Linkage) -> Self {
        match (self, linkage) {
            (Self::Hac, Linkage::Single) => Self::HacSingle,
            (Self::Hac, Linkage::Weighted) => Self::HacWeighted,
            (other, _) => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::KMeans => "kmeans",
            Self::KMedoids => "kmedoids",
            Self::Hac => "hac",
            Self::HacSingle => "hac-single",
            Self::HacWeighted => "hac-weighted",
            Self::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for AlgorithmName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "kmeans" | "k-means" => Self::KMeans,
            "kmedoids" | "k-medoids" => Self::KMedoids,
            "hac" => Self::Hac,
            "hac-single" | "single" => Self::HacSingle,
            "hac-weighted" | "weighted" | "wpgma" => Self::HacWeighted,
            "exhaustive" | "oracle" => Self::Exhaustive,
            _ => {
                return Err(format!(
                    "unknown algorithm {s:?} (expected kmeans, kmedoids, hac, hac-single, hac-weighted or exhaustive)"
                ))
            }
        })
    }
}

pub enum Prepared<'a> {
    KMeans { points: &'a PointSet, seed: u64 },
    KMedoids { seed: u64 },
    Hac(Dendrogram),
    Exhaustive { min_size: usize },
}

impl<'a> Prepared<'a> {
    /// `name` must already be resolved (no bare `Hac`).
    pub fn new(
        name: AlgorithmName,
        delta: &DissimilarityMatrix,
        points: Option<&'a PointSet>,
        metric: Metric,
        seed: u64,
        min_size: usize,
    ) -> Result<Self, CliError> {
        Ok(match name {
            AlgorithmName::KMeans => match points {
                Some(points) if metric == Metric::Euclidean => Self::KMeans { points, seed },
                _ => {
                    return Err(CliError::invalid(
                        "IncompatibleAlgorithm",
                        "kmeans needs point input with the euclidean metric",
                    ))
                }
            },
            AlgorithmName::KMedoids => Self::KMedoids { seed },
            AlgorithmName::HacSingle | AlgorithmName::Hac => Self::Hac(hac(delta, Linkage::Single)),
            AlgorithmName::HacWeighted => Self::Hac(hac(delta, Linkage::Weighted)),
            AlgorithmName::Exhaustive => Self::Exhaustive { min_size },
        })
    }

    pub fn cluster(&self, delta: &DissimilarityMatrix, k: usize) -> Result<Clustering, CliError> {
        Ok(match self {
            Self::KMeans { points, seed } => {
                kmeans(points, &KMeansConfig::new(k).with_seed(*seed))?.clustering
            }
            Self::KMedoids { seed } => kmedoids_asw(delta, k, *seed)?.clustering,
            Self::Hac(dendrogram) => cut_dendrogram(dendrogram, k)?,
            Self::Exhaustive { min_size } => {
                optimal_asw(delta, PartitionConstraints::exactly(k).with_min_size(*min_size))?.best
            }
        })
    }
}
