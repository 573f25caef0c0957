//! Reference clustering algorithms used as `A(K)` in sweeps and model
//! selection, plus a seeded synthetic data generator.

mod blobs;
mod hac;
mod kmeans;
mod kmedoids;

pub use blobs::{make_blobs, BlobSpec, Blobs, ParseBlobSpecError};
pub use hac::{cut_dendrogram, hac, Dendrogram, Linkage, Merge, UnknownLinkage};
pub use kmeans::{kmeans, KMeansConfig, KMeansFit};
pub use kmedoids::{kmedoids_asw, KMedoidsFit};

use crate::matrix::MatrixError;
use crate::silhouette::SilhouetteError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BaselineError {
    #[error("KTooLarge: k = {k} exceeds the number of points {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("KOutOfRange: k = {k}, expected 1 <= k <= {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("InvalidConfig: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Silhouette(#[from] SilhouetteError),
}

impl BaselineError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::KTooLarge { .. } => "KTooLarge",
            Self::KOutOfRange { .. } => "KOutOfRange",
            Self::InvalidConfig(_) => "InvalidConfig",
            Self::Matrix(e) => e.kind(),
            Self::Silhouette(e) => e.kind(),
        }
    }
}
