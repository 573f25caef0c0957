use std::fmt::Display;
use std::path::Path;

use silhouette_ub::baselines::BaselineError;
use silhouette_ub::oracle::OracleError;
use silhouette_ub::selection::SelectionError;
use silhouette_ub::{BoundError, MatrixError, SilhouetteError};

pub const EXIT_IO: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NOT_CLUSTERABLE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{message}")]
    Invalid { kind: &'static str, message: String },
    #[error("UB = {ub} does not exceed tau = {tau}")]
    NotClusterable { ub: f64, tau: f64 },
}

impl CliError {
    pub fn invalid(kind: &'static str, message: impl Display) -> Self {
        Self::Invalid {
            kind,
            message: message.to_string(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Io { .. } => "IoError",
            Self::Invalid { kind, .. } => kind,
            Self::NotClusterable { .. } => "NotClusterable",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } => EXIT_IO,
            Self::Invalid { .. } => EXIT_INVALID,
            Self::NotClusterable { .. } => EXIT_NOT_CLUSTERABLE,
        }
    }

    /// Single-line JSON for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::invalid(e.kind(), e)
            }
        }
    )*};
}

validation_from!(MatrixError, BoundError, SilhouetteError, OracleError, BaselineError);

impl From<SelectionError<CliError>> for CliError {
    fn from(e: SelectionError<CliError>) -> Self {
        match e {
            SelectionError::AlgorithmFailure { k, error } => match error {
                Self::Invalid { kind, message } => {
                    Self::invalid("AlgorithmFailure", format!("K={k}: {kind}: {message}"))
                }
                other => other,
            },
            other => Self::invalid(other.kind(), other),
        }
    }
}
