use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("dimension mismatch: expected {expected:?}, got {actual:?}")]
    DimMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("mask has no foreground components")]
    EmptyMask,

    #[error("no ground truth registered for this image")]
    MissingGroundTruth,

    #[error("failed to load model {path}: {reason}")]
    ModelLoad { path: PathBuf, reason: String },

    #[error("model signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("model inference failed: {0}")]
    Inference(String),

    #[error("cannot evaluate an empty set")]
    EmptySet,

    #[error("unmatched prediction/ground-truth files: {}", .0.join(", "))]
    UnmatchedPair(Vec<String>),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 2 usage, 3 IO, 4 model, 5 data contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParam(_) | Error::UnknownMethod(_) => 2,
            Error::Io { .. } | Error::Image { .. } | Error::Json { .. } => 3,
            Error::ModelLoad { .. } | Error::SignatureMismatch(_) | Error::Inference(_) => 4,
            Error::InvalidDims(_)
            | Error::DimMismatch { .. }
            | Error::EmptyMask
            | Error::MissingGroundTruth
            | Error::EmptySet
            | Error::UnmatchedPair(_)
            | Error::Manifest(_) => 5,
        }
    }
}
