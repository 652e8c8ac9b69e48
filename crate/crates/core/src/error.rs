//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by model configuration, presentation and inference.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArtError {
    #[error("empty sample")]
    EmptySample,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("non-finite feature value at index {index}")]
    NonFinite { index: usize },
    #[error("feature {index} = {value} lies outside [0, 1]")]
    OutOfUnitRange { index: usize, value: f64 },
    #[error("binary input required, feature {index} = {value}")]
    NonBinary { index: usize, value: f64 },
    #[error("input has zero L1 norm")]
    ZeroNorm,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("radial extent must exceed category radius ({rbar} <= {radius})")]
    RadialExtent { rbar: f64, radius: f64 },
    #[error("radial extent not set; supply it explicitly for streaming use")]
    RadialExtentUnset,
    #[error("negative squared distance {0} in ellipsoid metric")]
    NegativeDistance(f64),
    #[error("covariance matrix is not positive definite")]
    SingularCovariance,
    #[error("non-finite log-likelihood")]
    NonFiniteLikelihood,
    #[error("model has no committed categories")]
    Untrained,
    #[error("module has no permanent categories")]
    NoPermanentNodes,
    #[error("empty dataset")]
    EmptyDataset,
    #[error("row {row} has dimension {actual}, expected {expected}")]
    RaggedData { row: usize, expected: usize, actual: usize },
    #[error("labels cover {labels} rows but dataset has {rows}")]
    LabelCount { labels: usize, rows: usize },
    #[error("model kind mismatch: {left} vs {right}")]
    KindMismatch { left: String, right: String },
    #[error("{0} does not support supervised training")]
    UnsupportedInner(String),
}

pub type Result<T, E = ArtError> = std::result::Result<T, E>;
