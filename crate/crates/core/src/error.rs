use thiserror::Error;

use crate::polygon::Diagonal;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid diagonal {0:?}: {1}")]
    InvalidDiagonal((usize, usize), String),

    #[error("diagonal not in triangulation: {0}")]
    DiagonalNotInTriangulation(Diagonal),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid polygon geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid simplex weights: {0}")]
    InvalidWeights(String),

    #[error("invalid support values: {0}")]
    InvalidSupport(String),

    #[error("no support values found after {0} repair iterations")]
    NoSupportValues(usize),

    #[error("non-generic functional: summand [{0}..{1}] has tied maximizers")]
    NonGenericFunctional(usize, usize),

    #[error("clusters are not adjacent")]
    NotAdjacent,

    #[error("facet certification failed for diagonal {diagonal}: {reason}")]
    Certification { diagonal: Diagonal, reason: String },

    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
