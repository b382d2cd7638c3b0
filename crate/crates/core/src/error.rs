use thiserror::Error;

use crate::annulus::Boundary;
use crate::bijection::CheckReport;

/// Errors produced by the tiling, annulus and frieze machinery.
#[derive(Debug, Error)]
pub enum Error {
    /// Both periods must be positive; no positive integral tiling has `m * n <= 0`.
    #[error("invalid periods ({m}, {n}): both must be at least 1")]
    InvalidPeriod { m: i64, n: i64 },

    #[error("malformed lattice path: {0}")]
    InvalidPath(String),

    /// A seed failed at least one of its integrality conditions.
    #[error("seed violates {} of its {} integrality conditions", .0.failures().count(), .0.conditions.len())]
    PreconditionViolated(Box<CheckReport>),

    /// Arithmetic produced a value that a valid tiling can never contain.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("{boundary:?}{index} is not an ear of the triangulation")]
    NotAnEar { boundary: Boundary, index: i64 },

    #[error("removing an ear from {0:?} would leave that boundary without marked points")]
    WouldEmptyBoundary(Boundary),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("quiddity does not define a positive frieze: v[{k},{l}] = {value}")]
    NonPositiveEntry { k: i64, l: i64, value: String },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("vertices are not in cyclic order on the boundary circle")]
    CyclicOrder,

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
