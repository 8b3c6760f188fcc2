use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix shape error: {0}")]
    Shape(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not skew-Hermitian (defect {0:e})")]
    NotSkewHermitian(f64),
    #[error("matrix is not an orthogonal projection (defect {0:e})")]
    NotProjection(f64),
    #[error("tuple lengths differ: {a} left factors, {b} right factors")]
    TupleMismatch { a: usize, b: usize },
    #[error("empty operator tuple")]
    EmptyTuple,
    #[error("direction grids differ: {0} vs {1}")]
    GridMismatch(usize, usize),
    #[error("{0} directions is too few (need at least {1})")]
    TooFewDirections(usize, usize),
    #[error("negation needs an even number of directions, got {0}")]
    OddDirections(usize),
    #[error("support samples are inconsistent: the halfplane intersection is empty")]
    EmptyRegion,
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("disk list is empty")]
    NoDisks,
    #[error("invalid disk: {0}")]
    InvalidDisk(String),
    #[error("invalid shift schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
