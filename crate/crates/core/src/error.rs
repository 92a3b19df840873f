use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is numerically singular (pivot {pivot:e} below threshold at column {column})")]
    Singular { column: usize, pivot: f64 },
    #[error("point with modulus {modulus} lies outside the annulus ({r_i}, {r_o})")]
    OutsideAnnulus { modulus: f64, r_i: f64, r_o: f64 },
    #[error("phase could not be resolved with {nodes} nodes")]
    PhaseUnresolved { nodes: usize },
    #[error("symbol vanishes on the unit circle")]
    ZeroOnCircle,
    #[error("symbol has nonzero winding number {0}")]
    NonzeroWinding(i64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("node count {nodes} too small for truncation order {order} (need a power of two >= 4M)")]
    NodeCountTooSmall { nodes: usize, order: usize },
    #[error("coefficient index {index} exceeds truncation order {order}")]
    TruncationExceeded { index: i64, order: usize },
    #[error("D_{n} is numerically zero")]
    SingularDn { n: usize },
    #[error("h from the determinant ratio and from orthogonality disagree at n = {n} (relative {rel:e})")]
    NormMismatch { n: usize, rel: f64 },
    #[error("point lies on the unit circle")]
    OnCircle,
    #[error("d(z) d(1/z) = 1 fails (max deviation {0:e})")]
    ModelNotFactorizable(f64),
    #[error("degenerate predictor: {0}")]
    DegeneratePredictor(String),
    #[error("genericity monitor failed: {0}")]
    GenericityFailed(String),
    #[error("generic condition failed: {0}")]
    GenericConditionFailed(String),
    #[error("missing data entry {0}")]
    MissingData(String),
    #[error("expression parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
