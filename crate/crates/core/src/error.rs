use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("partition parts must be positive and weakly decreasing: {0:?}")]
    InvalidPartition(Vec<u32>),

    #[error("frobenius coordinates must be strictly decreasing with equal lengths")]
    InvalidFrobenius,

    #[error("depth {depth} is smaller than the partition length {length}")]
    DepthTooSmall { depth: usize, length: usize },

    #[error("enumeration weight {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("zero variable is not allowed in a doubled alphabet")]
    ZeroVariable,

    #[error("cannot parse specialization `{0}`")]
    BadSpecialization(String),

    #[error("cannot parse complex number `{0}`")]
    BadComplex(String),

    #[error("series does not converge: {0}")]
    Divergence(String),

    #[error("contour radii violate the analyticity constraints: {0}")]
    InfeasibleContour(String),

    #[error("no convergence after reaching the maximal {what} {limit}")]
    NoConvergence { what: &'static str, limit: usize },

    #[error("singular parameter collision: {0}")]
    Singular(String),

    #[error("argument {0} outside the supported range")]
    OutOfRange(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fredholm determinant unstable: discretizations differ by {0:e}")]
    Unstable(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
