use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("truncation domain too small: boundary estimate {estimate:e} exceeds {limit:e}")]
    Truncation { estimate: f64, limit: f64 },
    #[error("eigensolver did not converge")]
    NoConvergence,
    #[error("unpaired non-real eigenvalues: {0} remain after conjugate matching")]
    Pairing(usize),
    #[error("matrix is not antisymmetric: max |A + Aᵀ| = {0:e}")]
    NotAntisymmetric(f64),
    #[error("point configuration lies on a distributional support: {0}")]
    DeltaSupport(String),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("Hermitian limit of {0} is not directly comparable")]
    NotDirectlyComparable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
