use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("pfaffian of an odd-dimensional matrix ({0})")]
    OddDimension(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid parabolic data: {0}")]
    InvalidBundle(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("higgs field is not compatible with the pairing: {0}")]
    Incompatible(String),
    #[error("scaling parameter must be nonzero")]
    ZeroScale,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
