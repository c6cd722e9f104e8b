use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error("operation requires genus >= {required}, got {found}")]
    GenusTooSmall { required: u32, found: u32 },

    #[error("invalid split h = {h} for genus {g}")]
    InvalidSplit { g: u32, h: u32 },

    #[error("vector is not supported on the first {h} symplectic pairs")]
    OutsideBlock { h: u32 },

    #[error("inexact division by {divisor}: this indicates a bug")]
    InexactDivision { divisor: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix is singular modulo {0}")]
    SingularModP(u64),

    #[error("theta characteristic is odd")]
    OddCharacteristic,

    #[error("matrix is not symmetric (deviation {0:e})")]
    NotSymmetric(f64),

    #[error("imaginary part is not positive definite")]
    NotPositiveDefinite,

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("logarithm of zero: form vanishes at this point")]
    LogOfZero,

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("rank-deficient design matrix (condition {0:e})")]
    RankDeficient(f64),

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short stable identifier used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::GenusMismatch { .. } => "genus_mismatch",
            Error::GenusTooSmall { .. } => "genus_too_small",
            Error::InvalidSplit { .. } => "invalid_split",
            Error::OutsideBlock { .. } => "outside_block",
            Error::InexactDivision { .. } => "inexact_division",
            Error::NotPrime(_) => "not_prime",
            Error::SingularModP(_) => "singular_mod_p",
            Error::OddCharacteristic => "odd_characteristic",
            Error::NotSymmetric(_) => "not_symmetric",
            Error::NotPositiveDefinite => "not_positive_definite",
            Error::Domain(_) => "domain",
            Error::LogOfZero => "log_of_zero",
            Error::InsufficientSamples(_) => "insufficient_samples",
            Error::RankDeficient(_) => "rank_deficient",
            Error::Inconsistent(_) => "inconsistent",
            Error::Parse(_) => "parse",
        }
    }
}
