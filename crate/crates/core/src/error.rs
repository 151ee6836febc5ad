use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Intersection theory, genus and the conjectural engine are only
    /// defined on surfaces.
    #[error("operation is only defined for ambient dimension 2, got d = {0}")]
    UnsupportedDimension(usize),

    #[error("ambient dimension must be at least 2, got {0}")]
    InvalidAmbientDimension(usize),

    #[error("cremona indices must be distinct and at least 1, got ({0}, {1}, {2})")]
    BadCremonaIndices(usize, usize, usize),

    #[error("(-1)-class enumeration supports 1 <= r <= 8, got r = {0}")]
    UnsupportedRange(usize),

    /// The working prime must be an actual prime below 2^31 and strictly
    /// larger than the degree, so every Hasse binomial is invertible.
    #[error("prime {prime} must be a prime below 2^31 exceeding the degree {degree}")]
    BadPrime { prime: u64, degree: i64 },

    #[error("degree must be non-negative, got {0}")]
    NegativeDegree(i64),

    #[error("multiplicity sequence must be normalized (positive, non-increasing), got entry {0}")]
    NotNormalized(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    /// A scan ran past its provable bound; the supplied oracle is lying.
    #[error("inconsistent oracle: {0}")]
    InconsistentOracle(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("trace replay diverged at step {step}: {detail}")]
    ReplayMismatch { step: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
