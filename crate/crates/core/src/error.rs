use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not an odd prime below 2^32")]
    NotPrime(u64),
    #[error("F_{0} has no square root of -1 (need p = 1 mod 4)")]
    NoSqrtMinusOne(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("generators have mixed degrees {0:?}")]
    MixedDegrees(Vec<u32>),
    #[error("the zero ideal does not define a rational map")]
    ZeroIdeal,
    #[error("ideal has codimension {0}; common divisors must be removed first (codimension >= 2 required)")]
    CodimensionTooSmall(usize),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point lies in the base locus V(I)")]
    BasePoint,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("column {0} is not a syzygy of the generators")]
    NotSyzygy(usize),
    #[error("matrix entry ({row}, {column}) breaks homogeneity")]
    InhomogeneousEntry { row: usize, column: usize },
    #[error("ideal is not generated by linear forms")]
    NotLinear,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no admissible random sample after {0} attempts")]
    SamplingExhausted(usize),
    #[error("randomized trials disagree: {0}")]
    TrialDisagreement(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl AlgebraError {
    /// True for errors caused by malformed or out-of-contract input.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            AlgebraError::SamplingExhausted(_)
                | AlgebraError::TrialDisagreement(_)
                | AlgebraError::Inconsistent(_)
                | AlgebraError::Unsupported(_)
        )
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
