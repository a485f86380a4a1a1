use alloc::string::String;

use num_bigint::BigInt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid discriminant {0}: expected a negative integer congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(BigInt),

    #[error("form {0} is not primitive positive-definite")]
    NotPrimitivePositiveDefinite(String),

    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(BigInt, BigInt),

    #[error("matrix has determinant {0}, expected 1")]
    BadDeterminant(BigInt),

    #[error("invalid level {0}: must be a positive integer")]
    InvalidLevel(u64),

    #[error("level {0} is not supported here (needs 1, 2, 3 or a prime >= 5)")]
    UnsupportedLevel(u64),

    #[error("{0} is not a prime >= 5")]
    NotPrimeAtLeastFive(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("composition precondition violated: {0}")]
    CompositionPrecondition(String),

    #[error("representation ({x}, {y}) is not proper and N-admissible")]
    InadmissibleRepresentation { x: BigInt, y: BigInt },

    #[error("search exceeded safety bound {bound} ({what})")]
    SearchBoundExceeded { what: &'static str, bound: BigInt },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
