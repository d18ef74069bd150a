//! Crate-wide error type.

use thiserror::Error;

/// Result alias used by all fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for series {series}")]
    InvalidRank { series: char, rank: usize },

    #[error("fundamental-cycle iteration exceeded cap {cap}; Gram matrix is malformed")]
    NonTerminating { cap: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error(
        "no valid index for a negative-coefficient vector; Gram matrix violates the ADE contract"
    )]
    InternalContradiction,

    #[error("full Gram matrix has inertia ({0}, {1}, {2}), expected (1, n+r-1, 0)", .inertia.0, .inertia.1, .inertia.2)]
    BadSignature { inertia: (usize, usize, usize) },

    #[error("extra Gram block is invalid: {0}")]
    BadBlock(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("curve index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("margin parameter t = {t} outside the interval (0, {max}]")]
    BadMargin { t: String, max: String },

    #[error("quadratic form is not negative definite on the charge kernel")]
    NotDefinite {
        inertia: (usize, usize, usize),
        /// Coordinates of a kernel vector with nonnegative form value.
        witness: Vec<String>,
    },

    #[error("candidate class has zero charge but discriminant {delta} >= 0")]
    ZeroCharge { delta: String },

    #[error("class is not supported on the exceptional locus: {0}")]
    NotExceptionalClass(String),

    #[error("no curve can be peeled from divisor {divisor:?} toward target {target}")]
    Stuck { divisor: Vec<i64>, target: usize },

    #[error("normalization walk exceeded its step cap {cap}")]
    WalkNonTermination { cap: usize },

    #[error("empty scan range")]
    EmptyRange,

    #[error("candidate box of size {size} exceeds the cap {cap}")]
    BoxTooLarge { size: u128, cap: u128 },

    #[error("cannot parse rational from {0:?}")]
    BadRational(String),

    #[error("cannot parse ADE type from {0:?}")]
    BadAdeType(String),
}
