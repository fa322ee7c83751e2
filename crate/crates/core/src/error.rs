use thiserror::Error;

use crate::partitions::Partition;

/// Errors produced by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<i64>),

    #[error("negative entry {value} at position {index}")]
    NegativeEntry { index: usize, value: i64 },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    NotContained { outer: Partition, inner: Partition },

    #[error("no stretch factor exists: row {index} has mu_i = nu_i but lambda_i > kappa_i")]
    NoStretch { index: usize },

    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },

    #[error("tableaux use different alphabets (n = {left} vs n = {right})")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("partition {partition} has more than {n} parts")]
    TooManyParts { partition: Partition, n: usize },

    #[error("{small} does not sit inside {big}")]
    NotInside { small: String, big: String },

    #[error("no tableau of the requested shape has weight {0:?}")]
    ZeroKostka(Vec<i64>),

    #[error("shape at index {k} is not a valid skew shape")]
    InvalidTerm { k: usize },

    #[error("index {k} precedes the first valid index {start} of the family")]
    IndexBeforeStart { k: usize, start: usize },

    #[error("mu equals nu; the family has no root asymptotics")]
    DegenerateFamily,

    #[error("specialized polynomial at index {k} is identically zero")]
    ZeroSpecialization { k: usize },

    #[error("polynomial has degree zero, no roots to find")]
    ConstantPolynomial,

    #[error("all xi must share one modulus, got {0:?}")]
    UnequalRadii(Vec<String>),

    #[error("expected {expected} specialization values, got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("Berlekamp-Massey degree {numeric} disagrees with exact minimal degree {exact} after {attempts} attempts")]
    SpecializationDisagreement {
        exact: usize,
        numeric: usize,
        attempts: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
