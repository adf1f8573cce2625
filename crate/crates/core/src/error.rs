use thiserror::Error;

/// Errors raised by the algebra, cone and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch")]
    FieldMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("model mismatch")]
    ModelMismatch,

    #[error("contraction out of window")]
    ContractionOutOfWindow,

    #[error("not a projective point")]
    NotAProjectivePoint,

    #[error("invalid splitting window: {0}")]
    InvalidWindow(String),

    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),

    #[error("not in rank locus: rank {rank} exceeds {r}")]
    NotInRankLocus { rank: usize, r: usize },

    #[error("zero input: {0}")]
    ZeroInput(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("cube precondition fails at vertex {vertex:?}")]
    CubePrecondition { vertex: Vec<i64> },

    #[error("D0 is not ample")]
    NotAmple,

    #[error("not sufficiently ample: {0}")]
    NotSufficientlyAmple(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("enumeration budget exceeded: {required} points required, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
