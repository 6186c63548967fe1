use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),
    #[error("could not factor cofactor {0}")]
    Unfactored(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular (det {0})")]
    NotUnimodular(String),
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid field data: {0}")]
    InvalidField(String),
    #[error("field {0} is not totally real")]
    NotTotallyReal(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("trace images differ: {0} vs {1}")]
    TraceImageMismatch(String, String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("map is not an isometry: {0}")]
    NotAnIsometry(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("prime {0} not present in ramification data")]
    PrimeNotListed(u64),
    #[error("degenerate resolvent (discriminant 0)")]
    Degenerate,
    #[error("root refinement did not converge within {0} steps")]
    RefinementBudget(usize),
    #[error("numeric error bound {bound:e} exceeds {limit:e}")]
    PrecisionFailure { bound: f64, limit: f64 },
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("{file}: {msg}")]
    Fixture { file: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
