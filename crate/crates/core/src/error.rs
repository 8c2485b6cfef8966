use thiserror::Error;

/// Errors raised by the arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} outside the supported range")]
    DegreeOutOfRange(u32),
    #[error("no irreducible polynomial of degree {0} found")]
    NoIrreducible(u32),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial degree {0} exceeds the cap of {cap}", cap = crate::ff::poly::DEGREE_CAP)]
    DegreeCap(usize),
    #[error("zero input")]
    ZeroInput,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("power series precision exhausted at {0} terms")]
    PrecisionExhausted(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("matrix is not upper triangular")]
    NotUpperTriangular,
    #[error("entry has a pole at a factor of the modulus")]
    PoleAtModulus,
    #[error("root index pair must satisfy i != j (got {0}, {0})")]
    DiagonalRoot(usize),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
