use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("no default modulus for p={p} m={m}; supply one explicitly")]
    MissingModulus { p: u32, m: u32 },
    #[error("field order {0} exceeds the supported maximum of 1024")]
    FieldTooLarge(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element {value} out of range for field of order {q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("generator matrix has rank {rank}, expected {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vector is not a codeword of the code")]
    NotACodeword,
    #[error("{what}: {needed} exceeds guard limit {limit}")]
    GuardExceeded { what: &'static str, needed: u128, limit: u64 },
    #[error("search budget exceeded: {needed} evaluations needed, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
