use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator x{index} exceeds rank {rank}")]
    IndexExceedsRank { index: usize, rank: usize },

    #[error("substitution has no image for generator x{0}")]
    MissingGenerator(usize),

    #[error("word would have {0} syllables, refusing to expand")]
    WordTooLong(u128),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid prime power {p}^{m}")]
    InvalidPrimePower { p: u64, m: u32 },

    #[error("zero has no p-adic decomposition")]
    ZeroExponent,

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("invalid group specification `{spec}`: {reason}")]
    InvalidGroupSpec { spec: String, reason: String },

    #[error("group of order {0} is not abelian")]
    NotAbelian(usize),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("group is not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("group is outside nilpotency class 2: {0}")]
    ClassTooLarge(String),

    #[error("group is not in the class-2 exponent-{modulus} variety over p = {p}: {reason}")]
    OutsideVariety { p: u64, modulus: u64, reason: String },

    #[error("tuple has length {got}, word has rank {expected}")]
    TupleLength { expected: usize, got: usize },

    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("enumeration needs {required} word evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("count overflow")]
    Overflow,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("io: {0}")]
    Io(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
