use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Cartan type {0}")]
    UnsupportedType(String),

    #[error("cannot parse Cartan type `{0}` (expected e.g. A3, B2, D4)")]
    BadTypeName(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("spectral point is not generic: {0}")]
    NonGeneric(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("generator {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("malformed word `{0}`")]
    BadWord(String),

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<u8>),

    #[error("root {0:?} is not a positive root")]
    NotPositive(Vec<i32>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("evaluator failed at a generic point: {0}")]
    Evaluator(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
