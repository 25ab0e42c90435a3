use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("group of order {order} is too large to enumerate (limit {limit})")]
    TooLarge { order: String, limit: u64 },

    #[error("{what} exceeds gate: {size} > {gate}")]
    GateExceeded {
        what: &'static str,
        size: u64,
        gate: u64,
    },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("corrupt catalog file: {0}")]
    CorruptCatalog(String),

    #[error("catalog version mismatch: {0}")]
    VersionMismatch(String),

    #[error("incoherent inverse system: {0}")]
    Incoherent(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
