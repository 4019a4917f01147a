use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    #[error(
        "matrix is not square or has the wrong number of entries: expected {expected}, got {got}"
    )]
    BadShape { expected: usize, got: usize },

    #[error("not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("state is not normalised (norm {0})")]
    NotNormalized(f64),

    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("channel requires a qubit input, got dimension {0}")]
    NotQubit(usize),

    #[error("numerical excess {0:e} beyond clamping tolerance")]
    NumericalExcess(f64),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph construction failed: {0}")]
    Graph(String),

    #[error("empty path")]
    EmptyPath,

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
