use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible quadratic fields: sqrt({0}) and sqrt({1})")]
    IncompatibleFields(i64, i64),
    #[error("value is not in the requested field: {0}")]
    NotInField(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Jacobi identity fails on (e{0}, e{1}, e{2})")]
    Jacobi(usize, usize, usize),
    #[error("not a complex structure: {0}")]
    NotComplexStructure(String),
    #[error("complex structure is not integrable: N(e{0}, e{1}) != 0")]
    NotIntegrable(usize, usize),
    #[error("Lie algebra is not solvable")]
    NotSolvable,
    #[error("Lie algebra is not unimodular")]
    NotUnimodular,
    #[error("not a derivation: {0}")]
    NotDerivation(String),
    #[error("derivations do not commute: {0}")]
    NotCommuting(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("validation equation `{equation}` fails: {witness}")]
    Validation { equation: String, witness: String },
    #[error("not exactly evaluable: {0}")]
    NotExactlyEvaluable(String),
    #[error("matrix is singular")]
    Singular,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Input(e.to_string())
    }
}
