use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch in {context}: expected {expected}, got {found}")]
    ArityMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range 1..={max} in {context}")]
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        max: usize,
    },

    #[error("no s < {budget} satisfies E(..)(s) = 0 (search inconclusive)")]
    BudgetExhausted { budget: u64 },

    #[error("precision must be positive, got {0}")]
    NonPositivePrecision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty cover")]
    EmptyCover,

    #[error("space mismatch: {found} used where {expected} is required")]
    SpaceMismatch { expected: String, found: String },
}

impl Error {
    /// Process exit status for the CLI: 3 for an inconclusive search, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExhausted { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_arity(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ArityMismatch {
            context,
            expected,
            found,
        })
    }
}
