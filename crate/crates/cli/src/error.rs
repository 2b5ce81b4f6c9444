use expsumlab_core::expsum::ExpSumError;
use expsumlab_core::ffield::FieldError;
use expsumlab_core::lfun::LfunError;
use expsumlab_core::padic::PadicError;
use expsumlab_core::predict::PredictError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const SCHEMA: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const UNCERTIFIED: i32 = 4;
    /// A verify case failed or an `lfun` prediction did not match.
    pub const FAILED: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid job: {0}")]
    Schema(String),
    #[error("{0}")]
    Budget(String),
    #[error("not certified: {0}")]
    Uncertified(String),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => exit::SCHEMA,
            CliError::Budget(_) => exit::BUDGET,
            CliError::Uncertified(_) => exit::UNCERTIFIED,
            CliError::Io { .. } | CliError::Other(_) => exit::OTHER,
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<LfunError> for CliError {
    fn from(e: LfunError) -> Self {
        match e {
            LfunError::InsufficientOrder { .. } | LfunError::NoFit { .. } | LfunError::Uncertified { .. } => {
                CliError::Uncertified(e.to_string())
            }
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<ExpSumError> for CliError {
    fn from(e: ExpSumError) -> Self {
        match e {
            ExpSumError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            ExpSumError::Reconstruction(l) => l.into(),
            ExpSumError::Field(f) => f.into(),
            ExpSumError::Malformed(_) | ExpSumError::Parse(_) | ExpSumError::BadLevel => {
                CliError::Schema(e.to_string())
            }
        }
    }
}

impl From<PredictError> for CliError {
    fn from(e: PredictError) -> Self {
        match e {
            PredictError::Invalid(_) => CliError::Schema(e.to_string()),
            PredictError::Overflow => CliError::Other(e.to_string()),
        }
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::NotStabilized | PadicError::NonIntegralIndex(_) | PadicError::TooFewSamples => {
                CliError::Uncertified(e.to_string())
            }
            _ => CliError::Schema(e.to_string()),
        }
    }
}
