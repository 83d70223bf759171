use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const UNSOLVABLE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const BUDGET: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(#[from] frelat_core::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {candidates} candidates, budget {budget}")]
    Budget { candidates: u128, budget: u128 },
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Budget { .. } => exit::BUDGET,
            CliError::Invalid(frelat_core::Error::BudgetExceeded { .. }) => exit::BUDGET,
            CliError::Invalid(frelat_core::Error::Unsolvable(_)) => exit::UNSOLVABLE,
            _ => exit::INPUT,
        }
    }
}
