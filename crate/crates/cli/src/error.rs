use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Compute(ctqw_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{failed} validation check(s) failed")]
    Validation { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<ctqw_core::Error> for CliError {
    fn from(e: ctqw_core::Error) -> Self {
        use ctqw_core::Error as E;
        match e {
            E::InvalidParams(m) | E::InvalidArgument(m) | E::Regime(m) => CliError::Config(m),
            other => CliError::Compute(other),
        }
    }
}
