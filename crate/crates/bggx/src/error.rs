use bggx_core::Error;

/// Errors surfaced by the command line, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// `2` for bad arguments, `3` for bad input data, `1` for an internal
    /// consistency failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Io(_) | CliError::Json(_) => 3,
            CliError::Core(e) => match e {
                Error::Anticommutation { .. } | Error::Data(_) | Error::Parse(_) => 3,
                Error::Computation(_) => 1,
                _ => 2,
            },
        }
    }
}
