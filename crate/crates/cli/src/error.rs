use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or malformed input; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qel_core::Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    /// Some verification check failed; exit code 1.
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(qel_core::Error::Numerical(_) | qel_core::Error::Truncation { .. }) => ExitCode::from(1),
            // invalid parameters surface as core errors at construction time
            CliError::Usage(_) | CliError::Core(_) => ExitCode::from(2),
            CliError::Io { .. } | CliError::ChecksFailed(_) => ExitCode::from(1),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
