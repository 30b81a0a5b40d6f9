use hironaka::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error in {context} at line {line}, column {column}: {message}")]
    Parse { context: String, line: usize, column: usize, message: String },
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Precondition(_) => 3,
            CliError::Integrity(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Usage(m) => CliError::Usage(m),
            CoreError::Arith(a) => CliError::Usage(a.to_string()),
            CoreError::Budget(m) => {
                CliError::Usage(format!("{m}; the instance is too large for the division budget"))
            }
            e @ (CoreError::WholeRing | CoreError::Inapplicable(_)) => CliError::Precondition(e.to_string()),
            CoreError::Integrity(m) => CliError::Integrity(m),
        }
    }
}
