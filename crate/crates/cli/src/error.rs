use std::process::ExitCode;

use eigenconv::Error;

/// Failures mapped onto the process exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Some identity checks failed; the report was still written.
    Verify(Vec<String>),
    /// Unreadable or malformed input.
    Parse(String),
    /// Two inputs disagree on ts or period.
    Mismatch(String),
    /// Alias window or another numerical precondition was violated.
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verify(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Precondition(_) => 4,
        })
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Verify(ids) => format!("{} identity check(s) failed: {}", ids.len(), ids.join(", ")),
            CliError::Parse(m) | CliError::Mismatch(m) | CliError::Precondition(m) => m.clone(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::StepMismatch { .. } | Error::PeriodMismatch { .. } => CliError::Mismatch(msg),
            Error::InvalidStep(_) | Error::EmptyPeriod | Error::ParamKind { .. } => CliError::Parse(msg),
            _ => CliError::Precondition(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(format!("I/O error: {e}"))
    }
}
