use std::path::PathBuf;

use invmod::ForbiddenWitness;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotSwitchCograph(ForbiddenWitness),
    #[error("{0}")]
    OracleCap(invmod::Error),
    #[error("{0}")]
    Core(invmod::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        CliError::Parse { line, msg: msg.into() }
    }

    /// Short machine-readable tag printed after `error:`.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::NotSwitchCograph(_) => "not-switch-cograph",
            CliError::OracleCap(_) => "oracle-cap",
            CliError::Core(_) => "invalid",
            CliError::Io { .. } => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::NotSwitchCograph(_) => 3,
            CliError::OracleCap(_) => 4,
            CliError::Usage(_) | CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<invmod::Error> for CliError {
    fn from(e: invmod::Error) -> Self {
        match e {
            invmod::Error::NotASwitchCograph(w) => CliError::NotSwitchCograph(w),
            invmod::Error::OracleCap { .. } => CliError::OracleCap(e),
            e => CliError::Core(e),
        }
    }
}
