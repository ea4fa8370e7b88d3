use std::path::PathBuf;
use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("cannot read config {path}: {source}")]
    ConfigRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical blow-up: {0}")]
    Blowup(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("self-test failed: {0} check(s) did not pass")]
    SelfTest(usize),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 1 self-test failure, 2 config, 3 blow-up, 4 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::SelfTest(_) => 1,
            CliError::Config(_) | CliError::ConfigRead { .. } => 2,
            CliError::Blowup(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn to_exit_code(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

impl From<fnls_core::Error> for CliError {
    fn from(e: fnls_core::Error) -> Self {
        match e {
            fnls_core::Error::NumericalBlowup { .. } => CliError::Blowup(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
