use std::io;

use corners_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Argument(String),
    #[error("cache file {path} is corrupt: {reason}")]
    CacheCorrupt { path: String, reason: String },
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) | CliError::Argument(_) => 2,
            CliError::CacheCorrupt { .. } => 3,
            CliError::Budget(_) => 5,
            CliError::Core(e) => match e {
                CoreError::TooLarge { .. } => 4,
                CoreError::VerificationFailed { .. } => 6,
                _ => 2,
            },
        }
    }
}

pub const EXIT_CODES: &str = "\
Exit status:
  0  success
  1  I/O error
  2  usage or argument error
  3  corrupt cache file (nothing written)
  4  instance too large
  5  search budget exhausted (partial result still printed)
  6  verification failure";
