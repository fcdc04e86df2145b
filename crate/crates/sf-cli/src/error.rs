//! Error-to-exit-code mapping. Diagnostics go to stderr only; each failure
//! class gets its own code so scripts can branch on them:
//!
//! 2 usage (clap), 3 bad hex, 4 width or variant mismatch, 5 file I/O,
//! 6 malformed image or blob, 7 invalid constant set, 8 bad parameters.

use std::path::PathBuf;

use sf_analysis::AnalysisError;
use sf_bench::BenchError;
use sf_core::{CipherError, HexError};
use sf_imagio::ImageError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Hex(#[from] HexError),
    #[error("{0}")]
    Cipher(CipherError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Image(ImageError),
    #[error("constant set: {0}")]
    Constants(String),
    #[error("{0}")]
    Params(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hex(_) => 3,
            CliError::Cipher(_) => 4,
            CliError::Io { .. } => 5,
            CliError::Image(_) => 6,
            CliError::Constants(_) => 7,
            CliError::Params(_) => 8,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<CipherError> for CliError {
    fn from(err: CipherError) -> Self {
        CliError::Cipher(err)
    }
}

impl From<ImageError> for CliError {
    fn from(err: ImageError) -> Self {
        match err {
            ImageError::Cipher(c) => CliError::Cipher(c),
            other => CliError::Image(other),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(err: AnalysisError) -> Self {
        match err {
            AnalysisError::Hex(h) => CliError::Hex(h),
            AnalysisError::Cipher(c) => CliError::Cipher(c),
            AnalysisError::WidthMismatch { .. } => CliError::Params(err.to_string()),
            other => CliError::Params(other.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(err: BenchError) -> Self {
        match err {
            BenchError::Cipher(c) => CliError::Cipher(c),
            other => CliError::Params(other.to_string()),
        }
    }
}
