use sf_core::{CipherError, HexError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("blocks differ in width: {left_bits} vs {right_bits} bits")]
    WidthMismatch { left_bits: usize, right_bits: usize },
    #[error("trial specification is empty")]
    EmptyTrialSpec,
    #[error("histogram holds no samples")]
    EmptyHistogram,
    #[error("baseline entropy must be positive, got {value}")]
    NonPositiveBaseline { value: f64 },
    #[error(transparent)]
    Cipher(#[from] CipherError),
    #[error(transparent)]
    Hex(#[from] HexError),
}
