use thiserror::Error;

/// Errors raised by cipher operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CipherError {
    #[error("width mismatch: {what} is {actual_bits} bits, expected {expected_bits} bits")]
    WidthMismatch {
        what: &'static str,
        expected_bits: usize,
        actual_bits: usize,
    },
    #[error("unsupported block width {block_bits} bits for key expansion (halves must be byte-aligned)")]
    UnsupportedWidth { block_bits: usize },
    #[error("data length {len} bytes is not a multiple of the {block_bytes}-byte block")]
    NotBlockAligned { len: usize, block_bytes: usize },
    #[error("bit index {index} out of range for a {width_bits}-bit value")]
    BitIndexOutOfRange { index: usize, width_bits: usize },
    #[error("a schedule holds exactly {expected} round keys, got {actual}")]
    BadScheduleLength { expected: usize, actual: usize },
    #[error("round key {index} is {actual_bits} bits wide, expected {expected_bits}")]
    BadRoundKeyWidth {
        index: usize,
        expected_bits: usize,
        actual_bits: usize,
    },
    #[error("constant set {version:?} does not validate: {first_violation}")]
    InvalidConstants {
        version: String,
        first_violation: String,
    },
}

/// Errors raised while parsing hex strings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HexError {
    #[error("expected {expected_digits} hex digits, got {actual_digits}")]
    WrongLength {
        expected_digits: usize,
        actual_digits: usize,
    },
    #[error("invalid hex digit {found:?} at position {position}")]
    InvalidDigit { position: usize, found: char },
}
