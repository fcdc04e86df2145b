use sf_core::CipherError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("byte {offset}: expected magic \"P5\" or \"P6\", found {found:?}")]
    BadMagic { offset: usize, found: String },
    #[error("byte {offset}: {reason}")]
    BadHeader { offset: usize, reason: String },
    #[error("byte {offset}: maxval {maxval} unsupported, this loader requires 255")]
    UnsupportedMaxval { offset: usize, maxval: u32 },
    #[error("byte {offset}: pixel payload truncated, expected {expected} octets but only {found} remain")]
    TruncatedPayload {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("{width}x{height} image needs {} pixels, got {pixels}", width * height)]
    DimensionMismatch {
        width: usize,
        height: usize,
        pixels: usize,
    },
    #[error("image has no pixels")]
    EmptyImage,
    #[error("artifact was produced under constant set {artifact:?}, not {expected:?}")]
    ConstantVersionMismatch { artifact: String, expected: String },
    #[error("ciphertext blob: {reason}")]
    MalformedBlob { reason: String },
    #[error(transparent)]
    Cipher(#[from] CipherError),
}
