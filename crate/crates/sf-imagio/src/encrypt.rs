//! ECB image encryption artifacts and their on-disk blob format.
//!
//! Blob layout, 16-octet header followed by the raw padded ciphertext:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "SFCB"
//! 4       1     format version, currently 1
//! 5       1     variant id: block width in octets (8, 16 or 24)
//! 6       1     pad length in octets, strictly less than the block size
//! 7       1     reserved, 0
//! 8       4     FNV-1a (32-bit) of the constant-set version string, LE
//! 12      2     image width in pixels, u16 LE
//! 14      2     image height in pixels, u16 LE
//! ```

use sf_core::{decrypt_blocks, derive_round_keys, encrypt_blocks, CipherConstants, CipherKey};

use crate::error::ImageError;
use crate::GrayImage;

const BLOB_MAGIC: &[u8; 4] = b"SFCB";
const BLOB_FORMAT_VERSION: u8 = 1;
pub const BLOB_HEADER_LEN: usize = 16;

/// The full result of encrypting one image: what you can display and what
/// you need to get the pixels back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncryptedImageArtifact {
    display_image: GrayImage,
    ciphertext_blob: Vec<u8>,
    pad_length: usize,
    block_bits: usize,
    constant_version: String,
}

impl EncryptedImageArtifact {
    /// Ciphertext truncated to the source dimensions, for inspection and
    /// histogram work.
    pub fn display_image(&self) -> &GrayImage {
        &self.display_image
    }

    /// The exact padded ciphertext; decryption is lossless only through
    /// this.
    pub fn ciphertext_blob(&self) -> &[u8] {
        &self.ciphertext_blob
    }

    pub fn pad_length(&self) -> usize {
        self.pad_length
    }

    pub fn block_bits(&self) -> usize {
        self.block_bits
    }

    pub fn constant_version(&self) -> &str {
        &self.constant_version
    }
}

/// Serialize the image row-major, zero-pad to a whole number of blocks,
/// encrypt each block independently.
pub fn encrypt_image(
    image: &GrayImage,
    key: &CipherKey,
    constants: &CipherConstants,
) -> Result<EncryptedImageArtifact, ImageError> {
    if image.pixel_count() == 0 {
        return Err(ImageError::EmptyImage);
    }
    let block_bytes = constants.block_bytes();
    let mut data = image.pixels().to_vec();
    let pad_length = (block_bytes - data.len() % block_bytes) % block_bytes;
    data.resize(data.len() + pad_length, 0);

    let schedule = derive_round_keys(key, constants)?;
    let ciphertext_blob = encrypt_blocks(&data, &schedule, constants)?;

    let display_pixels = ciphertext_blob[..image.pixel_count()].to_vec();
    let display_image = GrayImage::new(image.width(), image.height(), display_pixels)?;
    Ok(EncryptedImageArtifact {
        display_image,
        ciphertext_blob,
        pad_length,
        block_bits: constants.block_bits(),
        constant_version: constants.version().to_string(),
    })
}

/// Exact inverse of [`encrypt_image`]: decrypt the blob, strip the pad,
/// reshape to the source dimensions.
pub fn decrypt_image(
    artifact: &EncryptedImageArtifact,
    key: &CipherKey,
    constants: &CipherConstants,
) -> Result<GrayImage, ImageError> {
    if constants.version() != artifact.constant_version {
        return Err(ImageError::ConstantVersionMismatch {
            artifact: artifact.constant_version.clone(),
            expected: constants.version().to_string(),
        });
    }
    if constants.block_bits() != artifact.block_bits {
        return Err(ImageError::Cipher(sf_core::CipherError::WidthMismatch {
            what: "EncryptedImageArtifact",
            expected_bits: constants.block_bits(),
            actual_bits: artifact.block_bits,
        }));
    }
    let schedule = derive_round_keys(key, constants)?;
    let mut data = decrypt_blocks(&artifact.ciphertext_blob, &schedule, constants)?;
    data.truncate(data.len() - artifact.pad_length);
    GrayImage::new(
        artifact.display_image.width(),
        artifact.display_image.height(),
        data,
    )
}

fn fnv1a32(text: &str) -> u32 {
    let mut hash: u32 = 0x811C_9DC5;
    for byte in text.bytes() {
        hash ^= byte as u32;
        hash = hash.wrapping_mul(0x0100_0193);
    }
    hash
}

/// Encode an artifact as a blob file image.
pub fn write_blob(artifact: &EncryptedImageArtifact) -> Vec<u8> {
    let mut out = Vec::with_capacity(BLOB_HEADER_LEN + artifact.ciphertext_blob.len());
    out.extend_from_slice(BLOB_MAGIC);
    out.push(BLOB_FORMAT_VERSION);
    out.push((artifact.block_bits / 8) as u8);
    out.push(artifact.pad_length as u8);
    out.push(0);
    out.extend_from_slice(&fnv1a32(&artifact.constant_version).to_le_bytes());
    out.extend_from_slice(&(artifact.display_image.width() as u16).to_le_bytes());
    out.extend_from_slice(&(artifact.display_image.height() as u16).to_le_bytes());
    out.extend_from_slice(&artifact.ciphertext_blob);
    out
}

/// Decode a blob produced by [`write_blob`]. The constant set must carry
/// the same version the blob was written under; the stored hash guards
/// against silently decrypting with the wrong tables.
pub fn read_blob(bytes: &[u8], constants: &CipherConstants) -> Result<EncryptedImageArtifact, ImageError> {
    let malformed = |reason: &str| ImageError::MalformedBlob {
        reason: reason.to_string(),
    };
    if bytes.len() < BLOB_HEADER_LEN {
        return Err(malformed("shorter than the 16-octet header"));
    }
    if &bytes[0..4] != BLOB_MAGIC {
        return Err(malformed("bad magic, expected \"SFCB\""));
    }
    if bytes[4] != BLOB_FORMAT_VERSION {
        return Err(malformed(&format!("unsupported format version {}", bytes[4])));
    }
    let block_bytes = bytes[5] as usize;
    let pad_length = bytes[6] as usize;
    if block_bytes == 0 || pad_length >= block_bytes {
        return Err(malformed("pad length must be smaller than the block"));
    }
    let stored_hash = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if stored_hash != fnv1a32(constants.version()) {
        return Err(ImageError::ConstantVersionMismatch {
            artifact: format!("fnv1a32 {stored_hash:#010X}"),
            expected: constants.version().to_string(),
        });
    }
    if block_bytes * 8 != constants.block_bits() {
        return Err(ImageError::Cipher(sf_core::CipherError::WidthMismatch {
            what: "ciphertext blob",
            expected_bits: constants.block_bits(),
            actual_bits: block_bytes * 8,
        }));
    }
    let width = u16::from_le_bytes(bytes[12..14].try_into().unwrap()) as usize;
    let height = u16::from_le_bytes(bytes[14..16].try_into().unwrap()) as usize;
    let ciphertext_blob = bytes[BLOB_HEADER_LEN..].to_vec();
    if ciphertext_blob.len() % block_bytes != 0 {
        return Err(malformed("ciphertext length is not a whole number of blocks"));
    }
    if ciphertext_blob.len() != width * height + pad_length {
        return Err(malformed("ciphertext length does not match dimensions plus pad"));
    }
    let display_image = GrayImage::new(width, height, ciphertext_blob[..width * height].to_vec())?;
    Ok(EncryptedImageArtifact {
        display_image,
        ciphertext_blob,
        pad_length,
        block_bits: block_bytes * 8,
        constant_version: constants.version().to_string(),
    })
}
