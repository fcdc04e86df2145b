//! Image ingestion and blockwise image encryption.
//!
//! Images are 8-bit grayscale, loaded from binary PGM (P5) directly or from
//! binary PPM (P6) through integer BT.601 luma conversion. Encryption is
//! deliberately plain ECB over the row-major pixel stream: each block is
//! encrypted independently, which makes the cipher's own diffusion the only
//! thing the downstream statistics can see. That is an analysis choice, not
//! a confidentiality recommendation.

pub mod encrypt;
pub mod error;
pub mod pattern;
pub mod pnm;

pub use encrypt::{decrypt_image, encrypt_image, read_blob, write_blob, EncryptedImageArtifact};
pub use error::ImageError;
pub use pnm::{load_image, write_p5};

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, ImageError> {
        if pixels.len() != width * height {
            return Err(ImageError::DimensionMismatch {
                width,
                height,
                pixels: pixels.len(),
            });
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(matches!(
            GrayImage::new(3, 2, vec![0; 5]),
            Err(ImageError::DimensionMismatch { width: 3, height: 2, pixels: 5 })
        ));
        assert!(GrayImage::new(3, 2, vec![0; 6]).is_ok());
    }
}
