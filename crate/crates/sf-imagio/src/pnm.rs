//! Binary netpbm parsing: PGM (P5) and PPM (P6), maxval 255 only.
//!
//! Headers tolerate arbitrary whitespace and `#` comments between tokens.
//! All errors carry the byte offset of the defect.

use crate::error::ImageError;
use crate::GrayImage;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn read_uint(&mut self, what: &str) -> Result<u32, ImageError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            value = value * 10 + (self.bytes[self.pos] - b'0') as u64;
            if value > u32::MAX as u64 {
                return Err(ImageError::BadHeader {
                    offset: start,
                    reason: format!("{what} out of range"),
                });
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ImageError::BadHeader {
                offset: start,
                reason: format!("expected decimal {what}"),
            });
        }
        Ok(value as u32)
    }
}

/// Parse a binary PGM/PPM held in memory. PPM pixels convert to grayscale
/// through integer BT.601 luma: round(0.299 R + 0.587 G + 0.114 B).
pub fn load_image(bytes: &[u8]) -> Result<GrayImage, ImageError> {
    if bytes.len() < 2 || bytes[0] != b'P' || (bytes[1] != b'5' && bytes[1] != b'6') {
        let found = bytes
            .iter()
            .take(2)
            .map(|&b| b as char)
            .collect::<String>();
        return Err(ImageError::BadMagic { offset: 0, found });
    }
    let color = bytes[1] == b'6';
    let mut cursor = Cursor { bytes, pos: 2 };

    let width = cursor.read_uint("width")? as usize;
    let height = cursor.read_uint("height")? as usize;
    let maxval_at = {
        cursor.skip_whitespace_and_comments();
        cursor.pos
    };
    let maxval = cursor.read_uint("maxval")?;
    if maxval != 255 {
        return Err(ImageError::UnsupportedMaxval {
            offset: maxval_at,
            maxval,
        });
    }
    if width == 0 || height == 0 {
        return Err(ImageError::EmptyImage);
    }

    // Exactly one whitespace byte separates the header from the payload.
    if cursor.pos >= bytes.len() || !bytes[cursor.pos].is_ascii_whitespace() {
        return Err(ImageError::BadHeader {
            offset: cursor.pos,
            reason: "expected single whitespace byte before pixel payload".to_string(),
        });
    }
    cursor.pos += 1;

    let per_pixel = if color { 3 } else { 1 };
    let expected = width * height * per_pixel;
    let payload = &bytes[cursor.pos..];
    if payload.len() < expected {
        return Err(ImageError::TruncatedPayload {
            offset: cursor.pos,
            expected,
            found: payload.len(),
        });
    }
    let payload = &payload[..expected];

    let pixels = if color {
        payload
            .chunks_exact(3)
            .map(|rgb| luma(rgb[0], rgb[1], rgb[2]))
            .collect()
    } else {
        payload.to_vec()
    };
    GrayImage::new(width, height, pixels)
}

/// Integer BT.601 luma with round-half-up.
fn luma(r: u8, g: u8, b: u8) -> u8 {
    let weighted = 299 * r as u32 + 587 * g as u32 + 114 * b as u32;
    ((weighted + 500) / 1000) as u8
}

/// Serialize as binary PGM.
pub fn write_p5(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.pixels());
    out
}
