//! Deterministic synthetic test images. Smooth large-scale structure plus
//! low-amplitude pseudo-noise gives a natural-looking, non-uniform histogram
//! without bundling third-party photographs.

use crate::GrayImage;

fn xorshift64(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

/// A reproducible "natural" image: diagonal gradient, a ripple and a few
/// intensity plateaus, dithered with seeded noise so blocks rarely repeat.
pub fn synthetic_natural(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut state = seed | 1;
    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let gradient = if width + height > 2 {
                ((x + y) * 200) / (width + height - 2)
            } else {
                0
            };
            let ripple = ((x * x + y * y / 2) / 7) % 23;
            let plateau = if (x / 16 + y / 16) % 3 == 0 { 20 } else { 0 };
            let noise = (xorshift64(&mut state) % 8) as usize;
            pixels.push((gradient + ripple + plateau + noise).min(255) as u8);
        }
    }
    GrayImage::new(width, height, pixels).expect("pixel count matches by construction")
}
