//! Fixed-width bit vectors flowing through the cipher.
//!
//! Bit index 0 is the most significant bit of the first octet, matching the
//! order in which a hex string reads. Nibble 0 is the high nibble of octet 0.

use crate::error::{CipherError, HexError};
use crate::hex::{parse_hex, to_hex_upper};
use crate::variant::CipherVariant;

/// A plaintext or ciphertext block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    bytes: Vec<u8>,
}

/// A cipher key. Same width rules as [`Block`]; kept as a separate type so
/// key and data cannot be swapped silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherKey {
    bytes: Vec<u8>,
}

macro_rules! bitvec_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn from_bytes(bytes: Vec<u8>) -> Self {
                Self { bytes }
            }

            pub fn from_hex(text: &str, expected_bits: usize) -> Result<Self, HexError> {
                Ok(Self {
                    bytes: parse_hex(text, expected_bits)?,
                })
            }

            pub fn for_variant(bytes: Vec<u8>, variant: CipherVariant) -> Result<Self, CipherError> {
                if bytes.len() * 8 != variant.block_bits() {
                    return Err(CipherError::WidthMismatch {
                        what: stringify!($ty),
                        expected_bits: variant.block_bits(),
                        actual_bits: bytes.len() * 8,
                    });
                }
                Ok(Self { bytes })
            }

            pub fn bits(&self) -> usize {
                self.bytes.len() * 8
            }

            pub fn as_bytes(&self) -> &[u8] {
                &self.bytes
            }

            pub fn into_bytes(self) -> Vec<u8> {
                self.bytes
            }

            pub fn to_hex(&self) -> String {
                to_hex_upper(&self.bytes)
            }

            /// Copy with bit `index` flipped (0 = MSB of octet 0).
            pub fn with_bit_flipped(&self, index: usize) -> Result<Self, CipherError> {
                if index >= self.bits() {
                    return Err(CipherError::BitIndexOutOfRange {
                        index,
                        width_bits: self.bits(),
                    });
                }
                let mut bytes = self.bytes.clone();
                bytes[index / 8] ^= 0x80 >> (index % 8);
                Ok(Self { bytes })
            }
        }
    };
}

bitvec_impl!(Block);
bitvec_impl!(CipherKey);
