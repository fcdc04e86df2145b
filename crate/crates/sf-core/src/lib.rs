//! Secure Force (SF) lightweight block cipher family.
//!
//! SF is a balanced Feistel cipher with five rounds, defined for 64-, 128-
//! and 192-bit blocks (the key width always equals the block width). Every
//! round operation works on 4-bit nibbles, which keeps the cipher friendly
//! to 8-bit targets; this implementation deliberately mirrors that 4-bit
//! datapath instead of packing state into machine words.
//!
//! The crate ships a canonical, versioned constant set (`v1`, embedded as a
//! text data file) holding the S-boxes, the key-expansion bit permutation
//! (P-table), the nibble transposition (T-table), the fixed GF(2) matrix
//! (FM) and the per-stage rotation amounts. Alternative constant sets can be
//! loaded from the same file format and are validated before use.

pub mod block;
pub mod cipher;
pub mod constants;
pub mod error;
pub mod hex;
pub mod kat;
pub mod schedule;
pub mod variant;

pub use block::{Block, CipherKey};
pub use cipher::{decrypt_block, decrypt_blocks, encrypt_block, encrypt_blocks};
pub use constants::{validate_constants, CipherConstants, ConstantSet, ValidationReport};
pub use error::{CipherError, HexError};
pub use schedule::{derive_round_keys, RoundKeySchedule, ROUNDS};
pub use variant::CipherVariant;
