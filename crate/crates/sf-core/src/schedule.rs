//! Key expansion: five bijective stages over a block-width working register,
//! each stage's output doubling as that round's key.
//!
//! Stage order: nibble-wise XOR/XNOR mixing of the register halves, left
//! rotation by the stage's `ls` amount, FM multiplication of every nibble
//! over GF(2), bit permutation through the P-table, nibble transposition
//! through the T-table. Every stage is invertible, so distinct cipher keys
//! always produce distinct schedules.

use crate::block::CipherKey;
use crate::constants::CipherConstants;
use crate::error::CipherError;

/// The SF family always runs five rounds, one round key each.
pub const ROUNDS: usize = 5;

/// Five round keys, each as wide as the block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundKeySchedule {
    block_bits: usize,
    round_keys: Vec<Vec<u8>>,
}

impl RoundKeySchedule {
    /// Build a schedule from raw round keys (all the same width). Used by
    /// reduced-width test instances; normal callers go through
    /// [`derive_round_keys`].
    pub fn from_round_keys(round_keys: Vec<Vec<u8>>) -> Result<Self, CipherError> {
        if round_keys.len() != ROUNDS {
            return Err(CipherError::BadScheduleLength {
                expected: ROUNDS,
                actual: round_keys.len(),
            });
        }
        let block_bits = round_keys[0].len() * 8;
        for (index, rk) in round_keys.iter().enumerate() {
            if rk.len() * 8 != block_bits {
                return Err(CipherError::BadRoundKeyWidth {
                    index,
                    expected_bits: block_bits,
                    actual_bits: rk.len() * 8,
                });
            }
        }
        Ok(RoundKeySchedule {
            block_bits,
            round_keys,
        })
    }

    pub fn block_bits(&self) -> usize {
        self.block_bits
    }

    pub fn round_keys(&self) -> &[Vec<u8>] {
        &self.round_keys
    }
}

/// Run the expansion pipeline and collect the register after each stage.
pub fn derive_round_keys(
    key: &CipherKey,
    constants: &CipherConstants,
) -> Result<RoundKeySchedule, CipherError> {
    let bits = constants.block_bits();
    if key.bits() != bits {
        return Err(CipherError::WidthMismatch {
            what: "CipherKey",
            expected_bits: bits,
            actual_bits: key.bits(),
        });
    }
    if (bits / 8) % 2 != 0 {
        return Err(CipherError::UnsupportedWidth { block_bits: bits });
    }

    let mut register = key.as_bytes().to_vec();
    let mut round_keys = Vec::with_capacity(ROUNDS);
    for stage in 0..ROUNDS {
        register = mix_halves(&register);
        register = rotate_left_bits(&register, constants.ls_amounts()[stage] as usize);
        apply_fm(&mut register, constants.fm_map());
        register = permute_bits(&register, constants.p_table());
        register = transpose_nibbles(&register, constants.t_table());
        round_keys.push(register.clone());
    }
    Ok(RoundKeySchedule {
        block_bits: bits,
        round_keys,
    })
}

/// (hi, lo) -> (lo, hi XOR lo) with XNOR instead of XOR on odd nibbles.
/// Odd nibble positions are the low nibble of each byte, so the XNOR
/// complement reduces to `^ 0x0F` per byte.
fn mix_halves(register: &[u8]) -> Vec<u8> {
    let half = register.len() / 2;
    let (hi, lo) = register.split_at(half);
    let mut out = Vec::with_capacity(register.len());
    out.extend_from_slice(lo);
    out.extend(hi.iter().zip(lo).map(|(h, l)| (h ^ l) ^ 0x0F));
    out
}

/// Left-rotate an octet string by `amount` bits (bit 0 = MSB of octet 0).
fn rotate_left_bits(bytes: &[u8], amount: usize) -> Vec<u8> {
    let len = bytes.len();
    let total = len * 8;
    let amount = amount % total;
    let byte_shift = amount / 8;
    let bit_shift = amount % 8;
    (0..len)
        .map(|i| {
            let a = bytes[(i + byte_shift) % len];
            if bit_shift == 0 {
                a
            } else {
                let b = bytes[(i + byte_shift + 1) % len];
                (a << bit_shift) | (b >> (8 - bit_shift))
            }
        })
        .collect()
}

/// Multiply every nibble by FM over GF(2), via the precomputed map.
fn apply_fm(register: &mut [u8], fm_map: &[u8; 16]) {
    for byte in register.iter_mut() {
        let hi = fm_map[(*byte >> 4) as usize];
        let lo = fm_map[(*byte & 0x0F) as usize];
        *byte = (hi << 4) | lo;
    }
}

/// Output bit j takes input bit `p_table[j]`.
fn permute_bits(bytes: &[u8], p_table: &[u16]) -> Vec<u8> {
    let mut out = vec![0u8; bytes.len()];
    for (j, &src) in p_table.iter().enumerate() {
        let src = src as usize;
        let bit = (bytes[src / 8] >> (7 - src % 8)) & 1;
        out[j / 8] |= bit << (7 - j % 8);
    }
    out
}

/// Output nibble j takes input nibble `t_table[j]`.
fn transpose_nibbles(bytes: &[u8], t_table: &[u16]) -> Vec<u8> {
    let read = |i: usize| -> u8 {
        let byte = bytes[i / 2];
        if i % 2 == 0 {
            byte >> 4
        } else {
            byte & 0x0F
        }
    };
    let mut out = vec![0u8; bytes.len()];
    for (j, &src) in t_table.iter().enumerate() {
        let nib = read(src as usize);
        if j % 2 == 0 {
            out[j / 2] |= nib << 4;
        } else {
            out[j / 2] |= nib;
        }
    }
    out
}
