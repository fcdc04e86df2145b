//! Single-bit-flip avalanche trials and their aggregation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sf_core::{
    derive_round_keys, encrypt_block, Block, CipherConstants, CipherKey, CipherVariant,
};

use crate::error::AnalysisError;
use crate::ser_round4;

/// Which input object receives the bit flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FlipTarget {
    Key,
    Plaintext,
}

/// Count of differing bit positions between two equal-width blocks.
pub fn hamming_distance(a: &Block, b: &Block) -> Result<u32, AnalysisError> {
    if a.bits() != b.bits() {
        return Err(AnalysisError::WidthMismatch {
            left_bits: a.bits(),
            right_bits: b.bits(),
        });
    }
    Ok(a.as_bytes()
        .iter()
        .zip(b.as_bytes())
        .map(|(x, y)| (x ^ y).count_ones())
        .sum())
}

/// One bit-flip experiment: both ciphertexts and the changed-bit ratio.
#[derive(Debug, Clone, Serialize)]
pub struct AvalancheTrial {
    pub key_hex: String,
    pub plaintext_hex: String,
    pub flip_target: FlipTarget,
    pub bit_index: usize,
    #[serde(serialize_with = "ser_block_hex")]
    pub ciphertext_a: Block,
    #[serde(serialize_with = "ser_block_hex")]
    pub ciphertext_b: Block,
    #[serde(serialize_with = "ser_round4")]
    pub ratio: f64,
}

fn ser_block_hex<S: serde::Serializer>(block: &Block, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&block.to_hex())
}

/// Encrypt `(key, plaintext)` and its single-bit-flipped counterpart;
/// the inputs themselves are never mutated.
pub fn avalanche_trial(
    key: &CipherKey,
    plaintext: &Block,
    flip_target: FlipTarget,
    bit_index: usize,
    constants: &CipherConstants,
) -> Result<AvalancheTrial, AnalysisError> {
    let schedule = derive_round_keys(key, constants)?;
    let ciphertext_a = encrypt_block(plaintext, &schedule, constants)?;
    let ciphertext_b = match flip_target {
        FlipTarget::Key => {
            let flipped = key.with_bit_flipped(bit_index)?;
            let schedule_b = derive_round_keys(&flipped, constants)?;
            encrypt_block(plaintext, &schedule_b, constants)?
        }
        FlipTarget::Plaintext => {
            let flipped = plaintext.with_bit_flipped(bit_index)?;
            encrypt_block(&flipped, &schedule, constants)?
        }
    };
    let distance = hamming_distance(&ciphertext_a, &ciphertext_b)?;
    let ratio = distance as f64 / constants.block_bits() as f64;
    Ok(AvalancheTrial {
        key_hex: key.to_hex(),
        plaintext_hex: plaintext.to_hex(),
        flip_target,
        bit_index,
        ciphertext_a,
        ciphertext_b,
        ratio,
    })
}

/// One row of an explicit trial protocol.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialDef {
    pub key_hex: String,
    pub plaintext_hex: String,
    pub flip_target: FlipTarget,
    pub bit_index: usize,
}

/// How a suite chooses its trials: an explicit protocol or seeded random
/// sampling with key and plaintext flips interleaved.
#[derive(Debug, Clone)]
pub enum TrialSpec {
    Explicit(Vec<TrialDef>),
    Random { count: usize },
}

/// Aggregated suite result.
#[derive(Debug, Clone, Serialize)]
pub struct AvalancheReport {
    pub variant: String,
    pub block_bits: usize,
    pub trial_count: usize,
    #[serde(serialize_with = "ser_round4")]
    pub mean_ratio: f64,
    pub trials: Vec<AvalancheTrial>,
}

/// Arithmetic mean of trial ratios; the single aggregation path every
/// report goes through.
pub fn mean_ratio(ratios: &[f64]) -> Result<f64, AnalysisError> {
    if ratios.is_empty() {
        return Err(AnalysisError::EmptyTrialSpec);
    }
    Ok(ratios.iter().sum::<f64>() / ratios.len() as f64)
}

/// Run every trial of the spec and aggregate. Deterministic for a fixed
/// `rng_seed`; trials appear in execution order.
pub fn avalanche_suite(
    variant: CipherVariant,
    constants: &CipherConstants,
    spec: &TrialSpec,
    rng_seed: u64,
) -> Result<AvalancheReport, AnalysisError> {
    let trials = match spec {
        TrialSpec::Explicit(defs) => {
            if defs.is_empty() {
                return Err(AnalysisError::EmptyTrialSpec);
            }
            let mut trials = Vec::with_capacity(defs.len());
            for def in defs {
                let key = CipherKey::from_hex(&def.key_hex, variant.key_bits())?;
                let pt = Block::from_hex(&def.plaintext_hex, variant.block_bits())?;
                trials.push(avalanche_trial(
                    &key,
                    &pt,
                    def.flip_target,
                    def.bit_index,
                    constants,
                )?);
            }
            trials
        }
        TrialSpec::Random { count } => {
            if *count == 0 {
                return Err(AnalysisError::EmptyTrialSpec);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            let bytes = variant.block_bytes();
            let mut trials = Vec::with_capacity(*count);
            for i in 0..*count {
                let key = CipherKey::from_bytes((0..bytes).map(|_| rng.gen()).collect());
                let pt = Block::from_bytes((0..bytes).map(|_| rng.gen()).collect());
                let flip_target = if i % 2 == 0 {
                    FlipTarget::Key
                } else {
                    FlipTarget::Plaintext
                };
                let bit_index = rng.gen_range(0..variant.block_bits());
                trials.push(avalanche_trial(&key, &pt, flip_target, bit_index, constants)?);
            }
            trials
        }
    };
    let ratios: Vec<f64> = trials.iter().map(|t| t.ratio).collect();
    Ok(AvalancheReport {
        variant: variant.name().to_string(),
        block_bits: variant.block_bits(),
        trial_count: trials.len(),
        mean_ratio: mean_ratio(&ratios)?,
        trials,
    })
}

/// The fixed four-trial characterization protocol: two key flips over the
/// all-ones key and the customary sample block, then two plaintext flips
/// with the roles exchanged. Flip positions are pinned per variant.
pub fn four_flip_preset(variant: CipherVariant) -> Vec<TrialDef> {
    let reps = variant.block_bits() / 64;
    let ones = "F".repeat(16 * reps);
    let sample = "000A4A6DE8DB6667".repeat(reps);
    let (key_bits, pt_bits) = match variant {
        CipherVariant::Sf64 => ([24, 25], [42, 43]),
        CipherVariant::Sf128 => ([45, 39], [60, 32]),
        CipherVariant::Sf192 => ([33, 42], [50, 51]),
    };
    vec![
        TrialDef {
            key_hex: ones.clone(),
            plaintext_hex: sample.clone(),
            flip_target: FlipTarget::Key,
            bit_index: key_bits[0],
        },
        TrialDef {
            key_hex: ones.clone(),
            plaintext_hex: sample.clone(),
            flip_target: FlipTarget::Key,
            bit_index: key_bits[1],
        },
        TrialDef {
            key_hex: sample.clone(),
            plaintext_hex: ones.clone(),
            flip_target: FlipTarget::Plaintext,
            bit_index: pt_bits[0],
        },
        TrialDef {
            key_hex: sample,
            plaintext_hex: ones,
            flip_target: FlipTarget::Plaintext,
            bit_index: pt_bits[1],
        },
    ]
}

/// Strict-avalanche verdict: pass iff the mean sits within `tolerance` of
/// the ideal 0.5; the signed margin is reported either way.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SacVerdict {
    pub pass: bool,
    #[serde(serialize_with = "ser_round4")]
    pub margin: f64,
    pub tolerance: f64,
}

pub fn sac_verdict(report: &AvalancheReport, tolerance: f64) -> SacVerdict {
    let margin = report.mean_ratio - 0.5;
    SacVerdict {
        pass: margin.abs() <= tolerance,
        margin,
        tolerance,
    }
}
