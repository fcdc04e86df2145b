use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sf_analysis::{avalanche_trial, entropy, histogram, mean_ratio, FlipTarget};
use sf_core::{Block, CipherKey, CipherVariant, ConstantSet};
use sf_imagio::{encrypt_image, pattern};

/// Key sensitivity alone (no plaintext flips): mean avalanche within
/// [0.40, 0.60] over 1,000 trials per variant.
#[test]
fn key_only_avalanche_mean_is_in_the_40_60_window() {
    for variant in CipherVariant::ALL {
        let constants = ConstantSet::builtin_v1().for_variant(variant).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x4B59 + variant.block_bits() as u64);
        let mut ratios = Vec::with_capacity(1000);
        for _ in 0..1000 {
            let key =
                CipherKey::from_bytes((0..variant.block_bytes()).map(|_| rng.gen()).collect());
            let pt = Block::from_bytes((0..variant.block_bytes()).map(|_| rng.gen()).collect());
            let bit = rng.gen_range(0..variant.key_bits());
            let trial = avalanche_trial(&key, &pt, FlipTarget::Key, bit, &constants).unwrap();
            ratios.push(trial.ratio);
        }
        let mean = mean_ratio(&ratios).unwrap();
        assert!(
            (0.40..=0.60).contains(&mean),
            "{variant}: key-flip mean {mean:.4} outside [0.40, 0.60]"
        );
    }
}

/// A 256x256 natural image encrypted under sf128 lands above 7.9 bits of
/// intensity entropy.
#[test]
fn encrypted_natural_256_image_entropy_exceeds_7_9() {
    let constants = ConstantSet::builtin_v1()
        .for_variant(CipherVariant::Sf128)
        .unwrap();
    let image = pattern::synthetic_natural(256, 256, 0xE259);
    let mut rng = ChaCha8Rng::seed_from_u64(0xE259);
    let key = CipherKey::from_bytes((0..16).map(|_| rng.gen()).collect());
    let artifact = encrypt_image(&image, &key, &constants).unwrap();
    let original = entropy(&histogram(&image)).unwrap();
    let encrypted = entropy(&histogram(artifact.display_image())).unwrap();
    assert!(original < 7.9, "synthetic subject unexpectedly near-uniform");
    assert!(
        encrypted >= 7.9,
        "encrypted entropy {encrypted:.4} below 7.9"
    );
}
