//! Wall-clock timing of bulk encryption.
//!
//! Measurements use the monotonic [`std::time::Instant`] clock, run on one
//! seeded workload with untimed warmup passes first, and exclude key
//! expansion (the schedule is derived before the timed region). Every pass's
//! ciphertext folds into a checksum that the report carries, so the measured
//! work cannot be optimized away and callers can verify the harness computed
//! the same bytes as a plain encryption call. The timed region stays on one
//! thread and is pinned to a single logical CPU where the platform allows;
//! whether pinning succeeded is recorded.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sf_core::{
    derive_round_keys, encrypt_blocks, CipherConstants, CipherError, CipherKey, CipherVariant,
    ConstantSet,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("runs must be at least 1")]
    ZeroRuns,
    #[error("workload of {workload_bytes} bytes is smaller than one {block_bytes}-byte block")]
    WorkloadTooSmall {
        workload_bytes: usize,
        block_bytes: usize,
    },
    #[error("constant set has no tables for {0}")]
    MissingVariant(CipherVariant),
    #[error(transparent)]
    Cipher(#[from] CipherError),
}

/// One timing measurement with full provenance.
#[derive(Debug, Clone, Serialize)]
pub struct TimingReport {
    pub variant: String,
    pub block_bits: usize,
    /// Actual octets encrypted per pass (the requested size rounded up to a
    /// whole number of blocks).
    pub workload_bytes: usize,
    pub runs: usize,
    pub warmup_runs: usize,
    pub mean_ms: f64,
    pub stddev_ms: f64,
    pub per_byte_ns: f64,
    /// Fold of every ciphertext byte produced inside the timed region.
    pub output_checksum: u64,
    pub pinned: bool,
    pub machine: String,
}

/// Deterministic workload for a given seed, rounded up to whole blocks.
pub fn seeded_workload(workload_bytes: usize, block_bytes: usize, seed: u64) -> Vec<u8> {
    let blocks = workload_bytes.div_ceil(block_bytes);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..blocks * block_bytes).map(|_| rng.gen()).collect()
}

/// The key the harness encrypts under, also derived from the seed.
pub fn seeded_key(variant: CipherVariant, seed: u64) -> CipherKey {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6B65_7973);
    CipherKey::from_bytes((0..variant.block_bytes()).map(|_| rng.gen()).collect())
}

pub fn fold_checksum(bytes: &[u8]) -> u64 {
    let mut acc = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        acc ^= b as u64;
        acc = acc.wrapping_mul(0x1000_0000_01b3);
    }
    acc
}

/// Time `runs` full encryption passes over a fixed seeded workload.
pub fn time_encrypt(
    variant: CipherVariant,
    constants: &CipherConstants,
    workload_bytes: usize,
    runs: usize,
    warmup_runs: usize,
    seed: u64,
) -> Result<TimingReport, BenchError> {
    if runs == 0 {
        return Err(BenchError::ZeroRuns);
    }
    let block_bytes = constants.block_bytes();
    if workload_bytes < block_bytes {
        return Err(BenchError::WorkloadTooSmall {
            workload_bytes,
            block_bytes,
        });
    }

    let pinned = pin_to_one_cpu();
    let workload = seeded_workload(workload_bytes, block_bytes, seed);
    let key = seeded_key(variant, seed);
    let schedule = derive_round_keys(&key, constants)?;

    for _ in 0..warmup_runs {
        let ct = encrypt_blocks(&workload, &schedule, constants)?;
        std::hint::black_box(fold_checksum(&ct));
    }

    let mut samples_ms = Vec::with_capacity(runs);
    let mut output_checksum = 0u64;
    for _ in 0..runs {
        let start = Instant::now();
        let ct = encrypt_blocks(&workload, &schedule, constants)?;
        let checksum = fold_checksum(&ct);
        let elapsed = start.elapsed();
        output_checksum = std::hint::black_box(checksum);
        samples_ms.push(elapsed.as_secs_f64() * 1e3);
    }

    let mean_ms = samples_ms.iter().sum::<f64>() / runs as f64;
    let stddev_ms = if runs > 1 {
        let var = samples_ms
            .iter()
            .map(|s| (s - mean_ms) * (s - mean_ms))
            .sum::<f64>()
            / (runs - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };

    Ok(TimingReport {
        variant: variant.name().to_string(),
        block_bits: variant.block_bits(),
        workload_bytes: workload.len(),
        runs,
        warmup_runs,
        mean_ms,
        stddev_ms,
        per_byte_ns: mean_ms * 1e6 / workload.len() as f64,
        output_checksum,
        pinned,
        machine: machine_description(),
    })
}

/// All three variants over the same requested workload on this machine,
/// plus the resulting per-byte ordering (fastest first).
#[derive(Debug, Clone, Serialize)]
pub struct VariantComparison {
    pub reports: Vec<TimingReport>,
    pub per_byte_ordering: Vec<String>,
}

pub fn compare_variants(
    set: &ConstantSet,
    workload_bytes: usize,
    runs: usize,
    warmup_runs: usize,
    seed: u64,
) -> Result<VariantComparison, BenchError> {
    let mut reports = Vec::new();
    for variant in CipherVariant::ALL {
        let constants = set
            .for_variant(variant)
            .map_err(|_| BenchError::MissingVariant(variant))?;
        reports.push(time_encrypt(
            variant,
            &constants,
            workload_bytes,
            runs,
            warmup_runs,
            seed,
        )?);
    }
    let mut ordering: Vec<(String, f64)> = reports
        .iter()
        .map(|r| (r.variant.clone(), r.per_byte_ns))
        .collect();
    ordering.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(VariantComparison {
        reports,
        per_byte_ordering: ordering.into_iter().map(|(name, _)| name).collect(),
    })
}

/// Aggregate CSV, one row per report.
pub fn reports_to_csv(reports: &[TimingReport]) -> String {
    let mut out = String::from("variant,workload_bytes,runs,mean_ms,stddev_ms\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{:.4},{:.4}\n",
            r.variant, r.workload_bytes, r.runs, r.mean_ms, r.stddev_ms
        ));
    }
    out
}

/// CPU model, OS/arch and build profile; reports without provenance are not
/// comparable across machines.
pub fn machine_description() -> String {
    let cpu = cpu_model().unwrap_or_else(|| "unknown-cpu".to_string());
    let profile = if cfg!(debug_assertions) { "dev" } else { "release" };
    format!(
        "cpu={cpu}; os={}-{}; profile={profile}",
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

#[cfg(target_os = "linux")]
fn cpu_model() -> Option<String> {
    let info = std::fs::read_to_string("/proc/cpuinfo").ok()?;
    info.lines()
        .find(|l| l.starts_with("model name"))
        .and_then(|l| l.split(':').nth(1))
        .map(|s| s.trim().to_string())
}

#[cfg(not(target_os = "linux"))]
fn cpu_model() -> Option<String> {
    None
}

/// Pin the calling thread to one logical CPU. Best effort; returns whether
/// the platform accepted the request.
#[cfg(target_os = "linux")]
pub fn pin_to_one_cpu() -> bool {
    unsafe {
        let mut set: libc::cpu_set_t = std::mem::zeroed();
        libc::CPU_ZERO(&mut set);
        let cpu = libc::sched_getcpu();
        let cpu = if cpu < 0 { 0 } else { cpu as usize };
        libc::CPU_SET(cpu, &mut set);
        libc::sched_setaffinity(0, std::mem::size_of::<libc::cpu_set_t>(), &set) == 0
    }
}

#[cfg(not(target_os = "linux"))]
pub fn pin_to_one_cpu() -> bool {
    false
}
