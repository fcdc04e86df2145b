//! The combined tabular report: per-variant four-flip avalanche tables, the
//! vendored reference-ratio aggregation, per-image entropy tables over a
//! user-supplied directory, and (opt-in) local timing. With timing disabled
//! the document is byte-identical across runs for the same inputs and seed.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sf_analysis::{
    avalanche_suite, four_flip_preset, histogram, mean_ratio, reference, round2, round4,
    sac_verdict, AvalancheReport, SacVerdict, TrialSpec,
};
use sf_bench::{compare_variants, VariantComparison};
use sf_core::{CipherKey, CipherVariant, ConstantSet};
use sf_imagio::{encrypt_image, load_image};

use crate::error::CliError;

#[derive(Serialize)]
pub struct Meta {
    pub tool_version: &'static str,
    pub constant_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub rng_seed: u64,
}

#[derive(Serialize)]
pub struct PaperReport {
    meta: Meta,
    avalanche_tables: Vec<AvalancheTable>,
    reference_aggregation: Vec<ReferenceAggregation>,
    entropy_tables: Vec<EntropyTable>,
    timing: Option<VariantComparison>,
}

#[derive(Serialize)]
struct AvalancheTable {
    variant: String,
    report: AvalancheReport,
    sac: SacVerdict,
}

#[derive(Serialize)]
struct ReferenceAggregation {
    variant: String,
    ratios: [f64; 4],
    mean_ratio: f64,
}

#[derive(Serialize)]
struct EntropyTable {
    variant: String,
    key_hex: String,
    rows: Vec<EntropyTableRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean_row: Option<EntropyTableRow>,
}

#[derive(Serialize)]
struct EntropyTableRow {
    image: String,
    width: usize,
    height: usize,
    entropy_original: f64,
    entropy_encrypted: f64,
    percent_change: f64,
}

impl PaperReport {
    pub fn build(
        set: &ConstantSet,
        images_dir: Option<&Path>,
        seed: u64,
        timing_params: Option<(usize, usize, usize)>,
    ) -> Result<PaperReport, CliError> {
        let mut avalanche_tables = Vec::new();
        let mut reference_aggregation = Vec::new();
        let mut entropy_tables = Vec::new();

        let images = match images_dir {
            Some(dir) => load_image_dir(dir)?,
            None => Vec::new(),
        };

        for variant in CipherVariant::ALL {
            let constants = set
                .for_variant(variant)
                .map_err(|e| CliError::Constants(e.to_string()))?;

            let spec = TrialSpec::Explicit(four_flip_preset(variant));
            let report = avalanche_suite(variant, &constants, &spec, seed)?;
            let sac = sac_verdict(&report, 0.05);
            avalanche_tables.push(AvalancheTable {
                variant: variant.name().to_string(),
                report,
                sac,
            });

            let ratio_set = reference::ratio_set(variant);
            reference_aggregation.push(ReferenceAggregation {
                variant: variant.name().to_string(),
                ratios: ratio_set.ratios,
                mean_ratio: round4(mean_ratio(&ratio_set.ratios)?),
            });

            // One seeded key per variant, recorded so rows can be rerun.
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ variant.block_bits() as u64);
            let key =
                CipherKey::from_bytes((0..variant.block_bytes()).map(|_| rng.gen()).collect());

            let mut rows = Vec::new();
            for (name, image) in &images {
                let artifact = encrypt_image(image, &key, &constants)?;
                let original = sf_analysis::entropy(&histogram(image))?;
                let encrypted = sf_analysis::entropy(&histogram(artifact.display_image()))?;
                rows.push(EntropyTableRow {
                    image: name.clone(),
                    width: image.width(),
                    height: image.height(),
                    entropy_original: round4(original),
                    entropy_encrypted: round4(encrypted),
                    percent_change: round2(sf_analysis::percent_change(original, encrypted)?),
                });
            }
            let mean_row = summarize_rows(&rows)?;
            entropy_tables.push(EntropyTable {
                variant: variant.name().to_string(),
                key_hex: key.to_hex(),
                rows,
                mean_row,
            });
        }

        let timing = match timing_params {
            Some((workload_bytes, runs, warmup)) => Some(compare_variants(
                set,
                workload_bytes,
                runs,
                warmup,
                seed,
            )?),
            None => None,
        };

        Ok(PaperReport {
            meta: Meta {
                tool_version: env!("CARGO_PKG_VERSION"),
                constant_version: set.version().to_string(),
                variant: None,
                rng_seed: seed,
            },
            avalanche_tables,
            reference_aggregation,
            entropy_tables,
            timing,
        })
    }
}

/// Mean row in the same shape as the data rows: mean of each entropy column
/// and the percent change computed from those means.
fn summarize_rows(rows: &[EntropyTableRow]) -> Result<Option<EntropyTableRow>, CliError> {
    if rows.is_empty() {
        return Ok(None);
    }
    let n = rows.len() as f64;
    let mean_original = rows.iter().map(|r| r.entropy_original).sum::<f64>() / n;
    let mean_encrypted = rows.iter().map(|r| r.entropy_encrypted).sum::<f64>() / n;
    Ok(Some(EntropyTableRow {
        image: "mean".to_string(),
        width: 0,
        height: 0,
        entropy_original: round4(mean_original),
        entropy_encrypted: round4(mean_encrypted),
        percent_change: round2(sf_analysis::percent_change(mean_original, mean_encrypted)?),
    }))
}

/// All PGM/PPM files of a directory, sorted by file name for stable output.
fn load_image_dir(dir: &Path) -> Result<Vec<(String, sf_imagio::GrayImage)>, CliError> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .map_err(CliError::io(dir))?
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::io(dir))?;
    entries.sort_by_key(|e| e.file_name());
    let mut images = Vec::new();
    for entry in entries {
        let path = entry.path();
        let is_netpbm = path
            .extension()
            .map(|e| {
                let e = e.to_string_lossy().to_ascii_lowercase();
                e == "pgm" || e == "ppm"
            })
            .unwrap_or(false);
        if !is_netpbm {
            continue;
        }
        let bytes = std::fs::read(&path).map_err(CliError::io(&path))?;
        let image = load_image(&bytes)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        images.push((name, image));
    }
    Ok(images)
}
