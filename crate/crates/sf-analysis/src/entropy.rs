//! Intensity histograms, Shannon entropy and the percent-change arithmetic.

use serde::Serialize;
use sf_imagio::GrayImage;

use crate::error::AnalysisError;
use crate::{ser_round2, ser_round4};

/// 256-bin intensity histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256 {
    counts: [u64; 256],
    total: u64,
}

impl Histogram256 {
    pub fn from_intensities(data: &[u8]) -> Self {
        let mut counts = [0u64; 256];
        for &b in data {
            counts[b as usize] += 1;
        }
        Histogram256 {
            counts,
            total: data.len() as u64,
        }
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Per-intensity pixel counts; `total` is width x height.
pub fn histogram(image: &GrayImage) -> Histogram256 {
    Histogram256::from_intensities(image.pixels())
}

/// Shannon entropy in bits: -sum over occupied bins of p*log2(p), zero-count
/// bins contributing nothing. Always in [0, 8] for 8-bit intensities.
pub fn entropy(hist: &Histogram256) -> Result<f64, AnalysisError> {
    if hist.total == 0 {
        return Err(AnalysisError::EmptyHistogram);
    }
    let total = hist.total as f64;
    let mut bits = 0.0;
    for &count in hist.counts.iter() {
        if count == 0 {
            continue;
        }
        let p = count as f64 / total;
        bits -= p * p.log2();
    }
    Ok(bits)
}

/// Relative change of `encrypted` against `original`, in percent.
pub fn percent_change(original: f64, encrypted: f64) -> Result<f64, AnalysisError> {
    if original <= 0.0 {
        return Err(AnalysisError::NonPositiveBaseline { value: original });
    }
    Ok((encrypted - original) / original * 100.0)
}

/// Chi-square statistic of the histogram against the uniform distribution
/// over all 256 levels. Lower means flatter.
pub fn chi_square_uniform(hist: &Histogram256) -> Result<f64, AnalysisError> {
    if hist.total == 0 {
        return Err(AnalysisError::EmptyHistogram);
    }
    let expected = hist.total as f64 / 256.0;
    Ok(hist
        .counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum())
}

/// Entropy of an original/encrypted pair plus the percent change.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    #[serde(serialize_with = "ser_round4")]
    pub entropy_original: f64,
    #[serde(serialize_with = "ser_round4")]
    pub entropy_encrypted: f64,
    #[serde(serialize_with = "ser_round2")]
    pub percent_change: f64,
}

pub fn entropy_report(
    original: &Histogram256,
    encrypted: &Histogram256,
) -> Result<EntropyReport, AnalysisError> {
    let entropy_original = entropy(original)?;
    let entropy_encrypted = entropy(encrypted)?;
    Ok(EntropyReport {
        entropy_original,
        entropy_encrypted,
        percent_change: percent_change(entropy_original, entropy_encrypted)?,
    })
}
