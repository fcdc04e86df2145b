//! Security-evaluation mathematics for the SF family: bit-flip avalanche
//! trials with their aggregation, Shannon entropy over intensity histograms,
//! and the percent-change arithmetic behind the tabular reports.

pub mod avalanche;
pub mod entropy;
pub mod error;
pub mod reference;

pub use avalanche::{
    avalanche_suite, avalanche_trial, four_flip_preset, hamming_distance, mean_ratio, sac_verdict,
    AvalancheReport, AvalancheTrial, FlipTarget, SacVerdict, TrialDef, TrialSpec,
};
pub use entropy::{
    chi_square_uniform, entropy, entropy_report, histogram, percent_change, EntropyReport,
    Histogram256,
};
pub use error::AnalysisError;

/// Round to four decimal places; ratios and entropies report at this width.
/// Goes through decimal formatting: scaling by 1e4 first can push values
/// that print as x.xxx49.. across the .5 boundary.
pub fn round4(value: f64) -> f64 {
    format!("{value:.4}").parse().expect("formatted float")
}

/// Round to two decimal places; percentages report at this width.
pub fn round2(value: f64) -> f64 {
    format!("{value:.2}").parse().expect("formatted float")
}

pub(crate) fn ser_round4<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round4(*v))
}

pub(crate) fn ser_round2<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round2(*v))
}
