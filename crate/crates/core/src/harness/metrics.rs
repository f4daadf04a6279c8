//! Per-realization metrics and the long-format result table.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::wrap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricName {
    /// Across-chain sample variance of the wrapped phase errors, averaged over
    /// realizations.
    PhaseErrVar,
    /// Mean squared wrapped phase error over chains and realizations.
    PhaseErrMse,
    /// Exact phase CRLB averaged over chains; `inf` when γ = 0.
    CrlbAlphaMean,
    CosSimMean,
    CosSimStd,
    /// `σ²/(2γ²)`.
    CrlbAlphaHighSnr,
    /// Realizations whose estimate was undefined and skipped; emitted only
    /// when nonzero.
    DegenerateChains,
}

impl MetricName {
    pub const ALL: [MetricName; 7] = [
        MetricName::PhaseErrVar,
        MetricName::PhaseErrMse,
        MetricName::CrlbAlphaMean,
        MetricName::CosSimMean,
        MetricName::CosSimStd,
        MetricName::CrlbAlphaHighSnr,
        MetricName::DegenerateChains,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricName::PhaseErrVar => "phase_err_var",
            MetricName::PhaseErrMse => "phase_err_mse",
            MetricName::CrlbAlphaMean => "crlb_alpha_mean",
            MetricName::CosSimMean => "cos_sim_mean",
            MetricName::CosSimStd => "cos_sim_std",
            MetricName::CrlbAlphaHighSnr => "crlb_alpha_high_snr",
            MetricName::DegenerateChains => "degenerate_chains",
        }
    }
}

impl std::fmt::Display for MetricName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One CSV record: grid settings, metric name, value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub experiment_id: String,
    pub snr_db: f64,
    pub gamma: f64,
    pub sigma2: f64,
    pub n0: f64,
    pub phi_deg: f64,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub n_mc: usize,
    pub seed: u64,
    pub metric_name: MetricName,
    pub value: f64,
}

/// `arccos(|d̂ᵀd| / (‖d̂‖·‖d‖))` in radians, in `[0, π/2]`.
///
/// Evaluated as the angle between `d̂/‖d̂‖` and `±d/‖d‖` via the half-angle
/// form, which stays accurate near 0 where `arccos` loses half the digits.
pub fn cosine_similarity(d_hat: &[f64], d_truth: &[f64]) -> Result<f64> {
    if d_hat.len() != d_truth.len() || d_hat.is_empty() {
        return Err(Error::invalid(format!(
            "cosine similarity needs equal nonempty lengths, got {} and {}",
            d_hat.len(),
            d_truth.len()
        )));
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (nx, ny) = (norm(d_hat), norm(d_truth));
    if !(nx > 0.0 && ny > 0.0) || !(nx.is_finite() && ny.is_finite()) {
        return Err(Error::invalid("cosine similarity of a zero or non-finite vector"));
    }
    let dot: f64 = d_hat.iter().zip(d_truth).map(|(a, b)| a * b).sum();
    let sign = if dot < 0.0 { -1.0 } else { 1.0 };
    let (mut diff, mut sum) = (0.0f64, 0.0f64);
    for (a, b) in d_hat.iter().zip(d_truth) {
        let (u, v) = (a / nx, sign * b / ny);
        diff += (u - v).powi(2);
        sum += (u + v).powi(2);
    }
    Ok(2.0 * diff.sqrt().atan2(sum.sqrt()))
}

/// Sample variance (divide by M−1) of `wrap(α̂_m − α_m)` across chains.
pub fn phase_error_variance(alpha_hat: &[f64], alpha_truth: &[f64]) -> Result<f64> {
    let errors = wrapped_errors(alpha_hat, alpha_truth)?;
    if errors.len() < 2 {
        return Err(Error::invalid("phase error variance needs at least 2 chains"));
    }
    let n = errors.len() as f64;
    let mean = errors.iter().sum::<f64>() / n;
    Ok(errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0))
}

pub fn wrapped_errors(alpha_hat: &[f64], alpha_truth: &[f64]) -> Result<Vec<f64>> {
    if alpha_hat.len() != alpha_truth.len() {
        return Err(Error::invalid(format!(
            "phase vectors differ in length: {} vs {}",
            alpha_hat.len(),
            alpha_truth.len()
        )));
    }
    Ok(alpha_hat.iter().zip(alpha_truth).map(|(h, a)| wrap(h - a)).collect())
}

pub fn write_rows<W: Write>(writer: W, rows: &[MetricRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: Read>(reader: R) -> Result<Vec<MetricRow>> {
    csv::Reader::from_reader(reader)
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn write_csv(path: &Path, rows: &[MetricRow]) -> Result<()> {
    write_rows(std::io::BufWriter::new(std::fs::File::create(path)?), rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<MetricRow>> {
    read_rows(std::fs::File::open(path)?)
}
