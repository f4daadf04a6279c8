//! TOML experiment configuration.
//!
//! ```toml
//! experiment_id   = "fig2"          # free-form tag copied into every row
//! m               = 100             # antennas / RF chains
//! t               = 3               # snapshots per realization
//! n_mc            = 10              # realizations per grid point
//! master_seed     = 1
//! snr_db          = [-10.0, 0.0, 10.0]
//! gamma           = [0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
//! phi_deg         = [30.0]          # angle of arrival, degrees
//! sigma2          = 1.0             # diffuse power
//! spacing         = 0.5             # element spacing in wavelengths
//! pilot_phase_deg = 0.0
//! amplitude_truth = [1.0, ...]      # optional, length m; default all ones
//! phase_truth     = "uniform"       # or a list of m phases in radians
//! metrics         = ["phase_err_var", ...]  # optional subset; default all
//! output          = "out.csv"       # optional; overridden by --out
//! ```
//!
//! Every key is optional. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::metrics::MetricName;
use crate::error::{Error, Result};
use crate::model::FrontEnd;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PhaseTruth {
    /// `"uniform"`: redrawn uniformly on (−π, π] for every realization.
    Named(String),
    Fixed(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub experiment_id: String,
    pub m: usize,
    pub t: usize,
    pub n_mc: usize,
    pub master_seed: u64,
    pub snr_db: Vec<f64>,
    pub gamma: Vec<f64>,
    pub phi_deg: Vec<f64>,
    pub sigma2: f64,
    pub spacing: f64,
    pub pilot_phase_deg: f64,
    pub amplitude_truth: Option<Vec<f64>>,
    pub phase_truth: PhaseTruth,
    pub metrics: Option<Vec<MetricName>>,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment_id: "experiment".into(),
            m: 100,
            t: 3,
            n_mc: 10,
            master_seed: 0,
            snr_db: vec![-10.0, 0.0, 10.0],
            gamma: (0..=8).map(|i| 0.25 * i as f64).collect(),
            phi_deg: vec![30.0],
            sigma2: 1.0,
            spacing: 0.5,
            pilot_phase_deg: 0.0,
            amplitude_truth: None,
            phase_truth: PhaseTruth::Named("uniform".into()),
            metrics: None,
            output: None,
        }
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn check_list(name: &str, values: &[f64], nonnegative: bool) -> Result<()> {
    if values.is_empty() {
        return Err(config_err(format!("`{name}` must not be empty")));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite() || (nonnegative && **v < 0.0)) {
        return Err(config_err(format!("`{name}` contains invalid value {v}")));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates a file. An unreadable file is an I/O error, a
    /// malformed one a config error.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(config_err("`m` must be at least 2"));
        }
        if self.t < 1 {
            return Err(config_err("`t` must be at least 1"));
        }
        if self.n_mc < 1 {
            return Err(config_err("`n_mc` must be at least 1"));
        }
        check_list("snr_db", &self.snr_db, false)?;
        check_list("gamma", &self.gamma, true)?;
        check_list("phi_deg", &self.phi_deg, false)?;
        if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
            return Err(config_err(format!("`sigma2` must be ≥ 0, got {}", self.sigma2)));
        }
        if self.sigma2 == 0.0 && self.gamma.contains(&0.0) {
            return Err(config_err("`sigma2` = 0 together with γ = 0 leaves no signal to set an SNR against"));
        }
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return Err(config_err(format!("`spacing` must be > 0, got {}", self.spacing)));
        }
        if !self.pilot_phase_deg.is_finite() {
            return Err(config_err("`pilot_phase_deg` must be finite"));
        }
        if let Some(d) = &self.amplitude_truth {
            if d.len() != self.m {
                return Err(config_err(format!("`amplitude_truth` has {} entries, expected {}", d.len(), self.m)));
            }
            if d.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(config_err("`amplitude_truth` entries must be positive"));
            }
        }
        match &self.phase_truth {
            PhaseTruth::Named(s) if s == "uniform" => {}
            PhaseTruth::Named(s) => {
                return Err(config_err(format!("`phase_truth` must be \"uniform\" or a list, got {s:?}")))
            }
            PhaseTruth::Fixed(a) => {
                if a.len() != self.m {
                    return Err(config_err(format!("`phase_truth` has {} entries, expected {}", a.len(), self.m)));
                }
                FrontEnd::new(vec![1.0; self.m], a.clone()).map_err(|e| config_err(e.to_string()))?;
            }
        }
        if matches!(&self.metrics, Some(v) if v.is_empty()) {
            return Err(config_err("`metrics` must not be empty when given"));
        }
        Ok(())
    }

    pub fn amplitudes(&self) -> Vec<f64> {
        self.amplitude_truth.clone().unwrap_or_else(|| vec![1.0; self.m])
    }

    pub fn wants(&self, metric: MetricName) -> bool {
        self.metrics.as_ref().is_none_or(|v| v.contains(&metric))
    }

    /// Grid points in `snr × γ × φ` order (SNR outermost).
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(self.snr_db.len() * self.gamma.len() * self.phi_deg.len());
        for &snr_db in &self.snr_db {
            for &gamma in &self.gamma {
                for &phi_deg in &self.phi_deg {
                    out.push(GridPoint { snr_db, gamma, phi_deg });
                }
            }
        }
        out
    }
}

/// One `(SNR, γ, φ)` combination of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub snr_db: f64,
    pub gamma: f64,
    pub phi_deg: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let cfg = ExperimentConfig::from_toml_str("").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert_eq!(cfg.gamma.len(), 9);
        assert_eq!(cfg.points().len(), 27);
    }

    #[test]
    fn parses_full_document() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            experiment_id = "x"
            m = 3
            t = 2
            n_mc = 5
            master_seed = 99
            snr_db = [3.0]
            gamma = [1.0, 2.0]
            phi_deg = [0.0, 30.0]
            amplitude_truth = [1.0, 2.0, 0.5]
            phase_truth = [0.1, 0.2, 0.3]
            metrics = ["phase_err_var", "cos_sim_mean"]
            output = "out.csv"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.master_seed, 99);
        assert_eq!(cfg.points().len(), 4);
        assert_eq!(cfg.points()[1], GridPoint { snr_db: 3.0, gamma: 1.0, phi_deg: 30.0 });
        assert!(cfg.wants(MetricName::CosSimMean));
        assert!(!cfg.wants(MetricName::CosSimStd));
        assert_eq!(cfg.phase_truth, PhaseTruth::Fixed(vec![0.1, 0.2, 0.3]));
    }

    #[test]
    fn rejects_invalid_documents() {
        for text in [
            "n_mc = 0",
            "gamma = []",
            "snr_db = [nan]",
            "m = 1",
            "bogus = 1",
            "m = \"ten\"",
            "phase_truth = \"gaussian\"",
            "m = 3\nphase_truth = [0.0]",
            "m = 2\namplitude_truth = [1.0, 0.0]",
            "metrics = [\"nope\"]",
            "gamma = [-1.0]",
            "sigma2 = 0.0\ngamma = [0.0, 1.0]",
        ] {
            let err = ExperimentConfig::from_toml_str(text).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{text}: {err}");
        }
    }
}
