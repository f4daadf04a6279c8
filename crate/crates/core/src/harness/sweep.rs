//! Monte-Carlo sweeps over `(SNR, γ, φ)` grids.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, GridPoint, PhaseTruth};
use super::metrics::{cosine_similarity, phase_error_variance, wrapped_errors, write_rows, MetricName, MetricRow};
use super::seed::child_seed;
use crate::channel::{sample_moments, synthesize, ObservationSet};
use crate::crlb::{crlb_diagonal_exact, crlb_high_snr, fim_closed_form};
use crate::error::{Error, Result};
use crate::estimators::{estimate_amplitude_moment, estimate_phase_mle_numeric, estimate_phase_moment};
use crate::model::{db_to_linear, noise_power_for_snr, FrontEnd, ParamVector, Scenario};

/// Everything produced by one realization at one grid point.
#[derive(Debug, Clone)]
pub struct Realization {
    pub seed: u64,
    pub front_end: FrontEnd,
    pub observation: ObservationSet,
    pub alpha_hat_moment: Vec<f64>,
    pub alpha_hat_mle: Vec<f64>,
    pub d_hat: Vec<f64>,
    /// `wrap(α̂_MLE − α)` per chain.
    pub phase_errors: Vec<f64>,
    pub cos_sim: f64,
}

/// Scenario of a grid point, with N₀ set from the SNR.
pub fn point_scenario(config: &ExperimentConfig, point: &GridPoint) -> Result<Scenario> {
    let amplitudes = FrontEnd::new(config.amplitudes(), vec![0.0; config.m])?;
    let n0 = noise_power_for_snr(db_to_linear(point.snr_db), &amplitudes, config.sigma2, point.gamma)?;
    let mut sc = Scenario::new(config.m, config.t);
    sc.gamma = point.gamma;
    sc.sigma2 = config.sigma2;
    sc.n0 = n0;
    sc.phi = point.phi_deg.to_radians();
    sc.spacing = config.spacing;
    sc.pilot = Complex64::from_polar(1.0, config.pilot_phase_deg.to_radians());
    sc.validate()?;
    Ok(sc)
}

fn truth_phases(config: &ExperimentConfig, seed: u64) -> Vec<f64> {
    match &config.phase_truth {
        PhaseTruth::Fixed(alpha) => alpha.clone(),
        PhaseTruth::Named(_) => {
            // separate stream of the same key, so the channel draws are untouched
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(1);
            (0..config.m).map(|_| PI - 2.0 * PI * rng.random::<f64>()).collect()
        }
    }
}

/// One Monte-Carlo realization at `point`. Metrics use the numeric MLE.
pub fn run_realization(config: &ExperimentConfig, point: &GridPoint, index: u64) -> Result<Realization> {
    let sc = point_scenario(config, point)?;
    let seed = child_seed(config.master_seed, point, index);
    simulate_with_seed(config, &sc, seed)
}

fn simulate_with_seed(config: &ExperimentConfig, sc: &Scenario, seed: u64) -> Result<Realization> {
    let fe = FrontEnd::new(config.amplitudes(), truth_phases(config, seed))?;
    let obs = synthesize(sc, &fe, seed)?;
    let a = sc.steering()?;
    let moment = estimate_phase_moment(&obs, &a, sc.pilot)?;
    let mle = estimate_phase_mle_numeric(&obs, &a, sc.pilot, &vec![1.0; sc.m])?;
    let d_hat = estimate_amplitude_moment(&sample_moments(&obs)).d_hat;
    let phase_errors = wrapped_errors(&mle.alpha_hat, fe.phases())?;
    let cos_sim = cosine_similarity(&d_hat, fe.amplitudes())
        .map_err(|_| Error::DegenerateEstimate { chains: (0..sc.m).collect() })?;
    Ok(Realization {
        seed,
        front_end: fe,
        observation: obs,
        alpha_hat_moment: moment.alpha_hat,
        alpha_hat_mle: mle.alpha_hat,
        d_hat,
        phase_errors,
        cos_sim,
    })
}

/// `(N₀, mean exact phase CRLB, mean high-SNR phase bound)` at a grid point.
/// The exact bound is `+∞` when the phase block is singular (γ = 0).
pub fn point_bounds(config: &ExperimentConfig, point: &GridPoint) -> Result<(f64, f64, f64)> {
    let sc = point_scenario(config, point)?;
    let fe = FrontEnd::new(config.amplitudes(), vec![0.0; config.m])?;
    let xi = ParamVector::from_parts(&fe, config.sigma2, point.gamma);
    let report = crlb_diagonal_exact(&fim_closed_form(&xi, &sc)?)?;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let high = crlb_high_snr(&xi, config.t);
    Ok((sc.n0, mean(&report.crlb_alpha), mean(&high.high_snr_alpha)))
}

struct Summary {
    phase_err_var: f64,
    phase_err_mse: f64,
    cos_sim_mean: f64,
    cos_sim_std: f64,
    valid: usize,
    degenerate: usize,
}

fn summarize(outcomes: Vec<Result<(f64, f64, f64)>>) -> Result<Summary> {
    let mut per_var = Vec::new();
    let mut per_mse = Vec::new();
    let mut cos = Vec::new();
    let mut degenerate = 0;
    for outcome in outcomes {
        match outcome {
            Ok((v, mse, c)) => {
                per_var.push(v);
                per_mse.push(mse);
                cos.push(c);
            }
            Err(Error::DegenerateEstimate { .. }) => degenerate += 1,
            Err(e) => return Err(e),
        }
    }
    let n = cos.len();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let cos_mean = mean(&cos);
    let cos_std = if n > 1 {
        (cos.iter().map(|c| (c - cos_mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(Summary {
        phase_err_var: mean(&per_var),
        phase_err_mse: mean(&per_mse),
        cos_sim_mean: cos_mean,
        cos_sim_std: cos_std,
        valid: n,
        degenerate,
    })
}

fn point_rows(config: &ExperimentConfig, point: &GridPoint) -> Result<Vec<MetricRow>> {
    let outcomes: Vec<Result<(f64, f64, f64)>> = (0..config.n_mc as u64)
        .into_par_iter()
        .map(|i| {
            let r = run_realization(config, point, i)?;
            let var = phase_error_variance(&r.alpha_hat_mle, r.front_end.phases())?;
            let mse = r.phase_errors.iter().map(|e| e * e).sum::<f64>() / r.phase_errors.len() as f64;
            Ok((var, mse, r.cos_sim))
        })
        .collect();
    let summary = summarize(outcomes)?;
    let (n0, crlb_alpha, crlb_alpha_high) = point_bounds(config, point)?;

    let row = |metric_name, value| MetricRow {
        experiment_id: config.experiment_id.clone(),
        snr_db: point.snr_db,
        gamma: point.gamma,
        sigma2: config.sigma2,
        n0,
        phi_deg: point.phi_deg,
        m: config.m,
        t: config.t,
        n_mc: config.n_mc,
        seed: config.master_seed,
        metric_name,
        value,
    };
    let mut values = Vec::new();
    if summary.valid > 0 {
        values.extend([
            (MetricName::PhaseErrVar, summary.phase_err_var),
            (MetricName::PhaseErrMse, summary.phase_err_mse),
        ]);
    }
    values.push((MetricName::CrlbAlphaMean, crlb_alpha));
    if summary.valid > 0 {
        values.extend([
            (MetricName::CosSimMean, summary.cos_sim_mean),
            (MetricName::CosSimStd, summary.cos_sim_std),
        ]);
    }
    values.push((MetricName::CrlbAlphaHighSnr, crlb_alpha_high));
    if summary.degenerate > 0 {
        values.push((MetricName::DegenerateChains, summary.degenerate as f64));
    }
    Ok(values
        .into_iter()
        .filter(|(name, _)| config.wants(*name))
        .map(|(name, value)| row(name, value))
        .collect())
}

/// Runs every grid point and returns the rows in grid order
/// (SNR outermost, then γ, then φ).
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<MetricRow>> {
    config.validate()?;
    let per_point: Vec<Result<Vec<MetricRow>>> =
        config.points().par_iter().map(|p| point_rows(config, p)).collect();
    let mut rows = Vec::new();
    for r in per_point {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Opens `out` before any computation, so an unwritable path fails fast.
pub fn run_sweep_to_csv(config: &ExperimentConfig, out: &Path) -> Result<Vec<MetricRow>> {
    config.validate()?;
    let file = File::create(out)?;
    let rows = run_sweep(config)?;
    write_rows(BufWriter::new(file), &rows)?;
    Ok(rows)
}

/// Bound-only rows (no simulation); `n_mc` is reported as 0.
pub fn crlb_rows(config: &ExperimentConfig) -> Result<Vec<MetricRow>> {
    config.validate()?;
    let mut rows = Vec::new();
    for point in config.points() {
        let (n0, crlb_alpha, crlb_alpha_high) = point_bounds(config, &point)?;
        for (metric_name, value) in
            [(MetricName::CrlbAlphaMean, crlb_alpha), (MetricName::CrlbAlphaHighSnr, crlb_alpha_high)]
        {
            if !config.wants(metric_name) {
                continue;
            }
            rows.push(MetricRow {
                experiment_id: config.experiment_id.clone(),
                snr_db: point.snr_db,
                gamma: point.gamma,
                sigma2: config.sigma2,
                n0,
                phi_deg: point.phi_deg,
                m: config.m,
                t: config.t,
                n_mc: 0,
                seed: config.master_seed,
                metric_name,
                value,
            });
        }
    }
    Ok(rows)
}

/// One realization at the first point of each grid list. `seed` plays the
/// role of the master seed, so the draw equals realization 0 of a sweep with
/// that master seed.
pub fn simulate(config: &ExperimentConfig, seed: u64) -> Result<Realization> {
    config.validate()?;
    let point = config.points()[0];
    let sc = point_scenario(config, &point)?;
    simulate_with_seed(config, &sc, child_seed(seed, &point, 0))
}

/// Wide per-chain dump: truth, both phase estimates, the amplitude estimate and
/// every snapshot.
pub fn write_realization<W: Write>(writer: W, r: &Realization) -> Result<()> {
    let t = r.observation.scenario().t;
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<String> =
        ["chain", "d_true", "alpha_true", "d_hat", "alpha_hat_moment", "alpha_hat_mle"].map(String::from).to_vec();
    for s in 0..t {
        header.push(format!("y{s}_re"));
        header.push(format!("y{s}_im"));
    }
    w.write_record(&header)?;
    let y = r.observation.y();
    for k in 0..y.nrows() {
        let mut rec = vec![
            k.to_string(),
            r.front_end.amplitudes()[k].to_string(),
            r.front_end.phases()[k].to_string(),
            r.d_hat[k].to_string(),
            r.alpha_hat_moment[k].to_string(),
            r.alpha_hat_mle[k].to_string(),
        ];
        for s in 0..t {
            rec.push(y[(k, s)].re.to_string());
            rec.push(y[(k, s)].im.to_string());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
