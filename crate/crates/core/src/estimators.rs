//! Phase and amplitude estimators for the per-chain front-end response.
//!
//! The phase drift is estimated from the first-order statistic `Σ_t y_t`,
//! either in closed form ([`estimate_phase_moment`]) or by maximizing the
//! phase-dependent part of the Gaussian log-likelihood numerically
//! ([`estimate_phase_mle_numeric`]). The two coincide for every input. The
//! amplitude direction comes from the raw second moments of the snapshots.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::channel::{ObservationSet, SampleMoments};
use crate::error::{Error, Result};
use crate::model::{dft_matrix, dft_whitening, wrap, ParamVector};

pub use crate::model::wrap_phase;

/// Grid resolution of the numeric likelihood search.
pub const MLE_GRID_POINTS: usize = 360;
/// Final bracket width of the golden-section refinement, radians.
pub const MLE_TOLERANCE: f64 = 1e-9;

/// Per-chain phase estimates, wrapped to `(−π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseEstimate {
    pub alpha_hat: Vec<f64>,
}

/// Per-chain amplitude estimates. Only the direction is meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeEstimate {
    pub d_hat: Vec<f64>,
}

fn check_reference(obs: &ObservationSet, steering: &DVector<Complex64>, pilot: Complex64) -> Result<()> {
    let m = obs.scenario().m;
    if steering.len() != m {
        return Err(Error::invalid(format!(
            "steering vector has {} entries, observation has M={m}",
            steering.len()
        )));
    }
    if steering.iter().any(|a| a.norm() == 0.0) {
        return Err(Error::invalid("steering vector has a zero entry"));
    }
    if (pilot.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!("pilot must have unit modulus, |p| = {}", pilot.norm())));
    }
    Ok(())
}

fn degenerate_chains(v: &DVector<Complex64>) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, z)| z.norm() == 0.0).map(|(i, _)| i).collect()
}

/// `α̂ = arg(Σ_t y_t) − arg(a(φ)) − arg(p)`, elementwise.
pub fn estimate_phase_moment(
    obs: &ObservationSet,
    steering: &DVector<Complex64>,
    pilot: Complex64,
) -> Result<PhaseEstimate> {
    check_reference(obs, steering, pilot)?;
    let sum = obs.y().column_sum();
    let bad = degenerate_chains(&sum);
    if !bad.is_empty() {
        return Err(Error::DegenerateEstimate { chains: bad });
    }
    let alpha_hat = sum
        .iter()
        .zip(steering.iter())
        .map(|(s, a)| wrap(s.arg() - a.arg() - pilot.arg()))
        .collect();
    Ok(PhaseEstimate { alpha_hat })
}

/// Gaussian log-likelihood `ln p(y; ξ)` of the stacked observation.
///
/// The known quantities (N₀, T) come from the observation's scenario; `xi`
/// supplies d, α, σ² and γ. Evaluated in the DFT-whitened domain, where the
/// covariance is diagonal.
pub fn log_likelihood(
    obs: &ObservationSet,
    xi: &ParamVector,
    steering: &DVector<Complex64>,
    pilot: Complex64,
) -> Result<f64> {
    check_reference(obs, steering, pilot)?;
    let (sc, fe) = obs.scenario().with_params(xi)?;
    let w = dft_whitening(&sc, &fe)?;
    if let Some(bad) = w.lambda().iter().find(|&&l| !(l > 0.0)) {
        return Err(Error::NumericalDomain(format!(
            "covariance is singular (whitened eigenvalue {bad}); need N₀ > 0"
        )));
    }
    let (m, t) = (sc.m, sc.t);
    let los: Vec<Complex64> = (0..m).map(|k| sc.gamma * pilot * fe.gain(k) * steering[k]).collect();
    let beta = DVector::from_fn(m * t, |i, _| obs.y()[(i % m, i / m)] - los[i % m]);
    let white = w.apply(&beta);
    let quad: f64 = white.iter().zip(w.lambda().iter()).map(|(b, l)| b.norm_sqr() / l).sum();
    Ok(-((m * t) as f64) * PI.ln() - w.log_det() - quad)
}

/// Maximizer of a unimodal-on-`[lo, hi]` function by golden-section search.
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Phase MLE by direct numerical maximization of the likelihood term
/// `Re[e^{−jα_m}·conj(a_m·p)·w_m·g_m]`, chain by chain.
///
/// `g_m` is entry `m` of the first DFT-whitened block of `y`, and `w_m` stands
/// in for `d_m / (σ²T·d_m² + N₀)`. Any positive weights give the same maximizer.
pub fn estimate_phase_mle_numeric(
    obs: &ObservationSet,
    steering: &DVector<Complex64>,
    pilot: Complex64,
    weights: &[f64],
) -> Result<PhaseEstimate> {
    check_reference(obs, steering, pilot)?;
    let (m, t) = (obs.scenario().m, obs.scenario().t);
    if weights.len() != m {
        return Err(Error::invalid(format!("expected {m} weights, got {}", weights.len())));
    }
    if let Some(w) = weights.iter().find(|&&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::invalid(format!("weights must be positive, got {w}")));
    }
    let q = dft_matrix(t);
    let g = DVector::from_fn(m, |k, _| (0..t).map(|n| q[(0, n)] * obs.y()[(k, n)]).sum::<Complex64>());
    let bad = degenerate_chains(&g);
    if !bad.is_empty() {
        return Err(Error::DegenerateEstimate { chains: bad });
    }

    let step = 2.0 * PI / MLE_GRID_POINTS as f64;
    let alpha_hat = (0..m)
        .map(|k| {
            let coef = (steering[k] * pilot).conj() * weights[k] * g[k];
            let objective = |alpha: f64| (Complex64::from_polar(1.0, -alpha) * coef).re;
            let grid = (1..=MLE_GRID_POINTS).map(|i| -PI + step * i as f64);
            let best = grid
                .map(|a| (a, objective(a)))
                .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc })
                .0;
            wrap(golden_section_max(objective, best - step, best + step, MLE_TOLERANCE))
        })
        .collect();
    Ok(PhaseEstimate { alpha_hat })
}

/// Amplitude direction from raw second moments:
/// `d̂ = sqrt(Σ_t y_t⊙y_t* + vecdiag Σ_t Σ_{t'≠t} y_t·y_{t'}ᴴ)`.
pub fn estimate_amplitude_moment(moments: &SampleMoments) -> AmplitudeEstimate {
    let (m, t) = (moments.m(), moments.t());
    let mut auto = DVector::<Complex64>::zeros(m);
    let mut cross = DVector::<Complex64>::zeros(m);
    for t1 in 0..t {
        auto += moments.cross_block_diagonal(t1, t1);
        for t2 in (0..t).filter(|&t2| t2 != t1) {
            cross += moments.cross_block_diagonal(t1, t2);
        }
    }
    // finite-sample residue can push the radicand slightly negative
    let d_hat = (auto + cross).iter().map(|r| r.re.max(0.0).sqrt()).collect();
    AmplitudeEstimate { d_hat }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{sample_moments, synthesize};
    use crate::model::{build_covariance, build_mean, FrontEnd, Scenario};
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn scenario(m: usize, t: usize) -> Scenario {
        let mut sc = Scenario::new(m, t);
        sc.gamma = 1.0;
        sc.sigma2 = 0.5;
        sc.n0 = 0.2;
        sc.phi = 0.6;
        sc.pilot = Complex64::from_polar(1.0, -0.4);
        sc
    }

    fn random_front_end(m: usize, seed: u64) -> FrontEnd {
        let d = (0..m).map(|k| 0.5 + ((k as u64 * 7 + seed) % 11) as f64 / 10.0).collect();
        let a = (0..m).map(|k| -3.0 + ((k as u64 * 13 + seed * 3) % 61) as f64 / 10.0).collect();
        FrontEnd::new(d, a).unwrap()
    }

    fn max_wrapped_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| wrap(x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn moment_phase_noiseless() {
        let mut sc = scenario(5, 3);
        sc.sigma2 = 0.0;
        sc.n0 = 0.0;
        let a = sc.steering().unwrap();
        let fe = FrontEnd::new(vec![1.0; 5], vec![0.0; 5]).unwrap();
        let est = estimate_phase_moment(&synthesize(&sc, &fe, 1).unwrap(), &a, sc.pilot).unwrap();
        for x in est.alpha_hat {
            assert_abs_diff_eq!(x, 0.0, epsilon = 1e-12);
        }
        let fe = random_front_end(5, 3);
        let est = estimate_phase_moment(&synthesize(&sc, &fe, 1).unwrap(), &a, sc.pilot).unwrap();
        assert!(max_wrapped_diff(&est.alpha_hat, fe.phases()) < 1e-12);
    }

    #[test]
    fn moment_phase_matches_hand_recomputation() {
        let mut sc = scenario(2, 2);
        sc.phi = 0.0;
        sc.pilot = Complex64::new(1.0, 0.0);
        let fe = FrontEnd::new(vec![1.0, 1.0], vec![0.5, -1.2]).unwrap();
        let obs = synthesize(&sc, &fe, 77).unwrap();
        let a = sc.steering().unwrap();
        let est = estimate_phase_moment(&obs, &a, sc.pilot).unwrap();
        let y = obs.y();
        for k in 0..2 {
            let s = y[(k, 0)] + y[(k, 1)];
            let want = wrap(s.im.atan2(s.re) - a[k].im.atan2(a[k].re));
            assert_abs_diff_eq!(est.alpha_hat[k], want, epsilon = 1e-12);
        }
    }

    #[test]
    fn moment_phase_flags_zero_sum() {
        let sc = scenario(2, 2);
        let y = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 1.0),
                Complex64::new(-1.0, -1.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let obs = ObservationSet::new(y, sc.clone()).unwrap();
        let a = sc.steering().unwrap();
        match estimate_phase_moment(&obs, &a, sc.pilot) {
            Err(Error::DegenerateEstimate { chains }) => assert_eq!(chains, vec![0]),
            other => panic!("expected degenerate estimate, got {other:?}"),
        }
        assert!(matches!(
            estimate_phase_mle_numeric(&obs, &a, sc.pilot, &[1.0, 1.0]),
            Err(Error::DegenerateEstimate { .. })
        ));
    }

    #[test]
    fn rejects_bad_reference() {
        let sc = scenario(3, 2);
        let obs = synthesize(&sc, &random_front_end(3, 1), 1).unwrap();
        let a = sc.steering().unwrap();
        let short = DVector::from_element(2, Complex64::new(1.0, 0.0));
        assert!(estimate_phase_moment(&obs, &short, sc.pilot).is_err());
        assert!(estimate_phase_moment(&obs, &a, Complex64::new(0.5, 0.0)).is_err());
        assert!(estimate_phase_mle_numeric(&obs, &a, sc.pilot, &[1.0, 0.0, 1.0]).is_err());
        assert!(estimate_phase_mle_numeric(&obs, &a, sc.pilot, &[1.0, 1.0]).is_err());
    }

    fn dense_log_likelihood(obs: &ObservationSet, xi: &ParamVector) -> f64 {
        let (sc, fe) = obs.scenario().with_params(xi).unwrap();
        let mu = build_mean(&sc, &fe).unwrap();
        let cov = build_covariance(&sc, &fe).unwrap();
        let beta = obs.stacked() - mu;
        let chol = cov.clone().cholesky().expect("positive definite");
        let log_det: f64 = 2.0 * chol.l().diagonal().iter().map(|z| z.re.ln()).sum::<f64>();
        let quad = (beta.adjoint() * cov.try_inverse().unwrap() * &beta)[(0, 0)].re;
        -((sc.m * sc.t) as f64) * PI.ln() - log_det - quad
    }

    #[test]
    fn log_likelihood_examples() {
        // β = 0
        let sc = scenario(3, 2);
        let fe = random_front_end(3, 2);
        let xi = ParamVector::from_parts(&fe, sc.sigma2, sc.gamma);
        let mu = build_mean(&sc, &fe).unwrap();
        let y = DMatrix::from_column_slice(3, 2, mu.as_slice());
        let obs = ObservationSet::new(y, sc.clone()).unwrap();
        let ll = log_likelihood(&obs, &xi, &sc.steering().unwrap(), sc.pilot).unwrap();
        let log_det = dft_whitening(&sc, &fe).unwrap().log_det();
        assert_abs_diff_eq!(ll, -6.0 * PI.ln() - log_det, epsilon = 1e-12);

        // scalar case: C = 2, μ = 1, y = 0
        let mut sc = Scenario::new(1, 1);
        sc.phi = PI / 2.0;
        let fe = FrontEnd::identity(1).unwrap();
        let xi = ParamVector::from_parts(&fe, 1.0, 1.0);
        let obs = ObservationSet::new(DMatrix::zeros(1, 1), sc.clone()).unwrap();
        let ll = log_likelihood(&obs, &xi, &sc.steering().unwrap(), sc.pilot).unwrap();
        assert_abs_diff_eq!(ll, -PI.ln() - 2f64.ln() - 0.5, epsilon = 1e-14);
    }

    #[test]
    fn log_likelihood_needs_noise() {
        let mut sc = scenario(2, 2);
        sc.n0 = 0.0;
        let fe = random_front_end(2, 1);
        let obs = ObservationSet::new(DMatrix::zeros(2, 2), sc.clone()).unwrap();
        let xi = ParamVector::from_parts(&fe, 1.0, 1.0);
        assert!(matches!(
            log_likelihood(&obs, &xi, &sc.steering().unwrap(), sc.pilot),
            Err(Error::NumericalDomain(_))
        ));
    }

    #[test]
    fn log_likelihood_whitened_equals_dense() {
        for seed in 0..20u64 {
            let m = 1 + (seed as usize % 5);
            let t = 1 + (seed as usize % 4);
            let sc = scenario(m, t);
            let fe = random_front_end(m, seed);
            let obs = synthesize(&sc, &fe, seed).unwrap();
            // evaluate away from the truth as well
            let xi = ParamVector::from_parts(&random_front_end(m, seed + 5), 0.9, 1.4);
            let fast = log_likelihood(&obs, &xi, &sc.steering().unwrap(), sc.pilot).unwrap();
            let slow = dense_log_likelihood(&obs, &xi);
            assert!((fast - slow).abs() <= 1e-10 * slow.abs().max(1.0), "{fast} vs {slow}");
        }
    }

    #[test]
    fn numeric_mle_ignores_weights() {
        let sc = scenario(8, 3);
        let fe = random_front_end(8, 4);
        let obs = synthesize(&sc, &fe, 11).unwrap();
        let a = sc.steering().unwrap();
        let ones = estimate_phase_mle_numeric(&obs, &a, sc.pilot, &[1.0; 8]).unwrap();
        let t = sc.t as f64;
        let true_w: Vec<f64> =
            fe.amplitudes().iter().map(|d| d / (sc.sigma2 * t * d * d + sc.n0)).collect();
        let weighted = estimate_phase_mle_numeric(&obs, &a, sc.pilot, &true_w).unwrap();
        assert!(max_wrapped_diff(&ones.alpha_hat, &weighted.alpha_hat) < 1e-6);
    }

    #[test]
    fn numeric_mle_noiseless() {
        let mut sc = scenario(6, 2);
        sc.sigma2 = 0.0;
        sc.n0 = 0.0;
        let fe = random_front_end(6, 9);
        let obs = synthesize(&sc, &fe, 0).unwrap();
        let est = estimate_phase_mle_numeric(&obs, &sc.steering().unwrap(), sc.pilot, &[1.0; 6]).unwrap();
        assert!(max_wrapped_diff(&est.alpha_hat, fe.phases()) < 1e-6);
    }

    #[test]
    fn numeric_mle_equals_moment() {
        let mut worst: f64 = 0.0;
        for seed in 0..100u64 {
            let mut sc = scenario(8, 3);
            sc.phi = -1.5 + 3.0 * (seed as f64 / 100.0);
            let fe = random_front_end(8, seed);
            let obs = synthesize(&sc, &fe, 1000 + seed).unwrap();
            let a = sc.steering().unwrap();
            let mle = estimate_phase_mle_numeric(&obs, &a, sc.pilot, &[1.0; 8]).unwrap();
            let mom = estimate_phase_moment(&obs, &a, sc.pilot).unwrap();
            worst = worst.max(max_wrapped_diff(&mle.alpha_hat, &mom.alpha_hat));
        }
        assert!(worst <= 1e-6, "max wrapped difference {worst}");
    }

    #[test]
    fn pilot_rotation_leaves_phase_unchanged() {
        let sc = scenario(4, 3);
        let fe = random_front_end(4, 2);
        let base = synthesize(&sc, &fe, 3).unwrap();
        let a = sc.steering().unwrap();
        let theta = 1.1;
        let rot = Complex64::from_polar(1.0, theta);
        let mut sc2 = sc.clone();
        sc2.pilot = sc.pilot * rot;
        // circular noise: rotating the whole observation is a draw under pilot p·e^{jθ}
        let e1 = estimate_phase_moment(&base, &a, sc.pilot).unwrap();
        let e2 = estimate_phase_moment(&base.scaled(rot), &a, sc2.pilot).unwrap();
        assert!(max_wrapped_diff(&e1.alpha_hat, &e2.alpha_hat) < 1e-12);

        let mut quiet = sc.clone();
        quiet.sigma2 = 0.0;
        quiet.n0 = 0.0;
        let mut quiet_rot = quiet.clone();
        quiet_rot.pilot = sc2.pilot;
        let e3 = estimate_phase_moment(&synthesize(&quiet_rot, &fe, 0).unwrap(), &a, quiet_rot.pilot).unwrap();
        assert!(max_wrapped_diff(&e3.alpha_hat, fe.phases()) < 1e-12);
    }

    #[test]
    fn amplitude_noiseless_is_scaled_truth() {
        let mut sc = scenario(5, 3);
        sc.sigma2 = 0.0;
        sc.n0 = 0.0;
        sc.gamma = 1.7;
        let fe = random_front_end(5, 8);
        let est = estimate_amplitude_moment(&sample_moments(&synthesize(&sc, &fe, 0).unwrap()));
        for (dh, d) in est.d_hat.iter().zip(fe.amplitudes()) {
            assert_abs_diff_eq!(*dh, 3.0 * 1.7 * d, epsilon = 1e-12);
        }
    }

    #[test]
    fn amplitude_collapses_to_sum_magnitude() {
        let sc = scenario(2, 3);
        let obs = synthesize(&sc, &random_front_end(2, 1), 21).unwrap();
        let est = estimate_amplitude_moment(&sample_moments(&obs));
        let y = obs.y();
        for k in 0..2 {
            let want = (y[(k, 0)] + y[(k, 1)] + y[(k, 2)]).norm();
            assert_abs_diff_eq!(est.d_hat[k], want, epsilon = 1e-10);
        }
    }

    #[test]
    fn amplitude_second_moment_expectation() {
        let mut sc = scenario(3, 3);
        sc.gamma = 0.8;
        sc.sigma2 = 1.2;
        sc.n0 = 0.6;
        let fe = FrontEnd::new(vec![0.5, 1.0, 1.5], vec![0.1, 0.2, 0.3]).unwrap();
        let reps = 10_000u64;
        let mut acc = [0.0; 3];
        for seed in 0..reps {
            let est = estimate_amplitude_moment(&sample_moments(&synthesize(&sc, &fe, seed).unwrap()));
            for k in 0..3 {
                acc[k] += est.d_hat[k].powi(2) / 9.0;
            }
        }
        for k in 0..3 {
            let d2 = fe.amplitudes()[k].powi(2);
            let want = d2 * (sc.gamma.powi(2) + sc.sigma2) + sc.n0 / 3.0;
            let got = acc[k] / reps as f64;
            assert!((got / want - 1.0).abs() < 0.03, "chain {k}: {got} vs {want}");
        }
    }

    #[test]
    fn phase_error_distribution_ignores_aoa() {
        let m = 4;
        let fe0 = FrontEnd::identity(m).unwrap();
        let n0 = crate::model::noise_power_for_snr(crate::model::db_to_linear(3.0), &fe0, 1.0, 1.0).unwrap();
        let variance_at = |phi_deg: f64| {
            let mut sc = Scenario::new(m, 3);
            sc.gamma = 1.0;
            sc.sigma2 = 1.0;
            sc.n0 = n0;
            sc.phi = phi_deg.to_radians();
            let a = sc.steering().unwrap();
            let mut errs = Vec::new();
            for r in 0..10_000u64 {
                let seed = r * 1_000 + phi_deg as u64;
                let fe = random_front_end(m, r);
                let obs = synthesize(&sc, &fe, seed).unwrap();
                let est = estimate_phase_moment(&obs, &a, sc.pilot).unwrap();
                errs.extend(est.alpha_hat.iter().zip(fe.phases()).map(|(x, y)| wrap(x - y)));
            }
            let mean = errs.iter().sum::<f64>() / errs.len() as f64;
            errs.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (errs.len() - 1) as f64
        };
        let v: Vec<f64> = [0.0, 30.0, 60.0].iter().map(|&p| variance_at(p)).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!((v[i] - v[j]).abs() / v[i].max(v[j]) < 0.05, "{v:?}");
            }
        }
    }

    #[test]
    fn strong_los_makes_phase_error_vanish() {
        let mut sc = scenario(8, 3);
        sc.gamma = 1e3;
        sc.sigma2 = 1.0;
        sc.n0 = 1.0;
        let a = sc.steering().unwrap();
        let mut sq = 0.0;
        let mut n = 0usize;
        for seed in 0..200u64 {
            let fe = random_front_end(8, seed);
            let est = estimate_phase_moment(&synthesize(&sc, &fe, seed).unwrap(), &a, sc.pilot).unwrap();
            for (x, y) in est.alpha_hat.iter().zip(fe.phases()) {
                sq += wrap(x - y).powi(2);
                n += 1;
            }
        }
        assert!(sq / (n as f64) < 1e-5);
    }

    proptest! {
        #[test]
        fn amplitude_scales_with_observation(c in 0.01f64..100.0, seed in 0u64..500) {
            let sc = scenario(6, 3);
            let obs = synthesize(&sc, &random_front_end(6, seed), seed).unwrap();
            let base = estimate_amplitude_moment(&sample_moments(&obs));
            let scaled = estimate_amplitude_moment(&sample_moments(&obs.scaled(Complex64::new(c, 0.0))));
            for (b, s) in base.d_hat.iter().zip(&scaled.d_hat) {
                prop_assert!((s - c * b).abs() <= 1e-9 * (c * b).max(1e-12));
            }
        }

        #[test]
        fn equivalence_holds_for_any_pilot(theta in -PI..PI, seed in 0u64..1000, phi in -1.5f64..1.5) {
            let mut sc = scenario(5, 2);
            sc.pilot = Complex64::from_polar(1.0, theta);
            sc.phi = phi;
            let obs = synthesize(&sc, &random_front_end(5, seed), seed).unwrap();
            let a = sc.steering().unwrap();
            let mle = estimate_phase_mle_numeric(&obs, &a, sc.pilot, &[0.3, 1.0, 2.0, 7.0, 0.01]).unwrap();
            let mom = estimate_phase_moment(&obs, &a, sc.pilot).unwrap();
            prop_assert!(max_wrapped_diff(&mle.alpha_hat, &mom.alpha_hat) <= 1e-6);
            for x in mle.alpha_hat.iter().chain(&mom.alpha_hat) {
                prop_assert!(*x > -PI && *x <= PI);
            }
        }
    }
}
