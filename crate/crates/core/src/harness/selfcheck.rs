//! Built-in oracle suites, run by the `selfcheck` command.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::synthesize;
use crate::crlb::{crlb_diagonal_exact, crlb_diagonal_schur, fim_closed_form, fim_numeric, DEFAULT_FD_STEP};
use crate::error::Result;
use crate::estimators::{estimate_phase_mle_numeric, estimate_phase_moment};
use crate::model::{build_covariance, dft_whitening, wrap, FrontEnd, ParamVector, Scenario};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed error against the tolerance.
    pub detail: String,
}

fn random_instance(rng: &mut ChaCha8Rng, m: usize, t: usize) -> Result<(Scenario, FrontEnd)> {
    let mut sc = Scenario::new(m, t);
    sc.gamma = rng.random_range(0.1..3.0);
    sc.sigma2 = rng.random_range(0.1..2.0);
    sc.n0 = rng.random_range(0.05..2.0);
    sc.phi = rng.random_range(-1.5..1.5);
    sc.pilot = Complex64::from_polar(1.0, rng.random_range(-3.0..3.0));
    let d = (0..m).map(|_| rng.random_range(0.3..2.0)).collect();
    let alpha = (0..m).map(|_| rng.random_range(-3.1..3.1)).collect();
    Ok((sc, FrontEnd::new(d, alpha)?))
}

fn outcome(name: &'static str, worst: f64, tol: f64) -> CheckOutcome {
    CheckOutcome { name, passed: worst <= tol, detail: format!("worst {worst:.3e} (tolerance {tol:.0e})") }
}

/// `‖Q̃ᴴΛQ̃ − C‖_max / ‖C‖_max` over random instances.
pub fn check_whitening(seed: u64, instances: usize) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let (m, t) = (rng.random_range(1..=8), rng.random_range(1..=5));
        let (sc, fe) = random_instance(&mut rng, m, t)?;
        let cov = build_covariance(&sc, &fe)?;
        let w = dft_whitening(&sc, &fe)?;
        let scale = cov.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let err = (w.covariance() - &cov).iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max(err / scale);
    }
    Ok(outcome("whitening identity", worst, 1e-10))
}

/// Closed-form against finite-difference information; relative error on
/// nonzero entries, absolute on zeros (scaled by 1e-2 to share one tolerance).
pub fn check_fim(seed: u64, instances: usize) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..instances {
        let (sc, fe) = random_instance(&mut rng, 4, 3)?;
        let xi = ParamVector::from_parts(&fe, sc.sigma2, sc.gamma);
        let closed = fim_closed_form(&xi, &sc)?;
        let numeric = fim_numeric(&xi, &sc, DEFAULT_FD_STEP)?;
        for (a, b) in closed.matrix().iter().zip(numeric.matrix().iter()) {
            let err = if *a == 0.0 { b.abs() * 1e-2 } else { ((a - b) / a).abs() };
            worst = worst.max(err);
        }
    }
    Ok(outcome("FIM cross-check", worst, 1e-4))
}

/// Schur factorization against block-wise numeric inversion. Phase bounds
/// must agree to 1e-8; amplitude bounds must be unbounded on both routes.
pub fn check_schur(seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut singular_agree = true;
    for m in [4, 16, 64] {
        let (sc, fe) = random_instance(&mut rng, m, 3)?;
        let xi = ParamVector::from_parts(&fe, sc.sigma2, sc.gamma);
        let exact = crlb_diagonal_exact(&fim_closed_form(&xi, &sc)?)?;
        let schur = crlb_diagonal_schur(&xi, &sc)?;
        for (a, b) in schur.crlb_alpha.iter().zip(&exact.crlb_alpha) {
            worst = worst.max(((a - b) / b).abs());
        }
        singular_agree &= schur.crlb_d.iter().zip(&exact.crlb_d).all(|(a, b)| a.is_infinite() == b.is_infinite());
    }
    let mut out = outcome("Schur consistency", worst, 1e-8);
    out.passed &= singular_agree;
    if !singular_agree {
        out.detail.push_str("; amplitude singularity flags disagree");
    }
    Ok(out)
}

/// Max wrapped difference between the numeric MLE and the moment estimator.
pub fn check_mle_equivalence(seed: u64, instances: usize) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for i in 0..instances {
        let (sc, fe) = random_instance(&mut rng, 8, 3)?;
        let obs = synthesize(&sc, &fe, seed.wrapping_add(i as u64))?;
        let a = sc.steering()?;
        let moment = estimate_phase_moment(&obs, &a, sc.pilot)?;
        let mle = estimate_phase_mle_numeric(&obs, &a, sc.pilot, &[1.0; 8])?;
        for (x, y) in moment.alpha_hat.iter().zip(&mle.alpha_hat) {
            worst = worst.max(wrap(x - y).abs());
        }
    }
    Ok(outcome("MLE/moment equivalence", worst, 1e-6))
}

pub fn run_selfcheck(seed: u64) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        check_whitening(seed, 100)?,
        check_fim(seed, 20)?,
        check_schur(seed)?,
        check_mle_equivalence(seed, 100)?,
    ])
}
