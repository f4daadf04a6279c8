// One channel realization, then phase and amplitude estimates of the
// front end.

use mimocal::channel::{sample_moments, synthesize};
use mimocal::estimators::{estimate_amplitude_moment, estimate_phase_mle_numeric, estimate_phase_moment};
use mimocal::harness::{cosine_similarity, phase_error_variance};
use mimocal::model::{db_to_linear, noise_power_for_snr, FrontEnd, Scenario};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = 16;
    let d: Vec<f64> = (0..m).map(|k| 0.8 + 0.4 * (k as f64 / m as f64)).collect();
    let alpha: Vec<f64> = (0..m).map(|k| -3.0 + 6.0 * (k as f64 + 0.5) / m as f64).collect();
    let fe = FrontEnd::new(d, alpha)?;

    let mut sc = Scenario::new(m, 3);
    sc.gamma = 2.0;
    sc.sigma2 = 1.0;
    sc.phi = 20f64.to_radians();
    sc.n0 = noise_power_for_snr(db_to_linear(10.0), &fe, sc.sigma2, sc.gamma)?;

    let obs = synthesize(&sc, &fe, 2024)?;
    let a = sc.steering()?;
    let moment = estimate_phase_moment(&obs, &a, sc.pilot)?;
    let mle = estimate_phase_mle_numeric(&obs, &a, sc.pilot, &vec![1.0; m])?;
    let amp = estimate_amplitude_moment(&sample_moments(&obs));

    println!("chain   α_true  α̂_moment   α̂_MLE    d_true   d̂");
    for k in 0..m {
        println!(
            "{k:>5} {:>8.3} {:>9.3} {:>8.3} {:>8.3} {:>6.3}",
            fe.phases()[k],
            moment.alpha_hat[k],
            mle.alpha_hat[k],
            fe.amplitudes()[k],
            amp.d_hat[k]
        );
    }
    println!("phase error variance (MLE): {:.4} rad²", phase_error_variance(&mle.alpha_hat, fe.phases())?);
    println!("amplitude cosine similarity: {:.4} rad", cosine_similarity(&amp.d_hat, fe.amplitudes())?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
