// Steering vector, stacked mean/covariance and the DFT whitening that
// diagonalizes the covariance.

use mimocal::model::{build_covariance, build_mean, dft_whitening, steering_vector, FrontEnd, Scenario};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = steering_vector(30f64.to_radians(), 4, 0.5)?;
    println!("steering a(30°), M=4:");
    for (k, z) in a.iter().enumerate() {
        println!("  a[{k}] = {:+.4} {:+.4}j", z.re, z.im);
    }

    let mut sc = Scenario::new(3, 2);
    sc.gamma = 1.5;
    sc.sigma2 = 0.8;
    sc.n0 = 0.2;
    sc.phi = 0.3;
    let fe = FrontEnd::new(vec![1.0, 0.7, 1.3], vec![0.4, -1.2, 2.5])?;

    let mu = build_mean(&sc, &fe)?;
    let cov = build_covariance(&sc, &fe)?;
    println!("stacked mean has {} entries, covariance is {}×{}", mu.len(), cov.nrows(), cov.ncols());

    let w = dft_whitening(&sc, &fe)?;
    println!("whitened variances Λ = {:.4?}", w.lambda().as_slice());
    let err = (w.covariance() - &cov).iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("max |Q̃ᴴΛQ̃ − C| = {err:.2e}");
    if err > 1e-12 {
        return Err(format!("whitening identity violated: {err}").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
