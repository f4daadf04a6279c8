// Fisher information, its finite-difference cross-check, the phase bounds,
// and the scale ambiguity that leaves the amplitude bounds unbounded.

use mimocal::crlb::{
    crlb_diagonal_exact, crlb_diagonal_schur, crlb_high_snr, fim_closed_form, fim_numeric, DEFAULT_FD_STEP,
};
use mimocal::model::{db_to_linear, noise_power_for_snr, FrontEnd, ParamVector, Scenario};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fe = FrontEnd::new(vec![1.0, 0.8, 1.2, 0.9], vec![0.1, -0.7, 2.0, 3.0])?;
    let mut sc = Scenario::new(4, 3);
    sc.n0 = 0.5;
    let xi = ParamVector::from_parts(&fe, 1.0, 1.5);

    let closed = fim_closed_form(&xi, &sc)?;
    let numeric = fim_numeric(&xi, &sc, DEFAULT_FD_STEP)?;
    let rel = (closed.matrix() - numeric.matrix()).amax() / closed.matrix().amax();
    println!("closed-form vs finite-difference FIM: max deviation {rel:.2e} (relative to max entry)");

    let exact = crlb_diagonal_exact(&closed)?;
    let schur = crlb_diagonal_schur(&xi, &sc)?;
    println!("phase CRLB (inverse)  : {:.5?}", exact.crlb_alpha);
    println!("phase CRLB (Schur)    : {:.5?}", schur.crlb_alpha);
    println!("amplitude CRLB        : {:?}", exact.crlb_d);
    for (range, cond) in &exact.singular {
        println!("  singular block {range:?}, condition {cond:.1e}");
    }
    println!("amplitude bound, γ known (χ): {:.5?}", schur.chi_d);

    // scale ambiguity: I·(d, −2σ², 0, −γ) = 0
    let m = 4;
    let mut v = nalgebra::DVector::<f64>::zeros(2 * m + 2);
    for k in 0..m {
        v[k] = xi.amplitudes()[k];
    }
    v[m] = -2.0 * xi.sigma2();
    v[2 * m + 1] = -xi.gamma();
    println!("‖I·v‖ for the scale direction v: {:.2e}", (closed.matrix() * &v).norm());

    // high-SNR forms at M = 100
    let big = FrontEnd::identity(100)?;
    let xi = ParamVector::from_parts(&big, 1.0, 1.0);
    let hs = crlb_high_snr(&xi, 3);
    for snr_db in [10.0, 30.0, 50.0] {
        let mut sc = Scenario::new(100, 3);
        sc.n0 = noise_power_for_snr(db_to_linear(snr_db), &big, 1.0, 1.0)?;
        let exact = crlb_diagonal_exact(&fim_closed_form(&xi, &sc)?)?;
        println!(
            "SNR {snr_db:>4} dB: phase CRLB {:.5} vs σ²/(2γ²) = {:.5}",
            exact.crlb_alpha[0], hs.high_snr_alpha[0]
        );
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
