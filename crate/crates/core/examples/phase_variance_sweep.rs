// Phase-error variance against LOS strength γ for several SNRs, with the
// CRLB alongside, written as long-format CSV.

use mimocal::harness::{run_sweep_to_csv, ExperimentConfig, MetricName};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        experiment_id: "phase_var_vs_gamma".into(),
        n_mc: 10,
        master_seed: 1,
        metrics: Some(vec![MetricName::PhaseErrVar, MetricName::CrlbAlphaMean]),
        ..ExperimentConfig::default()
    };
    let out = std::env::temp_dir().join("mimocal_phase_variance.csv");
    let rows = run_sweep_to_csv(&cfg, &out)?;
    println!("{:>7} {:>6} {:>14} {:>12}", "SNR dB", "γ", "phase_err_var", "CRLB");
    for pair in rows.chunks(2) {
        println!("{:>7} {:>6} {:>14.5} {:>12.5}", pair[0].snr_db, pair[0].gamma, pair[0].value, pair[1].value);
    }
    println!("wrote {}", out.display());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
