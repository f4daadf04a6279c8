// Cosine similarity of the amplitude estimate against γ for several SNRs.

use mimocal::harness::{run_sweep, ExperimentConfig, MetricName};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        experiment_id: "cos_sim_vs_gamma".into(),
        n_mc: 20,
        master_seed: 2,
        gamma: vec![0.0, 0.5, 1.0, 1.5, 2.0],
        metrics: Some(vec![MetricName::CosSimMean, MetricName::CosSimStd]),
        ..ExperimentConfig::default()
    };
    let rows = run_sweep(&cfg)?;
    println!("{:>7} {:>5} {:>10} {:>9}", "SNR dB", "γ", "mean rad", "std");
    for pair in rows.chunks(2) {
        println!("{:>7} {:>5} {:>10.4} {:>9.4}", pair[0].snr_db, pair[0].gamma, pair[0].value, pair[1].value);
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
