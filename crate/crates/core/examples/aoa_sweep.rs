// Phase-error variance against γ for several angles of arrival at 3 dB.
// The curves coincide: the estimator removes the steering phase exactly.

use mimocal::harness::{run_sweep, ExperimentConfig, MetricName};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        experiment_id: "aoa_comparison".into(),
        n_mc: 20,
        master_seed: 3,
        snr_db: vec![3.0],
        gamma: vec![0.5, 1.0, 2.0],
        phi_deg: vec![0.0, 30.0, 60.0],
        metrics: Some(vec![MetricName::PhaseErrVar]),
        ..ExperimentConfig::default()
    };
    let rows = run_sweep(&cfg)?;
    println!("{:>5} {:>8} {:>10}", "γ", "φ deg", "variance");
    for r in &rows {
        println!("{:>5} {:>8} {:>10.5}", r.gamma, r.phi_deg, r.value);
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
