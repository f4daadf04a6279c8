//! Configuration-driven Monte-Carlo sweeps, result tables and self-checks.
//!
//! Grid points and realizations run on the rayon pool. Results are collected
//! in index order and each realization's seed depends only on
//! `(master_seed, point, index)`, so the CSV is byte-identical for any thread
//! count.

mod config;
mod metrics;
mod seed;
mod selfcheck;
mod sweep;

pub use config::{ExperimentConfig, GridPoint, PhaseTruth};
pub use metrics::{
    cosine_similarity, phase_error_variance, read_csv, read_rows, wrapped_errors, write_csv, write_rows, MetricName,
    MetricRow,
};
pub use seed::child_seed;
pub use selfcheck::{
    check_fim, check_mle_equivalence, check_schur, check_whitening, run_selfcheck, CheckOutcome,
};
pub use sweep::{
    crlb_rows, point_bounds, point_scenario, run_realization, run_sweep, run_sweep_to_csv, simulate,
    write_realization, Realization,
};
