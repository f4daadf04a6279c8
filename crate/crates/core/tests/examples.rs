#[allow(dead_code)]
mod signal_model {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/signal_model.rs"));
}

#[test]
fn signal_model_example_runs() {
    signal_model::run_example().expect("signal_model example should run");
}

#[allow(dead_code)]
mod estimate_front_end {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/estimate_front_end.rs"));
}

#[test]
fn estimate_front_end_example_runs() {
    estimate_front_end::run_example().expect("estimate_front_end example should run");
}

#[allow(dead_code)]
mod mle_equivalence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mle_equivalence.rs"));
}

#[test]
fn mle_equivalence_example_runs() {
    mle_equivalence::run_example().expect("mle_equivalence example should run");
}

#[allow(dead_code)]
mod crlb_analysis {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/crlb_analysis.rs"));
}

#[test]
fn crlb_analysis_example_runs() {
    crlb_analysis::run_example().expect("crlb_analysis example should run");
}

#[allow(dead_code)]
mod phase_variance_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/phase_variance_sweep.rs"));
}

#[test]
fn phase_variance_sweep_example_runs() {
    phase_variance_sweep::run_example().expect("phase_variance_sweep example should run");
}

#[allow(dead_code)]
mod amplitude_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/amplitude_sweep.rs"));
}

#[test]
fn amplitude_sweep_example_runs() {
    amplitude_sweep::run_example().expect("amplitude_sweep example should run");
}

#[allow(dead_code)]
mod aoa_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/aoa_sweep.rs"));
}

#[test]
fn aoa_sweep_example_runs() {
    aoa_sweep::run_example().expect("aoa_sweep example should run");
}
