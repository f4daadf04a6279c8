use std::path::Path;
use std::process::Command;

use mimocal::harness::read_csv;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mimocal"))
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("cfg.toml");
    std::fs::write(&path, text).unwrap();
    path
}

const SMALL: &str = "m = 8\nn_mc = 3\nsnr_db = [0.0, 10.0]\ngamma = [0.0, 1.0]\nphi_deg = [30.0]\n";

#[test]
fn sweep_writes_long_csv_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("out.csv");
    let status = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(["--mc", "4", "--seed", "9"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let rows = read_csv(&out).unwrap();
    assert_eq!(rows.len(), 4 * 6);
    assert!(rows.iter().all(|r| r.n_mc == 4 && r.seed == 9));
}

#[test]
fn crlb_writes_bounds_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("crlb.csv");
    let status = bin().args(["crlb", "--config"]).arg(&cfg).arg("--out").arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let rows = read_csv(&out).unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.n_mc == 0));
}

#[test]
fn simulate_dumps_one_row_per_chain() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("sim.csv");
    let status = bin()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .args(["--seed", "4", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn selfcheck_passes() {
    let out = bin().arg("selfcheck").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("[PASS]")).count(), 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "n_mc = 0\n");
    let out = dir.path().join("x.csv");
    let code = |args: &mut Command| args.output().unwrap().status.code();

    assert_eq!(code(bin().args(["sweep", "--config"]).arg(&bad).arg("--out").arg(&out)), Some(1));
    assert_eq!(code(bin().args(["sweep", "--out", "x.csv"])), Some(1));
    assert_eq!(code(bin().arg("frobnicate")), Some(1));

    let good = write_config(dir.path(), SMALL);
    let unwritable = dir.path().join("missing").join("x.csv");
    assert_eq!(code(bin().args(["sweep", "--config"]).arg(&good).arg("--out").arg(&unwritable)), Some(3));
    assert_eq!(code(bin().args(["crlb", "--config"]).arg(dir.path().join("nope.toml")).arg("--out").arg(&out)), Some(3));

    // σ² = γ = 0 leaves no signal, so no noise level meets the SNR
    let silent = write_config(dir.path(), "m = 4\nsigma2 = 0.0\ngamma = [0.0]\n");
    assert_eq!(code(bin().args(["crlb", "--config"]).arg(&silent).arg("--out").arg(&out)), Some(1));
}
