use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mimocal::harness::{self, ExperimentConfig};
use mimocal::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Monte-Carlo harness for blind front-end calibration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo sweep over the config grid; long-format CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override `n_mc`.
        #[arg(long)]
        mc: Option<usize>,
        /// Override `master_seed`.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Phase bounds over the config grid, without simulation.
    Crlb {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dump one realization (observations and estimates) per chain.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in oracle suites.
    Selfcheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Sweep { config, out, mc, seed } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(n) = mc {
                cfg.n_mc = n;
            }
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            let rows = harness::run_sweep_to_csv(&cfg, &out)?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
        }
        Command::Crlb { config, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let file = File::create(&out)?;
            let rows = harness::crlb_rows(&cfg)?;
            harness::write_rows(BufWriter::new(file), &rows)?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
        }
        Command::Simulate { config, seed, out } => {
            let cfg = ExperimentConfig::load(&config)?;
            let file = File::create(&out)?;
            let r = harness::simulate(&cfg, seed)?;
            harness::write_realization(BufWriter::new(file), &r)?;
        }
        Command::Selfcheck { seed } => {
            let checks = harness::run_selfcheck(seed)?;
            for c in &checks {
                println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if let Some(failed) = checks.iter().find(|c| !c.passed) {
                return Err(Error::NumericalDomain(format!("self-check failed: {}", failed.name)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
