use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use dmsec::experiment::{emit_csv, emit_flops_csv, flops_table, run_sweep, ExperimentConfig};
use dmsec::oracle::suite::run_property_suite;

/// Secrecy-rate sweeps for IRS-aided directional modulation.
#[derive(Parser)]
#[command(name = "dmsec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a TOML config and write the result as CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the master seed from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (default: one per core).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Write operation counts of both schemes for a list of IRS sizes.
    Flops {
        #[arg(long)]
        na: usize,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        ns_list: Vec<usize>,
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the brute-force property suite.
    Verify,
}

fn sweep(config: PathBuf, out: PathBuf, seed: Option<u64>, threads: Option<usize>) -> Result<()> {
    let mut cfg = ExperimentConfig::load(&config)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if threads == Some(0) {
        bail!("--threads must be at least 1");
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build().context("building thread pool")?;
    let result = pool.install(|| run_sweep(&cfg))?;
    emit_csv(&result, &out)?;
    eprintln!("wrote {} rows to {}", result.rows.len(), out.display());
    Ok(())
}

fn flops(na: usize, ns_list: Vec<usize>, d1: u64, d2: u64, out: PathBuf) -> Result<()> {
    if na == 0 || ns_list.contains(&0) {
        bail!("array sizes must be positive");
    }
    if d1 == 0 || d2 == 0 {
        bail!("--d1 and --d2 must be at least 1");
    }
    let rows = flops_table(na, &ns_list, d1, d2);
    emit_flops_csv(&rows, &out)?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn verify() -> Result<()> {
    let outcomes = run_property_suite();
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        bail!("{failed} of {} property checks failed", outcomes.len());
    }
    Ok(())
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Sweep { config, out, seed, threads } => sweep(config, out, seed, threads),
        Command::Flops { na, ns_list, d1, d2, out } => flops(na, ns_list, d1, d2, out),
        Command::Verify => verify(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
