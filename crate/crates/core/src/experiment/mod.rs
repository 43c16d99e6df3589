//! Config-driven Monte-Carlo sweeps and their CSV output.
//!
//! A sweep varies one axis (IRS size, SNR, Alice-Bob distance or MRT
//! steering angle), rebuilds the channels at each value and averages the
//! secrecy rate of every configured method over seeded trials.

mod config;
mod csv;
mod run;

pub use self::config::{ArrayConfig, ExperimentConfig, Method, PowerConfig, SolverConfig, SweepAxis, SweepConfig};
pub use self::csv::{emit_csv, emit_flops_csv, flops_table, FlopsRow, CSV_HEADER};
pub use self::run::{run_sweep, trial_seed, SweepResult, SweepRow};
