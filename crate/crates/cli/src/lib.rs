//! `cdyn`: batch runner for the cdyn toolkit.
//!
//! A run reads a flat `key = value` config (see [`config`]), executes one
//! subcommand and writes CSV/JSON/PPM artifacts plus `manifest.json` into the
//! output directory. Artifacts depend only on the config and seed, never on
//! the worker count.

// `!(x > 0.0)` style tests are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod expr;
pub mod output;
pub mod render;
pub mod run;
pub mod systems;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use error::CliError;
pub use run::{execute, execute_file, Outcome, Overrides, TaskRecord, MANIFEST};

#[derive(Parser, Debug, Clone)]
#[command(name = "cdyn", version, about = "Green functions, periodic points and probes for polynomial dynamics")]
pub struct Cli {
    /// Config file (`key = value` lines).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Seed for every random choice; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Green function values at listed points.
    Green,
    /// Dynamical Green field on a slice, as CSV grid and image.
    Julia,
    /// Bifurcation or activity field on a parameter slice.
    Bif,
    /// Post-critically finite parameters of the degree-d family.
    Pcf,
    /// Periodic points of a given period.
    Periodic,
    /// Comparison and finiteness probes.
    Probe {
        #[arg(value_enum)]
        kind: ProbeKind,
    },
    /// Re-render a grid CSV with another palette.
    Render,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeKind {
    Separation,
    Invariance,
    Laplacian,
    Common,
    Pcf,
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::Green => "green".into(),
            Command::Julia => "julia".into(),
            Command::Bif => "bif".into(),
            Command::Pcf => "pcf".into(),
            Command::Periodic => "periodic".into(),
            Command::Render => "render".into(),
            Command::Probe { kind } => format!(
                "probe {}",
                kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
            ),
        }
    }
}

/// Parses arguments, runs, reports on stderr; returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let ov = Overrides {
        seed: cli.seed,
        threads: cli.threads,
        out: cli.out.clone(),
    };
    match execute_file(cli.config.as_deref(), cli.command, &ov) {
        Ok(outcome) => {
            if let Some(f) = &outcome.fatal {
                eprintln!("cdyn: {f}");
            }
            for t in outcome.tasks.iter().filter(|t| t.status != "ok") {
                eprintln!("cdyn: task {}: {}", t.name, t.error.as_deref().unwrap_or("failed"));
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("cdyn: {e}");
            e.exit_code()
        }
    }
}
