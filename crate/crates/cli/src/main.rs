//! `qwh`: runs the verification suites and writes `report.csv`,
//! `report.json`, `displacement_sweep.csv` and `summary.txt`.
//!
//! Exit status: 0 when every gated record passes, 2 when any fails, 1 on a
//! configuration or runtime error.

mod config;
mod error;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{ExperimentConfig, Suite};
use error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "qwh", version, about = "Numerical checks of the quaternionic harmonic oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ladder, position, momentum and Hamiltonian identities.
    Operators,
    /// Coherent states and both uncertainty relations.
    Uncertainty,
    /// Radial moments and the resolution of the identity.
    Resolution,
    /// Coherent-state quantization of simple symbols.
    Quantize,
    /// Lie algebra axioms and brackets.
    Liealg,
    /// Displacement operator relations.
    Displacement,
    /// Every suite.
    All,
}

impl Command {
    fn suite(&self) -> Suite {
        match self {
            Command::Operators => Suite::Operators,
            Command::Uncertainty => Suite::Uncertainty,
            Command::Resolution => Suite::Resolution,
            Command::Quantize => Suite::Quantize,
            Command::Liealg => Suite::Liealg,
            Command::Displacement => Suite::Displacement,
            Command::All => Suite::All,
        }
    }
}

/// Flags override the matching config fields.
#[derive(Debug, Args)]
struct Flags {
    /// JSON experiment config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Suite to run; takes precedence over the subcommand.
    #[arg(long, global = true, value_enum)]
    suite: Option<Suite>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Fock truncation.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run cases concurrently; reports are unchanged.
    #[arg(long, global = true)]
    parallel: bool,
}

fn load(cli: &Cli) -> CliResult<ExperimentConfig> {
    let mut cfg = match &cli.flags.config {
        Some(path) => ExperimentConfig::from_path(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(c) = &cli.command {
        cfg.suite = c.suite();
    }
    if let Some(s) = cli.flags.suite {
        cfg.suite = s;
    }
    if let Some(s) = cli.flags.seed {
        cfg.seed = s;
    }
    if let Some(d) = cli.flags.dim {
        cfg.dim = d;
    }
    if let Some(o) = &cli.flags.out {
        cfg.out = o.clone();
    }
    cfg.parallel |= cli.flags.parallel;
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> CliResult<bool> {
    let cfg = load(cli)?;
    let report = suites::run(&cfg)?;
    report.write(&cfg, &cfg.out)?;
    let s = report.summary();
    println!(
        "{}: {} of {} gated records pass, {} measured only; reports in {}",
        cfg.suite.name(),
        s.passed,
        s.gated,
        s.measured_only,
        cfg.out.display()
    );
    Ok(report.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("qwh: {e}");
            ExitCode::from(1)
        }
    }
}
