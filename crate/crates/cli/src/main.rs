//! `gpdkit`: JSON reports for groupoid files, functor files and named
//! fixture samples.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input cannot be read or the flags are invalid.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use gpdkit::algebra::{DEFAULT_SEED, DEFAULT_TOL};
use gpdkit::nerve::{DEFAULT_BUDGET, DEFAULT_DIMENSION};

#[derive(Parser, Debug)]
#[command(name = "gpdkit", version, about = "Finite groupoids as a cofibration category")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the random central element of block decompositions.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tolerance of the numerical eigenspace splitting.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Largest groupoid a presentation may concretize to, in morphisms.
    #[arg(long, global = true, default_value_t = 10_000)]
    bound: usize,
    /// Truncation level of nerves.
    #[arg(long, global = true, default_value_t = DEFAULT_DIMENSION)]
    dim: usize,
    /// Largest number of simplices a nerve may have.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the groupoid axioms, or the functor laws, of a JSON file.
    Validate { input: PathBuf },
    /// Mapping-cylinder factorization of a functor.
    Factor { input: PathBuf },
    /// Induced map on K0 and full corners of a cofibration.
    Morita { input: PathBuf },
    /// Homology of classification-diagram levels over a sample of fixtures.
    NerveSuite {
        /// Fixture names such as `B1`, `BZ2`, `codiscrete2`.
        #[arg(required = true)]
        fixtures: Vec<String>,
        /// Highest chain length compared.
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// Also write the 1-skeleta of the level-0 nerves in DOT syntax.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Emit a named groupoid, or with `--to` a functor between two of them.
    Fixture {
        name: String,
        #[arg(long)]
        to: Option<String>,
        /// Position in the enumeration of functors that pass the filters.
        #[arg(long, default_value_t = 0)]
        pick: usize,
        /// Only functors injective on objects.
        #[arg(long)]
        cofibration: bool,
        /// Only equivalences.
        #[arg(long)]
        equivalence: bool,
    },
}

/// Everything that determines a report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: u64,
    pub tolerance: f64,
    pub bound: usize,
    pub truncation: usize,
    pub budget: u128,
    pub output: Option<String>,
}

impl RunConfig {
    fn check(&self) -> anyhow::Result<()> {
        anyhow::ensure!(self.tolerance > 0.0, "--tol must be positive");
        anyhow::ensure!(self.bound > 0, "--bound must be positive");
        anyhow::ensure!(self.truncation > 0, "--dim must be positive");
        anyhow::ensure!(self.budget > 0, "--budget must be positive");
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, inputs) = match &cli.command {
        Command::Validate { input } => ("validate", vec![input.display().to_string()]),
        Command::Factor { input } => ("factor", vec![input.display().to_string()]),
        Command::Morita { input } => ("morita", vec![input.display().to_string()]),
        Command::NerveSuite { fixtures, .. } => ("nerve-suite", fixtures.clone()),
        Command::Fixture { name, to, .. } => ("fixture", [Some(name.clone()), to.clone()].into_iter().flatten().collect()),
    };
    let config = RunConfig {
        command: command.into(),
        inputs,
        seed: cli.seed,
        tolerance: cli.tol,
        bound: cli.bound,
        truncation: cli.dim,
        budget: cli.budget,
        output: cli.out.as_ref().map(|p| p.display().to_string()),
    };
    let result = config.check().and_then(|()| match cli.command {
        Command::Validate { input } => commands::validate(&config, &input),
        Command::Factor { input } => commands::factor(&config, &input),
        Command::Morita { input } => commands::morita(&config, &input),
        Command::NerveSuite { fixtures, levels, dot } => commands::nerve_suite(&config, &fixtures, levels, cli.budget, dot.as_deref()),
        Command::Fixture { name, to, pick, cofibration, equivalence } => {
            commands::fixture(&name, to.as_deref(), pick, cofibration, equivalence)
        }
    });
    let report = match result {
        Ok(report) => report,
        Err(e) => {
            eprintln!("gpdkit: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut text = serde_json::to_string_pretty(&report.body).expect("reports serialize");
    text.push('\n');
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("gpdkit: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
