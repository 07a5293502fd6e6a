//! `ldlab`: random-coding bounds, ensemble simulation and code verification
//! for almost disjunctive list-decoding codes.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ldlab_core::{Bounds, Error, Tolerances};

use commands::{BoundArgs, CurveArgs, SimulateArgs, TableArgs, VerifyArgs};
use output::{Format, Report};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "ldlab", version, about, propagate_version = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format; defaults to `table` on a terminal and `csv` otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "LDLAB_THREADS")]
    threads: Option<usize>,
    /// Tighten the solver tolerances to 1e-13 (roots) and 1e-12 (maximizers).
    #[arg(long, global = true)]
    strict: bool,
    /// Absolute bracket width at which root finding stops.
    #[arg(long, global = true, value_name = "TOL")]
    root_tol: Option<f64>,
    /// Argument tolerance at which maximization stops.
    #[arg(long, global = true, value_name = "TOL")]
    argmax_tol: Option<f64>,
    /// Grid points scanned before golden-section refinement.
    #[arg(long, global = true, value_name = "N")]
    grid_points: Option<usize>,
}

impl GlobalArgs {
    fn bounds(&self) -> Result<Bounds, String> {
        let mut tol = if self.strict {
            Tolerances::strict()
        } else {
            Tolerances::default()
        };
        if let Some(t) = self.root_tol {
            tol.root = positive("--root-tol", t)?;
        }
        if let Some(t) = self.argmax_tol {
            tol.argmax = positive("--argmax-tol", t)?;
        }
        if let Some(n) = self.grid_points {
            if n < 3 {
                return Err("--grid-points must be at least 3".into());
            }
            tol.grid_points = n;
        }
        Ok(Bounds::new(tol))
    }
}

fn positive(flag: &str, x: f64) -> Result<f64, String> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{flag} must be positive, got {x}"))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single bound.
    Bound(BoundArgs),
    /// Reproduce the table of rate bounds, optimal weights and critical rates.
    Table1(TableArgs),
    /// Sample the error exponent on a rate grid.
    Curve(CurveArgs),
    /// Bad-subset probability of the constant-weight ensemble.
    Simulate(SimulateArgs),
    /// Check whether an explicit code is an almost disjunctive list-decoding code.
    Verify(VerifyArgs),
}

/// Failure of a command, mapped to an exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

/// A report plus whether the command's check passed.
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, passed: true }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let bounds = cli.global.bounds().map_err(Failure::Usage)?;
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Bound(a) => commands::bound(&bounds, a).map(Outcome::from),
        Command::Table1(a) => commands::table1(&bounds, a).map(Outcome::from),
        Command::Curve(a) => commands::curve(&bounds, a).map(Outcome::from),
        Command::Simulate(a) => commands::simulate(&bounds, a).map(Outcome::from),
        Command::Verify(a) => commands::verify(a),
    }
}

fn emit(cli: &Cli, report: &Report) -> io::Result<()> {
    let format = Format::resolve(cli.global.format, cli.global.output.is_some());
    match &cli.global.output {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            report.write(format, &mut out)?;
            out.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            report.write(format, &mut out)?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.report) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}
