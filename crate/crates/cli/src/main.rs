//! `fls`: solve and classify fuzzy linear systems described in JSON.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fls_core::{parse_system, FuzzySystem, RGrid, Verdict, DEFAULT_GRID_POINTS};

use crate::report::{exit_code, plot_table, Outcome};

#[derive(Parser)]
#[command(name = "fls", version, about = "Fuzzy linear system solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridArgs {
    /// Number of equally spaced r-levels (overrides the document and
    /// FLS_GRID_POINTS).
    #[arg(long = "grid", value_name = "N")]
    grid: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve, classify and write the result document.
    Solve {
        input: PathBuf,
        /// Where to write the JSON result document.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Classify the system as strong, weak or singular.
    Classify {
        input: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Write the solution profiles as a comma-separated table.
    PlotData {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn env_grid_points() -> Result<Option<usize>> {
    match std::env::var("FLS_GRID_POINTS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("FLS_GRID_POINTS: invalid value {v:?}")),
        Err(_) => Ok(None),
    }
}

fn load(input: &Path, flag: Option<usize>) -> Result<(FuzzySystem, RGrid)> {
    let text = std::fs::read_to_string(input)
        .with_context(|| format!("cannot read {}", input.display()))?;
    let (sys, doc_grid) =
        parse_system(&text).with_context(|| format!("invalid input {}", input.display()))?;
    let points = match (flag, doc_grid) {
        (Some(g), _) => g,
        (None, Some(g)) => g,
        (None, None) => env_grid_points()?.unwrap_or(DEFAULT_GRID_POINTS),
    };
    if points < 2 {
        bail!("grid: need at least 2 points, got {points}");
    }
    Ok((sys, RGrid::uniform(points)?))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Solve {
            input,
            output,
            grid,
        } => {
            let (sys, grid) = load(&input, grid.grid)?;
            let outcome = Outcome::compute(&sys, grid);
            print!("{}", outcome.summary(true));
            if let Some(out) = output {
                let doc = serde_json::to_string_pretty(&outcome.document(sys.n()))?;
                write_file(&out, &(doc + "\n"))?;
            }
            Ok(outcome.report.verdict)
        }
        Command::Classify { input, grid } => {
            let (sys, grid) = load(&input, grid.grid)?;
            let outcome = Outcome::compute(&sys, grid);
            print!("{}", outcome.summary(false));
            Ok(outcome.report.verdict)
        }
        Command::PlotData {
            input,
            output,
            grid,
        } => {
            let (sys, grid) = load(&input, grid.grid)?;
            let outcome = Outcome::compute(&sys, grid);
            match outcome.candidate() {
                Some(cand) => {
                    write_file(&output, &plot_table(cand, &outcome.grid))?;
                    println!(
                        "wrote {} rows to {} (verdict: {})",
                        outcome.grid.len(),
                        output.display(),
                        outcome.report.verdict.as_str()
                    );
                }
                None => print!("{}", outcome.summary(false)),
            }
            Ok(outcome.report.verdict)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(verdict) => ExitCode::from(exit_code(verdict) as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
