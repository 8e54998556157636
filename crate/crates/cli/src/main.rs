//! `monomorph`: experiment runner over the monomorph library.
//!
//! Every command writes one report, JSON by default, to stdout or `--out`.
//! Exit codes: 0 success, 2 input error, 3 resource bound, 4 invariant
//! violation.

mod commands;
mod error;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "monomorph", version, about = "Monomorphic decompositions, chainability, indicative groups and sibling chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Highest relation arity accepted in structure files.
    #[arg(long, global = true, default_value_t = monomorph::relcore::DEFAULT_ARITY_CEILING)]
    pub arity_ceiling: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Components, threshold and indiscernibility classes of a structure.
    Analyze(commands::AnalyzeArgs),
    /// Maximum threshold over a class of small structures.
    ScanThreshold(commands::ScanArgs),
    /// One of the five canonical monomorphic structures.
    Canon(commands::CanonArgs),
    /// Search for an order chaining a structure.
    Chainable(commands::InputArgs),
    /// Group sequence of a chained structure.
    Groupseq(commands::GroupseqArgs),
    /// Indicative groups of a sampled bichain.
    Indicative(commands::IndicativeArgs),
    /// Bichain realizing a permutation, or generating the symmetric group.
    Realize(commands::RealizeArgs),
    /// Pairwise isomorphism verdicts for sibling chains.
    Siblings(commands::SiblingsArgs),
    /// Stabilizer duality for a split of the domain.
    Duality(commands::DualityArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    let report = match &cli.command {
        Command::Analyze(a) => commands::analyze(a, common)?,
        Command::ScanThreshold(a) => commands::scan_threshold(a, common)?,
        Command::Canon(a) => commands::canon(a)?,
        Command::Chainable(a) => commands::chainable(a, common)?,
        Command::Groupseq(a) => commands::groupseq(a, common)?,
        Command::Indicative(a) => commands::indicative(a, common)?,
        Command::Realize(a) => commands::realize(a)?,
        Command::Siblings(a) => commands::siblings(a)?,
        Command::Duality(a) => commands::duality(a, common)?,
    };
    let text = match common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => report
            .csv
            .ok_or_else(|| CliError::Input("csv output is only available for pairwise tables".into()))?,
    };
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("monomorph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
