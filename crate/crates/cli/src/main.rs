//! Command-line surface: ingest a review corpus, rank candidates for a
//! seed, estimate ranking quality from seed documents, run the full
//! evaluation, and re-render reports.

mod commands;
mod config;
mod corpus_io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit codes: 0 success, 2 usage or validation failure, 3 runtime failure.
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;

/// An error carrying the process exit code it should produce.
pub struct CmdError {
    pub code: u8,
    pub source: anyhow::Error,
}

pub type CmdResult = Result<(), CmdError>;

/// Validation or bad-input failure (exit 2).
pub fn usage_err(e: impl Into<anyhow::Error>) -> CmdError {
    CmdError {
        code: EXIT_USAGE,
        source: e.into(),
    }
}

/// Failure after validation passed (exit 3).
pub fn runtime_err(e: impl Into<anyhow::Error>) -> CmdError {
    CmdError {
        code: EXIT_RUNTIME,
        source: e.into(),
    }
}

#[derive(Parser)]
#[command(
    name = "rankgauge",
    version,
    about = "Estimate systematic-review screening ranking quality from seed documents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble a review corpus from topic files, qrels, and fetched
    /// abstracts (cache-first).
    Ingest(commands::ingest::IngestArgs),
    /// Rank one review's candidates for a seed document and write a TREC
    /// run file.
    Rank(commands::rank::RankArgs),
    /// Estimate the ranking quality of one review from given seed ids.
    Estimate(commands::estimate::EstimateArgs),
    /// Run the full evaluation: qualities, estimators, correlation tables,
    /// significance, model comparison.
    Evaluate(commands::evaluate::EvaluateArgs),
    /// Print a digest of a previous evaluation's report bundle.
    Report(commands::report::ReportArgs),
}

/// Flags shared by every command that reads an ingested corpus.
#[derive(Args, Clone)]
pub struct CorpusArgs {
    /// Ingested corpus directory (from `rankgauge ingest`).
    #[arg(long)]
    pub corpus: PathBuf,
    /// Tokenizer config file (`key=value` lines); defaults to the built-in
    /// settings when absent.
    #[arg(long)]
    pub tokenizer_config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(args) => commands::ingest::run(args),
        Command::Rank(args) => commands::rank::run(args),
        Command::Estimate(args) => commands::estimate::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Report(args) => commands::report::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.source);
            ExitCode::from(e.code)
        }
    }
}
