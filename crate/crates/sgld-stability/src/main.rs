//! Command-line entry point. Exit codes: 0 when every verdict passes,
//! 2 when any verdict fails, 1 on usage or config errors.

use clap::{Args, Parser, Subcommand};
use sgld_stability::harness::{self, ExperimentConfig, ExperimentReport, OutputFormat};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sgld-stability",
    about = "SGLD coupled-chain experiments and closed-form bound evaluation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Path to the JSON experiment config (strict schema).
    #[arg(long)]
    config: PathBuf,
    /// Override the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Write report.json and per-curve CSV files into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stdout format when --out is not given.
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(format!("unknown format `{other}` (expected json or csv)")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every derived constant and theorem bound curve.
    Bounds(RunArgs),
    /// Single-chain moment curves against their analytic envelopes.
    Simulate(RunArgs),
    /// Coupled-pair runs (synchronous divergence or reflection).
    Couple(RunArgs),
    /// Run the full lemma verification suite.
    Verify(RunArgs),
    /// Run the experiment named in the config.
    Experiment(RunArgs),
}

fn load_config(args: &RunArgs) -> sgld_stability::Result<ExperimentConfig> {
    let mut config = ExperimentConfig::from_path(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(format) = args.format {
        config.format = format;
    }
    Ok(config)
}

fn emit(report: &ExperimentReport, args: &RunArgs) -> sgld_stability::Result<()> {
    eprint!("{}", report.verdict_lines());
    if let Some(dir) = &args.out {
        report.write_to_dir(dir)?;
        return Ok(());
    }
    match report.config.format {
        OutputFormat::Json => println!("{}", report.to_json()?),
        OutputFormat::Csv => print!("{}", report.to_csv()),
    }
    Ok(())
}

fn run(cli: &Cli) -> sgld_stability::Result<ExperimentReport> {
    let (args, report) = match &cli.command {
        Command::Bounds(args) => (args, harness::run_bounds(&load_config(args)?)?),
        Command::Simulate(args) => (args, harness::run_simulate(&load_config(args)?)?),
        Command::Couple(args) => (args, harness::run_couple(&load_config(args)?)?),
        Command::Verify(args) => (args, harness::run_verify(&load_config(args)?)?),
        Command::Experiment(args) => (args, harness::run_experiment(&load_config(args)?)?),
    };
    emit(&report, args)?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
