//! `robustnet` command-line front end.
//!
//! Exit codes: 0 success, 1 a claim or expected verdict failed, 2 usage or
//! I/O error.

mod analyze;
mod generate;
mod reproduce;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use robustnet::io::GraphFormat;
use robustnet::{CheckOptions, Execution};

#[derive(Parser, Debug)]
#[command(name = "robustnet", version, about = "Robust graphs, resilient consensus and certified broadcast")]
struct Cli {
    /// Run exhaustive checkers and sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph from one of the built-in families.
    Generate(generate::GenerateArgs),
    /// Report robustness, connectivity, degree and X(G) of a graph as JSON.
    Analyze(analyze::AnalyzeArgs),
    /// Run W-MSR consensus or certified propagation.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Run a manifest of experiments, or `paper-claims` for the built-in suite.
    Reproduce(reproduce::ReproduceArgs),
}

#[derive(Subcommand, Debug)]
enum SimulateCommand {
    /// W-MSR consensus from a scenario file.
    Wmsr(simulate::WmsrArgs),
    /// Certified propagation broadcast.
    Cpa(simulate::CpaArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Edgelist,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputGraph {
    /// Output graph file.
    #[arg(long)]
    pub out: PathBuf,
    /// File format; defaults to JSON for `.json` paths and the edge list
    /// otherwise.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

impl OutputGraph {
    pub fn format(&self) -> GraphFormat {
        match self.format {
            Some(FormatArg::Edgelist) => GraphFormat::EdgeList,
            Some(FormatArg::Json) => GraphFormat::Json,
            None => GraphFormat::from_path(&self.out),
        }
    }
}

/// Failure with a specific exit code.
#[derive(Debug)]
pub struct Exit(pub u8);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = if cli.sequential {
        CheckOptions::sequential()
    } else {
        CheckOptions {
            exec: Execution::Parallel,
            ..CheckOptions::default()
        }
    };
    let result = match cli.command {
        Command::Generate(args) => generate::run(&args),
        Command::Analyze(args) => analyze::run(&args, &opts),
        Command::Simulate(SimulateCommand::Wmsr(args)) => simulate::run_wmsr(&args),
        Command::Simulate(SimulateCommand::Cpa(args)) => simulate::run_cpa(&args, &opts),
        Command::Reproduce(args) => reproduce::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => match e.downcast_ref::<Exit>() {
            Some(Exit(code)) => ExitCode::from(*code),
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}
