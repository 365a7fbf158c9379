//! `pc`: proper connection experiments from the command line.
//!
//! Exit codes: 0 success, 1 the checked property failed, 2 bad input,
//! 3 a search ran out of budget.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pconn::io::GraphFormat;

#[derive(Parser, Debug)]
#[command(name = "pc", version, about = "Proper connection number: exact search, constructions, counterexample lab")]
pub struct Cli {
    /// Graph file format.
    #[arg(long, global = true, default_value = "edgelist", value_parser = parse_format)]
    pub format: GraphFormat,
    /// Print the full report as JSON instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Node cap for exhaustive searches.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    /// Leave wall time out of reports, so equal runs give equal bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_format(s: &str) -> Result<GraphFormat, String> {
    s.parse()
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact proper connection number by exhaustive search.
    Exact {
        graph: PathBuf,
        /// Largest palette to try.
        #[arg(long, default_value_t = 4)]
        kmax: u8,
        /// Require the strong property.
        #[arg(long)]
        strong: bool,
    },
    /// Random k-colorings, each checked for proper connection.
    Sample {
        graph: PathBuf,
        #[arg(short, default_value_t = 2)]
        k: u8,
        #[arg(short, long, default_value_t = 100)]
        trials: u64,
    },
    /// Constructive coloring with a named method, verified.
    Color {
        graph: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Include the decomposition or case analysis behind the coloring.
        #[arg(long)]
        explain: bool,
        /// Write the coloring here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        strong: bool,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
    /// Defeat random (or given) 2-colorings of a counterexample instance.
    Refute {
        graph: PathBuf,
        spec: PathBuf,
        #[arg(short, long, default_value_t = 100)]
        trials: u64,
        /// Refute this 2-coloring instead of random ones.
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenWhat {
    /// The counterexample family.
    Counterexample {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, default_value_t = 1)]
        scale: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Diam3,
    #[value(name = "3ec")]
    ThreeEc,
    Bipartite,
    #[value(name = "2conn")]
    TwoConn,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    K33,
    Mini,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, argv) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.report.to_json());
            } else {
                println!("{}", outcome.summary);
            }
            for line in &outcome.alerts {
                eprintln!("{line}");
            }
            ExitCode::from(outcome.report.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
