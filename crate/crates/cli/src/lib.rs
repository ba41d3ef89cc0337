//! Command-line front end for `submod-core`: JSON specs in, JSON or text reports out.

pub mod commands;
pub mod report;
pub mod selftest;
pub mod spec;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::Map;

use report::Report;
use spec::Limit;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] submod_core::error::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Parser, Debug)]
#[command(name = "submod", version, about = "Certify and compute with submodular setfunctions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Setfunction spec (JSON); `-` reads standard input.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON report (default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Plain-text report.
    #[arg(long, global = true)]
    pub text: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall time in the report (makes it vary between runs).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check properties of the input function; exit 1 if any fails.
    Certify {
        /// Properties to check (comma-separated or repeated); default `submodular`.
        #[arg(long = "property", value_delimiter = ',')]
        properties: Vec<String>,
    },
    /// Run one computation on the input.
    Compute {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(commands::COMPUTATIONS))]
        what: String,
    },
    /// Run the seeded invariant families.
    Selftest {
        /// Ground-set size used by the families.
        #[arg(long, default_value_t = selftest::DEFAULT_BUDGET)]
        budget: usize,
        /// Corrupt library outputs before checking them, so every family should fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Print the canonical form of the spec file (a table in mask order with audited flags).
    Canonical,
}

/// Output and exit code of one invocation.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn read_spec(path: &Option<PathBuf>) -> Result<String, CliError> {
    let path = path.as_ref().ok_or_else(|| CliError::Input("--spec FILE is required".into()))?;
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load(cli: &Cli, limit: Limit) -> Result<(spec::Loaded, String), CliError> {
    let loaded = spec::load(spec::parse(&read_spec(&cli.spec)?)?, limit)?;
    let canonical = spec::to_json(&spec::canonical(&loaded));
    Ok((loaded, canonical))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let limit = Limit::from_env()?;
    let mut report = Report {
        command: String::new(),
        input_digest: None,
        ground: Vec::new(),
        seed: cli.seed,
        status: String::new(),
        uncertified: limit.raised,
        verdicts: Vec::new(),
        values: Map::new(),
        wall_time_ms: None,
    };
    let code = match &cli.command {
        Command::Canonical => {
            let (_, canonical) = load(cli, limit)?;
            return Ok(Outcome { output: canonical + "\n", code: 0 });
        }
        Command::Certify { properties } => {
            let (loaded, canonical) = load(cli, limit)?;
            report.command = "certify".into();
            report.input_digest = Some(report::digest(canonical.as_bytes()));
            report.ground = loaded.spec.ground.clone();
            report.verdicts = commands::certify(&loaded, properties, cli.seed)?;
            let holds = report.verdicts.iter().all(|v| v.status == "holds");
            report.status = report::status_word(holds).into();
            if holds {
                0
            } else {
                1
            }
        }
        Command::Compute { what } => {
            let (loaded, canonical) = load(cli, limit)?;
            report.command = format!("compute {what}");
            report.input_digest = Some(report::digest(canonical.as_bytes()));
            report.ground = loaded.spec.ground.clone();
            report.values = commands::compute(&loaded, what)?;
            report.status = "computed".into();
            0
        }
        Command::Selftest { budget, inject_fault } => {
            report.command = "selftest".into();
            report.values.insert("budget".into(), (*budget).into());
            report.values.insert("inject_fault".into(), (*inject_fault).into());
            report.verdicts = selftest::run(cli.seed, *budget, *inject_fault);
            let pass = report.verdicts.iter().all(|v| v.status == "pass");
            report.status = if pass { "pass" } else { "fail" }.into();
            if pass {
                0
            } else {
                1
            }
        }
    };
    if cli.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    let output = if cli.text { report.to_text() } else { report.to_json() };
    Ok(Outcome { output, code })
}
