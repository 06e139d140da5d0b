//! Batch front end for `lctlab-core`: JSON jobs in, JSON, CSV or SVG out.

pub mod commands;
pub mod job;
pub mod output;
pub mod suite;
pub mod svg;

use std::time::Instant;

use clap::ValueEnum;
use lctlab_core::newton::{Example8, NewtonRegion};
use lctlab_core::Options;
use thiserror::Error;

pub use commands::Command;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("computation error: {0}")]
    Computation(String),
    #[error("property failure: {0}")]
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Computation(_) => 2,
            CliError::Property(_) => 3,
        }
    }
}

impl From<lctlab_core::Error> for CliError {
    fn from(e: lctlab_core::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Computation(e.to_string())
        }
    }
}

/// Named oracle regions available to `{"kind": "oracle"}` sequences.
pub fn oracle_registry(name: &str) -> Option<NewtonRegion> {
    match name {
        "example8" => Some(NewtonRegion::oracle(Example8)),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

pub struct Invocation<'a> {
    pub command: Command,
    pub job: &'a str,
    pub format: Format,
    pub options: Options,
    pub timing: bool,
}

/// The rendered output and whether a property check failed.
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

pub fn execute(inv: &Invocation) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let job = job::parse_job(inv.job)?;
    if let Some(cmd) = &job.run.cmd {
        if cmd != inv.command.name() {
            return Err(CliError::Input(format!(
                "/run/cmd: job is for {cmd:?} but the subcommand is {:?}",
                inv.command.name()
            )));
        }
    }
    if !(inv.options.tolerance > 0.0 && inv.options.tolerance.is_finite()) {
        return Err(CliError::Input("--tol must be a positive number".into()));
    }
    if inv.options.window == 0 {
        return Err(CliError::Input("--window must be positive".into()));
    }
    let mut ws = job::Workspace::build(&job)?;
    let args = commands::Args::new(&job.run.args);
    let report = commands::run(inv.command, &mut ws, &args, &inv.options)?;
    let text = match inv.format {
        Format::Json => {
            let timing = inv.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            let echo = job.run.args.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            let env = output::envelope(inv.command.name(), &echo, &report, &ws.warnings, timing);
            let mut s = serde_json::to_string_pretty(&env).map_err(|e| CliError::Computation(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Csv => report.table.to_csv()?,
        Format::Svg => report
            .svg
            .clone()
            .ok_or_else(|| CliError::Input(format!("{} has no SVG rendering", inv.command.name())))?,
    };
    Ok(Outcome { text, failed: report.failed })
}
