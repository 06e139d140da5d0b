use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lctlab::{execute, CliError, Command, Format, Invocation};
use lctlab_core::Options;

#[derive(Parser)]
#[command(name = "lctlab", version, about = "Thresholds, multiplier ideals and valuations of monomial graded sequences")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Job file in JSON.
    #[arg(long)]
    job: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Tolerance for oracle-backed answers.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Number of terms read from table sequences.
    #[arg(long, default_value_t = 64)]
    window: u32,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall-clock timing to the JSON envelope.
    #[arg(long)]
    timing: bool,
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let job = std::fs::read_to_string(&cli.job)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", cli.job.display())))?;
    let outcome = execute(&Invocation {
        command: cli.command,
        job: &job,
        format: cli.format,
        options: Options { window: cli.window, tolerance: cli.tol },
        timing: cli.timing,
    })?;
    match &cli.out {
        Some(p) => std::fs::write(p, &outcome.text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome.failed)
}

fn main() -> ExitCode {
    // Usage errors are input errors; help and version exit cleanly.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("lctlab: property failure");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("lctlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
