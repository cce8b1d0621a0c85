use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wicklab::harness::{run_oracle, run_sweep, run_verify, Format, Mode, RunConfig, SweepResult, ORACLE_CASES};

#[derive(Parser)]
#[command(name = "wicklab", version, about = "Numerical verification of Wick-product Hölder inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification section and emit one row per check.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Evaluate the full Hölder ratio and the optimizer over the exponent grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Compare one exact rule against its numerical definition.
    Oracle {
        #[arg(long, help = format!("one of: {}", ORACLE_CASES.join(", ")))]
        case: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn load(path: Option<&PathBuf>, mode: Mode) -> wicklab::Result<RunConfig> {
    let mut config = match path {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    config.mode = mode;
    Ok(config)
}

fn emit(result: &SweepResult, out: Option<PathBuf>, format: Format) -> wicklab::Result<()> {
    let text = result.render(format);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> wicklab::Result<bool> {
    let result = match cli.command {
        Command::Verify { config, out, format } => {
            let config = load(config.as_ref(), Mode::Verify)?;
            let result = run_verify(&config)?;
            let out = out.or_else(|| config.output.path.as_ref().map(PathBuf::from));
            emit(&result, out, format.unwrap_or(config.output.format))?;
            result
        }
        Command::Sweep { config, out, format } => {
            let config = load(Some(&config), Mode::Sweep)?;
            let result = run_sweep(&config)?;
            emit(&result, Some(out), format.unwrap_or(config.output.format))?;
            result
        }
        Command::Oracle { case, config } => {
            let config = load(config.as_ref(), Mode::Oracle)?;
            let result = run_oracle(&case, &config)?;
            emit(&result, None, Format::Csv)?;
            result
        }
    };
    eprintln!(
        "{} of {} rows passed (config {})",
        result.metadata.passed,
        result.metadata.rows,
        &result.metadata.config_hash[..12]
    );
    Ok(result.all_pass())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
