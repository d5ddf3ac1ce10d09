use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use bilms_cli::{exit, CliError};
use clap::{Parser, Subcommand};

/// Bicomplex LMS experiments and verification.
#[derive(Debug, Parser)]
#[command(name = "bilms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the algebra, gradient and learning-rule checks; exit 1 on failure.
    Verify,
    /// Run one experiment and write its learning curve as CSV.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run one experiment per step size; writes one CSV per mu plus summary.csv into --out.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "mu-grid")]
        mu_grid: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare BLMS1 against complex LMS on a canned problem (seed 42).
    Demo {
        /// Optional directory for the two learning curves.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = &mut io::stdout().lock();
    match cli.command {
        Command::Verify => bilms_cli::cmd_verify(stdout),
        Command::Run { config, out, seed } => {
            let mut cfg = bilms_cli::load_config(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let curve = bilms_cli::cmd_run(&cfg, &out)?;
            if curve.diverged() {
                eprintln!("warning: run diverged at step {}", curve.diverged_at.unwrap_or_default());
            }
            Ok(())
        }
        Command::Sweep { config, out, mu_grid, seed } => {
            let mus = bilms_cli::parse_mu_grid(&mu_grid)?;
            let mut cfg = bilms_cli::load_config(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            bilms_cli::cmd_sweep(&cfg, &mus, &out).map(|_| ())
        }
        Command::Demo { out } => bilms_cli::cmd_demo(stdout, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::BAD_FLAGS as u8 } else { exit::OK as u8 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
