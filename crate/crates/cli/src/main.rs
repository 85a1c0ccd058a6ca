use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use radfric_cli::{exit, execute, parse_config, write_outputs, RunOptions, RunOutput};
use radfric_core::covariant::run_identity_suite;

#[derive(Parser)]
#[command(name = "radfric", version, about = "Radiation friction on moving polarizable particles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the forces for every point of a configuration's sweep.
    Run {
        config: PathBuf,
        /// Directory for the CSV and metadata files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Relative tolerance, overriding the configuration.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Run the randomized tensor identity checks.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(config_path: PathBuf, out: PathBuf, options: RunOptions) -> ExitCode {
    let text = match fs::read_to_string(&config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", config_path.display());
            return ExitCode::from(exit::RUNTIME);
        }
    };
    let config = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", config_path.display());
            return ExitCode::from(exit::CONFIG);
        }
    };
    if let Some(t) = options.tolerance {
        if !(t > 0.0 && t < 1.0) {
            eprintln!("error: --tolerance must lie in (0, 1), got {t}");
            return ExitCode::from(exit::CONFIG);
        }
    }
    let output = match execute(&config, options) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::RUNTIME);
        }
    };
    if let RunOutput::Identities(report) = &output {
        print!("{report}");
    }
    match write_outputs(&out, &config, &text, &output, options) {
        Ok([csv, meta]) => println!("wrote {} and {}", csv.display(), meta.display()),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::RUNTIME);
        }
    }
    if output.all_converged() {
        ExitCode::from(exit::SUCCESS)
    } else {
        eprintln!("error: some points did not reach the requested accuracy (see the `converged` column)");
        ExitCode::from(exit::ACCURACY)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            threads,
            tolerance,
        } => run(config, out, RunOptions { threads, tolerance }),
        Command::Identities { seed } => match run_identity_suite(seed) {
            Ok(report) => {
                print!("{report}");
                if report.all_passed() {
                    ExitCode::from(exit::SUCCESS)
                } else {
                    ExitCode::from(exit::ACCURACY)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit::RUNTIME)
            }
        },
    }
}
