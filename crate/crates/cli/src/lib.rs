//! Command-line front end: configuration, parameter sweeps, table output and
//! the verification entry point.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;

use clap::{Parser, Subcommand};

use crate::config::{ConfigError, Overrides, RunConfig};
use crate::output::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nclandau", version, about = "Landau levels on noncommutative space and phase space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the levels with 2n_rho + |m| <= max_N.
    Spectrum,
    /// Check the operator algebra, the coefficient match and the radial oracle.
    Verify,
    /// Ground-state energy and effective oscillator along a parameter sweep.
    Sweep,
    /// Sample a normalized radial eigenfunction.
    Wavefunction {
        #[arg(long = "n-rho", default_value_t = 0)]
        n_rho: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

fn config_failure(e: &ConfigError) -> i32 {
    eprintln!("error: {e}");
    EXIT_CONFIG
}

fn emit(table: &Table, cfg: &RunConfig) -> i32 {
    match table.emit(cfg.output.format, cfg.output.path.as_deref()) {
        Ok(()) => EXIT_OK,
        Err(e) => config_failure(&ConfigError::new("output.path", e.to_string())),
    }
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::resolve(&cli.overrides) {
        Ok(cfg) => cfg,
        Err(e) => return config_failure(&e),
    };
    let table = match cli.command {
        Command::Spectrum => commands::cmd_spectrum(&cfg),
        Command::Sweep => commands::cmd_sweep(&cfg),
        Command::Wavefunction { n_rho, m, samples } => commands::cmd_wavefunction(&cfg, n_rho, m, samples),
        Command::Verify => {
            return match commands::cmd_verify(&cfg) {
                Ok(report) => {
                    for line in &report.checks {
                        println!("{}", line.render());
                    }
                    if report.passed() {
                        println!("verify: all {} checks passed", report.checks.len());
                        EXIT_OK
                    } else {
                        let failed = report.checks.iter().filter(|c| !c.passed).count();
                        println!("verify: {failed} of {} checks failed", report.checks.len());
                        EXIT_VERIFY_FAILED
                    }
                }
                Err(e) => config_failure(&e),
            };
        }
    };
    match table {
        Ok(t) => emit(&t, &cfg),
        Err(e) => config_failure(&e),
    }
}
