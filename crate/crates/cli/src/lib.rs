//! The `ctqw` command-line tool: simulations, limit-law comparisons and a validation suite,
//! written as CSV or JSON.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod table;
pub mod validate;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Format};
pub use config::RunConfig;
pub use error::CliError;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "CTQW_THREADS";

/// Sizes the global thread pool from [`THREADS_ENV`]; the first successful call wins.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize =
        raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Config(format!("{THREADS_ENV} must be a positive integer, got `{raw}`"))
        })?;
    // Fails only if a pool already exists, in which case it is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Output document for a resolved configuration, with the number of failed validation checks.
pub fn render(cfg: &RunConfig) -> Result<(String, usize), CliError> {
    if let Command::Validate = cfg.command {
        let report = validate::run_suite(cfg);
        let text = match cfg.format {
            Format::Json => validate::report_json(&report),
            Format::Csv => report.to_table().to_csv(),
        };
        return Ok((text, report.failures()));
    }
    Ok((commands::table_for(cfg)?.render(cfg.format), 0))
}

fn execute(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = RunConfig::resolve(&cli.global, cli.command)?;
    for w in cfg.warnings() {
        eprintln!("warning: {w}");
    }
    let (text, failed) = render(&cfg)?;
    table::emit(&text, cfg.output.as_deref())?;
    match failed {
        0 => Ok(()),
        failed => Err(CliError::Validation { failed }),
    }
}

/// Parses `args` (program name first), runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
