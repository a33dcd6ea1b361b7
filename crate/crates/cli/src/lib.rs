//! Batch experiment runner for the `entshare` library.
//!
//! A run is described by an [`ExperimentConfig`], executed by [`run`] and
//! written by [`report::emit`]. Exit codes: 0 on success, 1 on configuration
//! errors, 2 when a bound check fails or the simulation cannot proceed.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;

pub use config::{Cli, Command, ExperimentConfig, Format};
pub use report::{Document, Meta, Rows};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Runtime(_) => EXIT_CHECK,
        }
    }
}

impl From<entshare::Error> for CliError {
    fn from(e: entshare::Error) -> Self {
        match e {
            entshare::Error::Parse { .. } | entshare::Error::InvalidCode(_) | entshare::Error::UnknownScenario(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// Outcome of [`run`]: the report and whether every bound held.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub document: Document,
    pub checks_passed: bool,
}

/// Executes the configured command on a pool of `workers` threads (the
/// global pool when unset).
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput, CliError> {
    let dispatch = || match cfg.command {
        Command::Purify => commands::purify(cfg),
        Command::Teleport => commands::teleport(cfg),
        Command::Twirl => commands::twirl(cfg),
        Command::Bounds => commands::bounds(cfg),
        Command::Share => commands::share(cfg),
    };
    let rows = match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CliError::Runtime(format!("cannot start worker pool: {e}")))?
            .install(dispatch)?,
        None => dispatch()?,
    };
    let checks_passed = match &rows {
        Rows::Bounds(r) => r.iter().all(|b| b.satisfied),
        Rows::Share(r) => r.iter().all(|s| s.satisfied),
        _ => true,
    };
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    let meta = Meta { seed: cfg.seed, version: env!("CARGO_PKG_VERSION").to_string(), timestamp };
    Ok(RunOutput { document: Document { meta, rows }, checks_passed })
}

/// Runs and emits; returns the process exit code.
pub fn execute(cfg: &ExperimentConfig) -> i32 {
    let result = run(cfg).and_then(|out| {
        report::emit(&out.document, cfg.format, cfg.output.as_deref())?;
        Ok(out.checks_passed)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("entshare: at least one bound check failed");
            EXIT_CHECK
        }
        Err(e) => {
            eprintln!("entshare: {e}");
            e.exit_code()
        }
    }
}

/// Entry point of the binary.
pub fn main_with_args<I, T>(args: I) -> i32
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
    match cli.resolve() {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            eprintln!("entshare: {e}");
            e.exit_code()
        }
    }
}
