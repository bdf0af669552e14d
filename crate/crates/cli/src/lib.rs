//! Library half of the `opnorm` command: config parsing, suite execution and
//! report assembly. The binary is a thin clap front end over [`run_cli`].

pub mod build;
pub mod config;
pub mod describe;
pub mod error;
pub mod report;
pub mod suites;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

pub use config::{OutputFormat, SuiteConfig};
pub use error::CliError;
pub use report::{RunReport, Verdict};

pub const TOOL: &str = "opnorm";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SEED_ENV: &str = "OPNORM_SEED";

/// Process exit codes.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const INVALID: u8 = 2;
}

pub fn load_config(path: &Path) -> Result<SuiteConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    SuiteConfig::parse(&text, &path.display().to_string())
}

/// Reads `OPNORM_SEED` if set.
pub fn seed_override() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Seed(v)),
        Err(_) => Ok(None),
    }
}

/// Builds every suite, then runs them in parallel; reports keep config order.
pub fn run_config(cfg: &SuiteConfig, seed_override: Option<u64>) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let master = seed_override.unwrap_or(cfg.seed);
    let prepared = suites::prepare(cfg, master)?;
    let reports: Vec<_> = prepared
        .par_iter()
        .enumerate()
        .map(|(i, (name, seed, suite))| suites::execute(i, name, *seed, suite))
        .collect();
    let mut notes = Vec::new();
    if reports.is_empty() {
        notes.push("zero suites configured; passing vacuously".to_string());
    }
    if let Some(s) = seed_override {
        notes.push(format!("master seed {} overridden by {SEED_ENV}={s}", cfg.seed));
    }
    let passed = reports.iter().all(|r| r.status == Verdict::Pass);
    Ok(RunReport {
        schema: report::SCHEMA_VERSION,
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        seed: master,
        status: Verdict::from_bool(passed),
        suite_count: reports.len(),
        config: cfg.clone(),
        suites: reports,
        notes,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Loads, runs and emits a report. Returns the exit code.
pub fn run_command(
    path: &Path,
    format: Option<OutputFormat>,
    output: Option<&Path>,
    stdout: &mut dyn std::io::Write,
) -> Result<u8, CliError> {
    let cfg = load_config(path)?;
    let report = run_config(&cfg, seed_override()?)?;
    let text = match format.unwrap_or(cfg.format) {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.to_text(),
    };
    match output.map(Path::to_path_buf).or_else(|| cfg.output.clone()) {
        Some(p) => std::fs::write(&p, &text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?,
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?,
    }
    Ok(if report.passed() { exit::PASS } else { exit::FAIL })
}
