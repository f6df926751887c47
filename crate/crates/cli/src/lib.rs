//! Command-line front end.

pub mod args;
pub mod commands;
pub mod config;
mod error;
pub mod estimator;
pub mod grid;
mod table;

use std::io::Write;
use std::path::PathBuf;

pub use args::{Cli, Command, Format};
pub use config::RunConfig;
pub use error::CliError;
pub use estimator::{Estimate, Estimator, EstimatorRegistry, Query};

/// Default output directory when `--out` is not given.
pub const OUT_DIR_ENV: &str = "RINGREP_OUT_DIR";

fn dispatch(command: Command, seed: Option<u64>) -> Result<commands::Output, CliError> {
    let registry = EstimatorRegistry::default();
    match command {
        Command::FusionSuccess(a) => commands::fusion_success(a),
        Command::PauliStats(a) => commands::pauli_stats(a),
        Command::FtFusion(a) => commands::ft_fusion(a),
        Command::Simulate(a) => commands::simulate_cmd(a, seed, &registry),
        Command::Estimate(a) => commands::estimate_cmd(a, seed, &registry),
        Command::Optimize(a) => commands::optimize_cmd(a),
        Command::Resources(a) => commands::resources(a),
    }
}

/// Runs a parsed command line and writes its output.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let Cli { mut global, mut command } = cli;
    if let Some(path) = &global.config {
        RunConfig::load(path)?.apply(&mut global, &mut command);
    }
    let name = command.name();
    let seed = global.seed;
    let output = match global.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Runtime(e.to_string()))?
            .install(|| dispatch(command, seed))?,
        None => dispatch(command, seed)?,
    };
    let format = global.format.unwrap_or(output.default_format);
    let bytes = match format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(&output.json).map_err(|e| CliError::Runtime(e.to_string()))?;
            b.push(b'\n');
            b
        }
        Format::Csv => output.csv.ok_or_else(|| CliError::Usage(format!("{name} has no csv output")))?,
    };
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let path = global
        .out
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{name}.{ext}"))));
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&p, bytes)?;
        }
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}
