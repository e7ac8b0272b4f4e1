//! Experiment runner around `dcmotor-core`: config files, CSV traces and the
//! PID/SMC comparison report.

pub mod compare;
pub mod config;
pub mod error;
pub mod experiment;
pub mod plot;
pub mod trace_csv;

pub use compare::{compare, write_comparison, Check, ComparisonFiles, ComparisonReport, Ratios};
pub use config::{
    parse_config, parse_config_with, serialize_config, ControllerKind, ExperimentConfig,
    OutputConfig, SurfaceConfig,
};
pub use error::{ConfigError, ConfigErrorKind, HarnessError};
pub use experiment::{run_experiment, summarize, RunOutcome};
pub use trace_csv::{emit_csv, format_sig, read_csv, write_csv};

/// Reads and parses a config file.
pub fn load_config(path: &std::path::Path) -> Result<ExperimentConfig, HarnessError> {
    load_config_with(path, false)
}

/// Reads and parses a config file, see [`parse_config_with`].
pub fn load_config_with(
    path: &std::path::Path,
    allow_unstable: bool,
) -> Result<ExperimentConfig, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_config_with(&text, allow_unstable).map_err(|source| HarnessError::Config {
        path: path.to_path_buf(),
        source,
    })
}
