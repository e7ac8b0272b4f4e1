use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigErrorKind {
    #[error("expected `section.key = value`, got `{0}`")]
    Syntax(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{key}` repeated (first set on line {first})")]
    DuplicateKey { key: String, first: usize },
    #[error("`{key}` expects {expected}, got `{value}`")]
    TypeMismatch {
        key: String,
        expected: &'static str,
        value: String,
    },
    #[error("{0}")]
    InvalidValue(String),
    #[error(transparent)]
    Invariant(dcmotor_core::Error),
}

/// Config problem with the 1-based line it came from, when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub kind: ConfigErrorKind,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl std::error::Error for ConfigError {}

impl ConfigError {
    pub(crate) fn syntax(line: usize, text: &str) -> Self {
        Self {
            line: Some(line),
            kind: ConfigErrorKind::Syntax(text.to_string()),
        }
    }

    pub(crate) fn unknown_key(line: usize, key: &str) -> Self {
        Self {
            line: Some(line),
            kind: ConfigErrorKind::UnknownKey(key.to_string()),
        }
    }

    pub(crate) fn duplicate_key(line: usize, key: &str, first: usize) -> Self {
        Self {
            line: Some(line),
            kind: ConfigErrorKind::DuplicateKey {
                key: key.to_string(),
                first,
            },
        }
    }

    pub(crate) fn type_mismatch(
        line: usize,
        key: &str,
        expected: &'static str,
        value: &str,
    ) -> Self {
        Self {
            line: Some(line),
            kind: ConfigErrorKind::TypeMismatch {
                key: key.to_string(),
                expected,
                value: value.to_string(),
            },
        }
    }

    pub(crate) fn invalid_value(line: usize, msg: String) -> Self {
        Self {
            line: Some(line),
            kind: ConfigErrorKind::InvalidValue(msg),
        }
    }

    pub(crate) fn invariant(line: Option<usize>, err: dcmotor_core::Error) -> Self {
        Self {
            line,
            kind: ConfigErrorKind::Invariant(err),
        }
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config {}: {source}", path.display())]
    Config { path: PathBuf, source: ConfigError },

    #[error("invalid experiment: {0}")]
    Invalid(dcmotor_core::Error),

    #[error("simulation fault: {0}")]
    Simulation(dcmotor_core::Error),

    #[error("configs differ in {0}; compare needs identical motor, sim and scenario blocks")]
    ScenarioMismatch(&'static str),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("csv {}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

impl HarnessError {
    /// Process exit status: 1 for configuration/validation problems, 2 for
    /// anything that went wrong while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config { .. }
            | HarnessError::Invalid(_)
            | HarnessError::ScenarioMismatch(_) => 1,
            HarnessError::Simulation(_) | HarnessError::Io { .. } | HarnessError::Csv { .. } => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}
