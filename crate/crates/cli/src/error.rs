use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] dlambda_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("plot: {0}")]
    Plot(&'static str),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    /// Process exit status: 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Usage(_) => "usage",
            Self::Domain(_) => "domain",
            Self::Io { .. } => "io",
            Self::Csv(_) | Self::Json(_) => "format",
            Self::Plot(_) => "plot",
        }
    }

    /// Single-line JSON object for standard error.
    pub fn to_json_line(&self) -> String {
        let message = self.to_string().replace('\n', " ");
        serde_json::json!({ "error": self.kind(), "message": message.trim() }).to_string()
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
