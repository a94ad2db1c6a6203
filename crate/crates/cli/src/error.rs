use std::path::PathBuf;

/// Errors surfaced by the runner, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum RunnerError {
    /// The scenario or command line was rejected before any integration.
    #[error("configuration error: {0}")]
    Config(String),
    /// A run failed while integrating.
    #[error("run `{run}` failed: {source}")]
    Numerical {
        run: String,
        #[source]
        source: superlumen_core::Error,
    },
    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl RunnerError {
    pub fn config(msg: impl Into<String>) -> Self {
        RunnerError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        RunnerError::Io { path: path.into(), source }
    }

    /// 2 for configuration problems, 3 for numerical failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunnerError::Config(_) => 2,
            RunnerError::Numerical { .. } => 3,
            RunnerError::Io { .. } => 1,
        }
    }
}

pub type Result<T, E = RunnerError> = std::result::Result<T, E>;
