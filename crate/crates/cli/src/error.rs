use thiserror::Error;

/// Everything that makes a run exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config at {location}: {message}")]
    Invalid { location: String, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("OPNORM_SEED must be an unsigned 64-bit integer, got `{0}`")]
    Seed(String),
}

impl CliError {
    pub fn parse(path: &str, e: &serde_json::Error) -> Self {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        CliError::Parse {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message,
        }
    }

    pub fn invalid(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Invalid {
            location: location.into(),
            message: message.into(),
        }
    }
}
