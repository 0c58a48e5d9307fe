use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An experiment configuration key is missing or malformed.
    #[error("config error at `{key}`: {msg}")]
    Config { key: String, msg: String },

    /// A numeric routine could not reach the requested accuracy.
    #[error("numeric failure: {msg} (achieved radius {achieved:e})")]
    Numeric { msg: String, achieved: f64 },

    /// A configured capability limit (degree cap, conductor cap, ...) was hit.
    #[error("capability limit: {0}")]
    Capability(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn config(key: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            msg: msg.into(),
        }
    }

    /// Process exit code used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::InvalidInput(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Numeric { .. } => 3,
            Error::Capability(_) => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
