use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Where in the input a parse error was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Line(usize),
    Byte(usize),
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Position::Line(l) => write!(f, "line {l}"),
            Position::Byte(b) => write!(f, "byte {b}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: Position, message: String },

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported size: {0}")]
    Unsupported(String),

    #[error(
        "power iteration did not converge after {iterations} iterations \
         (best estimate {best}, residual {residual:e})"
    )]
    NoConvergence { best: f64, residual: f64, iterations: u64 },

    #[error("integer overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("random graph generation gave up: {0}")]
    GenerationExhausted(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse_at(position: Position, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }
}
