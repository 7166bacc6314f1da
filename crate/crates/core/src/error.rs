use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph not connected")]
    NotConnected,

    #[error("vertices {0} and {1} are in different components")]
    Disconnected(usize, usize),

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid generator spec `{spec}`: {message}")]
    InvalidSpec { spec: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("input too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
