use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid number format: {0}")]
    Format(String),
    #[error("value {value} is not representable in {fmt}")]
    Unrepresentable { value: String, fmt: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: usize, limit: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("node {end} is unreachable from node {start}")]
    Unreachable { start: usize, end: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
