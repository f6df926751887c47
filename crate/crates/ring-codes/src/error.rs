use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("invalid code: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
