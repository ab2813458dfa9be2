use thiserror::Error;

/// Errors across the crate. `Input` covers malformed arguments and tables,
/// `Resource` configured size caps, `Model` missing sparse entries in a
/// monoidal model, `Structure` internally inconsistent structures (e.g. a
/// closed structure whose evaluation morphism fails its universal property).
#[derive(Error, Debug)]
pub enum CatError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("model incomplete: {0}")]
    Model(String),
    #[error("structural error: {0}")]
    Structure(String),
    #[error("environment error: {0}")]
    Environment(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CatError {
    pub fn input(msg: impl Into<String>) -> Self {
        CatError::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, CatError>;
