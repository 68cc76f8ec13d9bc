use thiserror::Error;

/// Error taxonomy for the whole crate.
///
/// `Domain` and `Validation` mean the caller handed us something outside a
/// documented precondition (bad λ range, non-unimodal symbol, Γ-pole input).
/// `Internal` is reserved for checks that should never fire if the math is
/// right (e.g. a quantization bracket that refuses to bracket after the
/// fallback scan); it maps to a distinct process exit code so scripted runs
/// can tell "you misconfigured me" from "the library contradicted itself".
#[derive(Error, Debug)]
pub enum SpectraError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl SpectraError {
    /// Process exit code contract: 1 = validation/domain/config/io, 2 = internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            SpectraError::Internal(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, SpectraError>;
