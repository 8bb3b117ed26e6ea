use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at s = {0}")]
    Pole(f64),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("truncation error: requested T = {requested} exceeds ball radius {radius}")]
    Truncation { requested: f64, radius: f64 },
    #[error("setup error: {0}")]
    Setup(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("eigensolver did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
