use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("chart mismatch: dimension {0} vs {1}")]
    ChartMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("{op}: degree {k} exceeds form degree {m}")]
    DegreeTooHigh { op: &'static str, k: usize, m: usize },
    #[error("form is not closed")]
    NotClosed,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("structure check failed: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
