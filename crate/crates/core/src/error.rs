use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph6 error at byte {pos}: {msg}")]
    Graph6 { pos: usize, msg: String },

    #[error("not color-critical: {0}")]
    NotColorCritical(String),

    #[error("{what} is limited to {limit}, got {got}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid host: {0}")]
    InvalidHost(String),

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("slice level {0} lies outside [0, 1]")]
    InfeasibleSlice(f64),

    #[error("budget exceeded: projected {projected} search units, budget {budget}")]
    BudgetExceeded { projected: u128, budget: u128 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
