use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("degenerate metric: points {0} and {1} are at distance zero")]
    Degenerate(usize, usize),

    #[error("metric invariant violated: {0}")]
    NotAMetric(String),

    #[error("graph is disconnected: no path from {0} to {1}")]
    Disconnected(usize, usize),

    #[error("no cover exists: element {0} belongs to no set")]
    NoCover(usize),

    #[error("likely uncoverable: budget guess {khat} exceeded 4*m = {limit} with {alive} elements still uncovered")]
    LikelyUncoverable {
        khat: usize,
        limit: usize,
        alive: usize,
    },

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("sampling from an empty set")]
    EmptySample,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("round cap of {cap} exceeded with {uncovered} constraints still uncovered")]
    RoundCap { cap: usize, uncovered: usize },

    #[error("output failed verification: {count} violated constraints, first ({s}, {t})")]
    NotNavigable { count: usize, s: usize, t: usize },

    #[error("distance query budget of {0} exhausted")]
    BudgetExhausted(u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
