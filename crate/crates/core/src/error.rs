use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational `{0}`")]
    ParseRational(String),

    #[error("interval [{lo}, {hi}]: {reason}")]
    Interval {
        lo: String,
        hi: String,
        reason: &'static str,
    },

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("duplicate state `{0}`")]
    DuplicateState(String),

    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<crate::model::Violation>),

    #[error("empty polytope: {0}")]
    EmptyPolytope(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("empty generator set")]
    NoGenerators,

    #[error("state `{0}` has no outgoing transitions")]
    NoTransitions(String),

    #[error("partition does not cover the state set")]
    BadPartition,

    #[error("partition is not a bisimulation: `{0}` and `{1}` are split apart")]
    NotBisimulation(String, String),

    #[error("product state name clash on `{0}`")]
    NameClash(String),

    #[error("model has {states} states, oracle cap is {cap}")]
    OracleCap { states: usize, cap: usize },

    #[error("malformed certificate: {0}")]
    Certificate(String),

    #[error("format: {0}")]
    Format(String),
}
