use thiserror::Error;

/// Errors raised by the statistics, constructors and verifiers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation must have at least one element")]
    Empty,

    #[error("value {value} at position {position} is outside 1..={n}")]
    ValueOutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("value {value} appears more than once (second time at position {position})")]
    DuplicateValue { position: usize, value: usize },

    #[error("cannot parse token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("incompatible sizes: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{statistic} is undefined for n = {n} (needs n >= {min})")]
    Undefined {
        statistic: &'static str,
        n: usize,
        min: usize,
    },

    #[error("{what} = {value} is out of range ({expected})")]
    OutOfRange {
        what: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("permutation is crossing; no displacement-increasing transposition exists")]
    AlreadyCrossing,

    #[error("no positive-integer partition of {s} into {n} parts")]
    InfeasiblePartition { n: usize, s: usize },

    #[error("invalid interval family: {0}")]
    InvalidFamily(String),

    #[error("successor map is not a single {n}-cycle")]
    NotSingleCycle { n: usize },

    #[error("jumps starting at {a} and {b} do not have distinct endpoints")]
    SharedEndpoints { a: usize, b: usize },

    #[error("n = {n} exceeds the enumeration limit {limit}")]
    EnumerationLimit { n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
