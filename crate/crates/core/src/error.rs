use thiserror::Error;

use crate::model::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {what} {index} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("operation requires a {expected} instance, got {found}")]
    WrongKind { expected: Kind, found: Kind },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance is not normalized (row sums differ)")]
    NotNormalized,

    #[error("enumeration of {required} allocations exceeds cap {cap}")]
    CapExceeded { required: u128, cap: u64 },

    /// The envy graph has a directed cycle of positive weight, so no payments
    /// make the allocation approximately envy-free. Machines are 0-based and
    /// the first vertex is repeated at the end.
    #[error("positive-weight cycle in envy graph: {cycle:?}")]
    PositiveCycle { cycle: Vec<usize> },

    #[error("parse error: {0}")]
    Parse(String),
}
