use thiserror::Error;

use crate::Elem;

/// Malformed input tables, reported separately from axiom failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("table has {got} cells, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("element index {index} out of range for carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("multiplication table is not total: missing {0} * {1}")]
    PartialMultiplication(String, String),
    #[error("conflicting entries for {0} {op} {1}", op = .2)]
    Conflict(String, String, char),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Structure(#[from] StructureError),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("relation is not additive: ({0},{1}) ~ ({2},{3}) summable but sums are unrelated", .witness[0], .witness[1], .witness[2], .witness[3])]
    NotAdditive { witness: [Elem; 4] },

    #[error("relation is not effective")]
    NotEffective,

    #[error("congruence generated by the given pairs is the total relation")]
    DegenerateCongruence,

    #[error("not a partial field")]
    NotPartialField,

    #[error("not a valid {0}: {1}")]
    Invalid(&'static str, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
