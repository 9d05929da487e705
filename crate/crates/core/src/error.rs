use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} {value} out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("{what}: {n} variables exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation requires an explicit value table")]
    NotTabulated,

    #[error("invalid decision tree: {0}")]
    InvalidTree(String),

    #[error("binary tree queried unstable digit at position {0}")]
    UnstableQuery(usize),

    #[error("tree does not compute the function: {0}")]
    NotComputing(String),

    #[error("stable sensitivity is undefined at a u-output input")]
    UnstableOutput,

    #[error("plurality is ambiguous (tie between most frequent values)")]
    PluralityTie,

    #[error("plurality of an empty multiset")]
    EmptyMultiset,
}
