use alloc::string::String;

/// Every failure the core library reports.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    Dimension { rows: usize, row: usize, cols: usize },
    #[error("rank {0} is not supported (need r >= 3)")]
    Rank(usize),
    #[error("invalid root {0}")]
    InvalidRoot(String),
    #[error("unsupported adjoined root {0}: only long roots +-e_i+-e_j can be adjoined")]
    UnsupportedRoot(String),
    #[error("root {0} is listed more than once; use `copies` instead")]
    DuplicateRoot(String),
    #[error("copies for root {0} must be at least 1")]
    Copies(String),
    #[error("index {index} out of range 1..={bound}")]
    Index { index: usize, bound: usize },
    #[error("completion exceeded its budget of {budget} critical pairs; last unresolved pair {left} <> {right}")]
    CompletionBudget { budget: usize, left: String, right: String },
    #[error("{shape} takes {expected} indices, got {got}")]
    Arity { shape: &'static str, expected: usize, got: usize },
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("unsupported witness target: {0}")]
    UnsupportedTarget(String),
    #[error("witness construction bug: {0}")]
    ConstructionBug(String),
    #[error("matrix violates the orthogonal membership condition: {0}")]
    Membership(String),
    #[error("objects built from different specs")]
    ContextMismatch,
}

pub type Result<T> = core::result::Result<T, Error>;
