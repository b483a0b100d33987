use thiserror::Error;

/// Errors produced by the solvers, recognizers and file parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("label {label} out of range 1..={k}")]
    LabelOutOfRange { label: usize, k: usize },

    #[error("graph is not a cograph (induced P4 on {witness:?})")]
    NotCograph { witness: [usize; 4] },

    #[error("graph is not trivially perfect (induced {} on {witness:?})", if *.is_cycle { "C4" } else { "P4" })]
    NotTriviallyPerfect { witness: [usize; 4], is_cycle: bool },

    #[error("search budget exceeded: {items} blocks give {count} candidates, budget is {budget}")]
    BudgetExceeded { items: usize, count: u128, budget: u128 },

    #[error("no clustering with exactly {p} clusters exists on {n} vertices")]
    Infeasible { p: usize, n: usize },

    #[error("packing instance is trivially infeasible: {0}")]
    TriviallyNo(String),

    #[error("packing instance is not perfect: items sum to {sum}, expected k*b = {expected}")]
    NotPerfect { sum: u64, expected: u64 },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
