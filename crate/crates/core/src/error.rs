use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cannot parse group spec `{0}`")]
    BadSpec(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group order {0} exceeds the supported maximum {1}")]
    TooLarge(u64, usize),
    #[error("table groups must be loaded from a file by the caller")]
    NeedsLoader,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group order {order} exceeds the automorphism search limit {limit}")]
    LimitExceeded { order: usize, limit: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("sub-multiset lattice needs {needed} states, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}
