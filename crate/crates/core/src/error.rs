use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension N = {0}: need N >= 3")]
    InvalidDimension(usize),
    #[error("index {index} out of range for N = {n_dim}")]
    IndexOutOfRange { index: i32, n_dim: usize },
    #[error("not a root: L^({i},{j})")]
    NotARoot { i: i32, j: i32 },
    #[error("root L^({i},{j}) is not reachable by the root recursion")]
    UnreachableRoot { i: i32, j: i32 },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("no reordering rule for the pair {left} * {right}")]
    UnsupportedReordering { left: String, right: String },
    #[error("step budget of {budget} exhausted while rewriting `{word}`")]
    StepBudget { budget: usize, word: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("empty window")]
    EmptyWindow,
    #[error("no interior states for `{0}`")]
    NoInterior(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
