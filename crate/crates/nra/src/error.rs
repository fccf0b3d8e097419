use thiserror::Error;

/// Errors shared across the solver kernel.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sort error: {0}")]
    Sort(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("incomplete assignment: variable {0} is unassigned")]
    IncompleteAssignment(String),

    #[error("zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("variable order violation: {0}")]
    VarOrder(String),

    #[error("degenerate elimination: {0}")]
    DegenerateElimination(String),

    #[error("iteration limit exceeded: {0}")]
    IterationLimit(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
