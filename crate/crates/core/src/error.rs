use thiserror::Error;

/// Errors produced by graph construction, measures, attacks, defenses and simulators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges or nodes")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {deviation:e}")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (best residual {best_residual:e})")]
    NoConvergence { iterations: usize, best_residual: f64 },

    #[error("measure undefined for this graph: {0}")]
    Domain(String),

    #[error("graph is disconnected; effective resistance is infinite")]
    InfiniteResistance,

    #[error("graph has {nodes} nodes; exact computation is limited to {limit}")]
    TooLarge { nodes: usize, limit: usize },

    #[error("infeasible action after {tries} attempts: {what}")]
    Infeasible { tries: usize, what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
