use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands or inputs that do not fit together (foreign variables,
    /// mismatched lengths, missing assignments).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} has size {size}, above the enumeration limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("linear system at degree {degree} needs {columns} columns, above the cap of {cap}")]
    ColumnCap {
        degree: u32,
        columns: usize,
        cap: usize,
    },

    #[error("structure family is not subset closed: {0}")]
    NotSubsetClosed(String),

    #[error("system is feasible: a structure of size {size} exists")]
    Feasible { size: usize },

    #[error("structure family is empty")]
    EmptyFamily,

    #[error("affine map is not invertible")]
    NonInvertible,

    #[error("no completion of the cardinality inverse up to degree {bound}")]
    NoCompletion { bound: u32 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
