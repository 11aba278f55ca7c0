use thiserror::Error;

use crate::sparsity::WorkRefusal;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by network construction, algebra, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}` in node set")]
    DuplicateLabel(String),

    #[error("non-finite weight {weight} on arc ({from}, {to})")]
    NonFiniteWeight {
        from: String,
        to: String,
        weight: f64,
    },

    #[error("negative weight {weight} on arc ({from}, {to})")]
    NegativeWeight {
        from: String,
        to: String,
        weight: f64,
    },

    #[error("incompatible node sets: {left} vs {right}")]
    IncompatibleSets { left: String, right: String },

    #[error("vector is over {vector}, expected {expected}")]
    VectorSetMismatch { vector: String, expected: String },

    #[error("partition is over {partition}, expected {expected}")]
    PartitionSetMismatch { partition: String, expected: String },

    #[error("expected a binary network, arc ({from}, {to}) has weight {weight}")]
    NotBinary {
        from: String,
        to: String,
        weight: f64,
    },

    #[error("expected a one-mode network, got {rows} x {cols}")]
    NotOneMode { rows: String, cols: String },

    #[error("network is not symmetric at arc ({from}, {to})")]
    NotSymmetric { from: String, to: String },

    #[error("unknown class {0}")]
    UnknownClass(i64),

    #[error("collection has no {0}")]
    MissingInput(&'static str),

    #[error("property `{0}` not found in table")]
    MissingProperty(String),

    #[error("property `{property}` is single-valued but key `{key}` holds {count} values")]
    NotScalar {
        property: String,
        key: String,
        count: usize,
    },

    #[error("duplicate key `{0}` in table")]
    DuplicateKey(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error(
        "estimated multiplication work {} exceeds the limit {}",
        .0.report.exact_work,
        .0.max_work
    )]
    WorkLimitExceeded(Box<WorkRefusal>),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
