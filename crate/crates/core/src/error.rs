use thiserror::Error;

/// Errors raised by graph construction, quotient building and counting.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid vertex key {key}: {reason}")]
    InvalidVertex { key: String, reason: String },

    #[error("unknown catalog entry `{0}`")]
    Catalog(String),

    #[error("invalid graph specification: {0}")]
    InvalidSpec(String),

    #[error("loop edge at {0}: loops are only allowed in quotient graphs")]
    Loop(String),

    #[error("graph is not vertex-transitive: {0}")]
    NotTransitive(String),

    #[error("integer overflow while {0}")]
    Overflow(String),

    #[error("rewriting did not terminate on word of length {0}")]
    RewriteDiverged(usize),

    #[error("invalid subgroup action: {0}")]
    InvalidAction(String),

    #[error("operation requires a finite quotient: {0}")]
    InfiniteQuotient(String),

    #[error("multigraph derivation requires a symmetric action")]
    SymmetryRequired,

    #[error("edge label {label} out of range (only {available} edges) at {at}")]
    InvalidLabel {
        label: u32,
        available: u32,
        at: String,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no contraction: {0}")]
    NoContraction(String),

    #[error("bound refused: {0}")]
    BoundRefused(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
