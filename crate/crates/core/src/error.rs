use thiserror::Error;

use crate::regularity::RegularPartition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported modulus {0}: expected one of 2, 3, 5, 7")]
    UnsupportedModulus(u32),

    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u8, u8),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("enumerating {requested} points exceeds the cap of {cap}")]
    CapExceeded { requested: u128, cap: u64 },

    #[error("column search over {columns} columns exceeds the limit of {limit}")]
    SearchTooLarge { columns: usize, limit: usize },

    #[error("cosets are not all over the same subspace")]
    MixedSubspaces,

    #[error("coset is not contained in the enclosing coset")]
    NotContained,

    #[error("cosets are inconsistent with the linear system")]
    InconsistentCosets,

    #[error("refinement reached codimension {} without an ε-regular partition", .0.codim_in_start)]
    RegularityNotReached(Box<RegularPartition>),

    #[error("selection failed: {0}")]
    SelectionFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
