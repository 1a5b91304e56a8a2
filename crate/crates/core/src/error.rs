use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HallError {
    #[error("invalid indecomposable label: {0}")]
    InvalidLabel(String),

    #[error("rational function has a residual odd power of v, not a function of q")]
    OddPowerResidue,

    #[error("enumeration of {size} morphisms exceeds the ceiling {ceiling}")]
    EnumerationTooLarge { size: u128, ceiling: u64 },

    #[error("hom space dimension changed from {dim_low} to {dim_high} when the truncation bound {beta} was raised")]
    TruncationUnstable {
        beta: u32,
        dim_low: usize,
        dim_high: usize,
    },

    #[error("module has infinite-dimensional total homology")]
    InfiniteHomology,

    #[error("recursion exceeded the dimension-derived depth bound")]
    NonTerminating,

    #[error("generator family is not defined for this presentation")]
    WrongFamily,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("objects live over different sphere dimensions")]
    DimMismatch,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HallError>;
