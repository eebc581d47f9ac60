use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported support: {0}")]
    UnsupportedSupport(String),

    #[error("support too small: {0}")]
    SupportTooSmall(String),

    #[error("matrix too large: Sylvester size {size} exceeds the limit of {limit}")]
    MatrixTooLarge { size: usize, limit: usize },

    #[error("not transversal: edge directions are parallel")]
    NotTransversal,

    #[error("degenerate direction: {0}")]
    DegenerateDirection(String),

    #[error("coefficient overflow while expanding a determinant")]
    CoefficientOverflow,

    #[error("empty input: {0}")]
    Empty(String),
}

pub type Result<T> = std::result::Result<T, Error>;
