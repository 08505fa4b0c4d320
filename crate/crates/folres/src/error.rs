use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("the germ is regular at the origin")]
    RegularGerm,

    #[error("branch {{{0} = 0}} is not invariant for the germ")]
    NotInvariant(&'static str),

    #[error("point with non-rational coordinates on the divisor; irreducible factor: {factor}")]
    UnsupportedField { factor: String },

    #[error("resolution depth limit {0} exceeded")]
    DepthExceeded(u32),

    #[error("component does not lie in the subtree over the given point")]
    NotInSubtree,

    #[error("curves share a common component; intersection number is infinite")]
    InfiniteIntersection,

    #[error("{0}")]
    Validation(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
