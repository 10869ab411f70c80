use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("{what} exceeds cap: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("Groebner basis computation produced a non-homogeneous element: {0}")]
    ShapeViolation(String),

    #[error("mismatched variable counts: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("{0} does not divide {1}")]
    NotDivisible(String, String),

    #[error("zero polynomial has no (1 - t)-adic reduction")]
    ZeroPolynomial,

    #[error("expectation not derivable: {0}")]
    NotDerivable(String),

    #[error("unknown family tag `{0}`")]
    UnknownFamily(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
