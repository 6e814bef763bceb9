use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    ZeroDimension,
    #[error("number of unknowns m={m} must satisfy 1 <= m <= n={n}")]
    InvalidUnknownCount { n: usize, m: usize },
    #[error("diagonal has length {diag} but off-diagonal has length {offdiag}")]
    LengthMismatch { diag: usize, offdiag: usize },
    #[error("off-diagonal entry a_{index} = {value} is not strictly positive")]
    NonPositiveOffDiagonal { index: usize, value: f64 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value bound for variable `{0}`")]
    MissingBinding(String),
    #[error("bisection could not separate eigenvalue {index} within the iteration budget")]
    EigenvalueSeparation { index: usize },
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("free eigenvalue at position {position} of F_{n} is not in Q(sqrt 3)")]
    NotRepresentable { n: usize, position: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
