use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// `Defect` marks an internal consistency failure, never bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("determinant is {0}, expected 1")]
    Determinant(String),
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(String),
    #[error("{0} is not a positive fundamental discriminant")]
    NotFundamental(String),
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("p = {p} is ramified in Q(sqrt {d})")]
    Ramified { p: String, d: String },
    #[error("p = {p} is inert in Q(sqrt {d})")]
    Inert { p: String, d: String },
    #[error("matrix {0} is not in Gamma0({1})")]
    NotInGamma0(String, String),
    #[error("form {0} does not have level {1}")]
    LevelViolation(String, String),
    #[error("(p, d) = ({p}, {d}) does not qualify: {reason}")]
    NotQualifying { p: String, d: String, reason: String },
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal defect: {0}")]
    Defect(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
