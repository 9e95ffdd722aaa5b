use thiserror::Error;

/// Errors raised by the library. Each variant belongs to the module that
/// detects it; see [`Error::module`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series division requires a constant term of +1 or -1, found {0}")]
    NonUnitConstantTerm(String),

    #[error("gcd({a}, {b}) = {gcd}, expected 1")]
    NotCoprime { a: i128, b: i128, gcd: i128 },

    #[error("{value} is not square-free")]
    NotSquareFree { value: u64 },

    #[error("({rk}, {sk}) is not a divisor pair of ({r}, {s})")]
    NotDivisorPair { r: u64, s: u64, rk: u64, sk: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("modulus must be a positive odd integer, got {0}")]
    BadJacobiModulus(i128),

    #[error("matrix ({a} {b}; {c} {d}) is not unimodular with c > 0")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64 },

    #[error("tau must lie in the open upper half-plane")]
    NotUpperHalfPlane,

    #[error("n = {n} does not exceed R = {big_r}")]
    NotAboveR { n: u64, big_r: String },

    #[error("series did not settle within N = {n_max} terms (residual {residual})")]
    NotConverged { n_max: u64, residual: String },

    #[error("series value {series} disagrees with oracle value {oracle}")]
    OracleMismatch { series: String, oracle: String },
}

impl Error {
    /// Name of the module that raises this error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::NonUnitConstantTerm(_) | Error::NotDivisorPair { .. } => "qseries",
            Error::NotCoprime { .. }
            | Error::BadJacobiModulus(_)
            | Error::NotUnimodular { .. }
            | Error::NotUpperHalfPlane => "numtheory",
            Error::NotSquareFree { .. }
            | Error::NotAboveR { .. }
            | Error::NotConverged { .. }
            | Error::OracleMismatch { .. } => "hrr",
            Error::InvalidArgument(_) => "args",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
