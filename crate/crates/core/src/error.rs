use thiserror::Error;

/// Errors raised across the packing pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A function argument lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A tuning parameter is out of range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An item or demand cannot be packed into any available bin kind.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// The exact oracle refuses instances above its size limit.
    #[error("instance of {n} items exceeds the oracle limit of {limit}")]
    OracleLimit { n: usize, limit: usize },
    /// Configuration enumeration exceeded its cap.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A caller-side precondition of an algorithm does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Repeated sampling failed to gather enough large items.
    #[error("resampling exhausted after {attempts} attempts ({got} of {needed} large samples)")]
    ResampleExhausted {
        attempts: usize,
        got: usize,
        needed: usize,
    },
    /// An input list fails the (delta1, delta2, eps)-property.
    #[error("property violated: {lhs} > {rhs}")]
    PropertyViolation { lhs: f64, rhs: f64 },
    /// A query was issued against a structure that has seen no data.
    #[error("empty: {0}")]
    Empty(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Whether this error represents a violated precondition, as opposed to
    /// an I/O or internal failure.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
