use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Variants are grouped by the kind of failure rather than by the module
/// that raises them, so the CLI can map them onto exit statuses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("ordering error on attribute `{attribute}`: {message}")]
    Ordering { attribute: String, message: String },
    #[error("attribute `{attribute}` is indeterministic at object `{object}`")]
    Determinism { attribute: String, object: String },
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("index {index} out of bounds for universe of size {size}")]
    Bounds { index: usize, size: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("input outside the function's domain: {0}")]
    Domain(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("discretization error: {0}")]
    Discretization(String),
    #[error("degenerate column `{0}`: all values are equal")]
    DegenerateColumn(String),
    #[error("undefined value: {0}")]
    Undefined(String),
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Short machine-readable tag used in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Schema(_) => "schema",
            Error::Ordering { .. } => "ordering",
            Error::Determinism { .. } => "determinism",
            Error::Numeric(_) => "numeric",
            Error::Dimension { .. } => "dimension",
            Error::Parameter(_) => "parameter",
            Error::Bounds { .. } => "bounds",
            Error::Capacity(_) => "capacity",
            Error::Domain(_) => "domain",
            Error::Contract(_) => "contract",
            Error::Discretization(_) => "discretization",
            Error::DegenerateColumn(_) => "degenerate-column",
            Error::Undefined(_) => "undefined",
            Error::Unknown { .. } => "unknown",
        }
    }
}
