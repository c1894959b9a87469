use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} outside 2 < p < 2^31")]
    CharacteristicOutOfRange(u64),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("parse error at byte {pos} in `{input}`: {msg}")]
    Parse { input: String, pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("exponent overflow (exponents are limited to 2^16 - 1)")]
    ExponentOverflow,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("inhomogeneous polynomial `{0}`")]
    Inhomogeneous(String),
    #[error("wrong grading arity: expected {expected}, found {found}")]
    GradingArity { expected: usize, found: usize },
    #[error("ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("input is not a monomial ideal")]
    NotMonomial,
    #[error("S-pair cap of {limit} exceeded")]
    PairCap { limit: u64 },
    #[error("timeout after {seconds} s")]
    Timeout { seconds: u64 },
    #[error("resolution length cap {0} exceeded")]
    LengthCap(usize),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("genericity failure: {0}")]
    GenericityFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("JSON error: {0}")]
    Json(String),
}

impl Error {
    /// True for resource-cap errors (pair cap, timeout, budgets).
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::PairCap { .. } | Error::Timeout { .. } | Error::LengthCap(_) | Error::Budget(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
