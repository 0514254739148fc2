use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field parameter: {0}")]
    InvalidField(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a rational prime")]
    NotPrime(u64),

    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("element {0} is not integral")]
    NotIntegral(String),

    #[error("malformed prime ideal: {0}")]
    MalformedPrime(String),

    #[error("rational prime factor exceeds 64 bits or could not be factored: {0}")]
    FactorizationFailed(String),

    #[error("no admissible prime found below search bound {bound}")]
    SearchExhausted { bound: u64 },

    #[error("symbolic local data blocks the construction: {0}")]
    InfeasibleSymbolic(String),

    #[error("piece refinement produced more than {cap} cells")]
    RefinementCapExceeded { cap: usize },

    #[error("modulus {0} exceeds the supported range")]
    ModulusTooLarge(u64),

    #[error("prime set is finite; cannot split into two infinite parts")]
    FiniteSet,

    #[error("invalid superideal: {0}")]
    InvalidSuperIdeal(String),

    #[error("invalid adele sketch: {0}")]
    InvalidSketch(String),

    #[error("neighborhood precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed JSON at `{path}`: {msg}")]
    Json { path: String, msg: String },

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn json(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Json {
            path: path.into(),
            msg: msg.into(),
        }
    }

    /// Input-shape errors as opposed to mathematical failures.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Json { .. })
    }
}
