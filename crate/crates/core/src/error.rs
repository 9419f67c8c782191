use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("slot index out of range: {index} (arity {arity})")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("index clash: slots {0} and {1} must differ")]
    IndexClash(usize, usize),
    #[error("arity {arity} too small, need at least {need}")]
    Arity { arity: usize, need: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("scale must be a pure power of q, got {0}")]
    NotQMonomial(String),
    #[error("nonzero remainder in divided difference (internal invariant)")]
    DividedDifferenceRemainder,
    #[error("window underflow: need margin {need}, have {have}")]
    WindowUnderflow { need: i64, have: i64 },
    #[error("support outside window: {0}")]
    OutsideWindow(String),
    #[error("fusion requires p=q^4")]
    FusionRequiresQ4,
    #[error("rewrite budget exhausted after {steps} steps: {trace}")]
    RewriteBudget { steps: usize, trace: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
