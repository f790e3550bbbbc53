use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("modulus is not irreducible over the current field")]
    NotIrreducible,
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("extension degree bound exceeded: needed degree above {cap}")]
    ExtensionBoundExceeded { cap: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bad time range: k1 = {k1} < k0 = {k0}")]
    BadRange { k1: u64, k0: u64 },
    #[error("step cap of {0} exceeded before the trajectory closed")]
    StepCapExceeded(u128),
    #[error("state space of {size} states exceeds the enumeration cap {cap}")]
    StateSpaceTooLarge { size: u128, cap: u128 },
    #[error("polynomial has zero constant term")]
    SingularPolynomial,
    #[error("candidate root does not satisfy root^N = monodromy")]
    RootMismatch,
    #[error("target field does not extend the system's field")]
    NotAnExtension,
    #[error("wiring error: {0}")]
    WiringError(String),
    #[error("master register state is not periodic: {0}")]
    NotPeriodic(String),
    #[error("system is singular at step {0}")]
    SingularSystem(usize),
    #[error("no Floquet data available: {0}")]
    MissingFloquet(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// Stable machine-readable name for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::NotIrreducible => "NotIrreducible",
            Error::InvalidField(_) => "InvalidField",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ZeroElement => "ZeroElement",
            Error::ExtensionBoundExceeded { .. } => "ExtensionBoundExceeded",
            Error::SingularMatrix => "SingularMatrix",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::BadRange { .. } => "BadRange",
            Error::StepCapExceeded(_) => "StepCapExceeded",
            Error::StateSpaceTooLarge { .. } => "StateSpaceTooLarge",
            Error::SingularPolynomial => "SingularPolynomial",
            Error::RootMismatch => "RootMismatch",
            Error::NotAnExtension => "NotAnExtension",
            Error::WiringError(_) => "WiringError",
            Error::NotPeriodic(_) => "NotPeriodic",
            Error::SingularSystem(_) => "SingularSystem",
            Error::MissingFloquet(_) => "MissingFloquet",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::InvalidInput(_) => "InvalidInput",
            Error::ParseError { .. } => "ParseError",
            Error::Overflow(_) => "Overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
