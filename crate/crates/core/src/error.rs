use thiserror::Error;

/// Everything that can go wrong in the toolkit.
///
/// Variants are grouped loosely by the stage that raises them; the CLI maps
/// them onto exit codes via [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic must be an odd prime <= 10000, got {0}")]
    NotOddPrime(u64),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),
    #[error("{0}: constant polynomial not allowed")]
    ConstantPolynomial(&'static str),
    #[error("not a real quadratic function field: {0}")]
    NotReal(String),
    #[error("{0} is not square-free")]
    NotSquarefree(String),
    #[error("no constant Q_i within {0} steps")]
    PeriodOverflow(usize),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("{what} needs {work} units of work, limit is {limit} (raise with QFF_MAX_WORK)")]
    WorkLimit {
        what: &'static str,
        work: u128,
        limit: u128,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("regulator {regulator} does not divide L(1) = {h_jac} for D = {d}")]
    RegulatorDivisibility { d: String, regulator: u64, h_jac: i64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used for exit codes and sweep bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: bad syntax, bad arguments, guards.
    Input,
    /// Valid input that falls outside the theory's hypotheses.
    Precondition,
    /// A checked mathematical relation failed.
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. }
            | Error::InvalidArgument(_)
            | Error::WorkLimit { .. }
            | Error::FieldTooLarge(_)
            | Error::DivisionByZero
            | Error::FieldMismatch
            | Error::ZeroPolynomial(_)
            | Error::ConstantPolynomial(_) => ErrorKind::Input,
            Error::NotOddPrime(_)
            | Error::NotReal(_)
            | Error::NotSquarefree(_)
            | Error::Precondition(_)
            | Error::PeriodOverflow(_)
            | Error::Precision(_) => ErrorKind::Precondition,
            Error::RegulatorDivisibility { .. } | Error::Internal(_) => ErrorKind::Verification,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
