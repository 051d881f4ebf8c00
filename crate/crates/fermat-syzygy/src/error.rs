use thiserror::Error;

/// How an error should be classified by callers that map failures to exit
/// codes: precondition failures are the caller's problem, inconsistencies
/// mean a cross-check inside the engine failed and the run is untrustworthy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Precondition,
    Inconsistency,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic mismatch: curve has characteristic {curve}, operation given {given}")]
    CharacteristicMismatch { curve: u64, given: u64 },

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("range is empty")]
    EmptyRange,

    #[error("prime list is empty")]
    EmptyPrimes,

    #[error("resource cap exceeded: requested {requested}, cap {cap} (pass allow-large to override)")]
    ResourceCap { requested: u64, cap: u64 },

    #[error("arithmetic progression contains no further primes (found {found:?})")]
    ProgressionExhausted { found: Vec<u64> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Inconsistency(_) => ErrorClass::Inconsistency,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
