use thiserror::Error;

/// Errors shared across the crate.
///
/// Resource exhaustion is reported distinctly from every mathematical
/// outcome: a truncated enumeration must never be mistaken for a zero count.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("not monic: leading coefficient is {lead}")]
    NotMonic { lead: String },

    #[error("degree zero: expression reduces to a constant")]
    DegreeZero,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("truncation bound mismatch: {left} vs {right}")]
    BoundMismatch { left: u64, right: u64 },

    #[error("resource limit exceeded: examined {examined} states (cap {cap})")]
    ResourceLimit { examined: u64, cap: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no local factor supplied for prime {0}")]
    MissingPrime(u64),

    #[error("local factor at prime {p} needs coefficients up to exponent {needed}, only {have} supplied")]
    InsufficientDepth { p: u64, needed: u32, have: u32 },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
