use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("elements or ideals belong to different rings")]
    RingMismatch,
    #[error("the zero ideal is not representable")]
    ZeroIdeal,
    #[error("ideals are not comaximal")]
    NotComaximal,
    #[error("ideal is not regular")]
    NotRegular,
    #[error("ideal is not prime")]
    NotPrime,
    #[error("search exhausted after {0} candidates")]
    SearchExhausted(usize),
    #[error("1 + d has no odd prime proper divisor (d = {0})")]
    NoOddPrimeDivisor(u64),
    /// An internal check that should hold by theory failed; always a bug.
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn consistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Consistency(msg.into()))
}
