use alloc::string::String;
use core::fmt;

/// Unified error type for table construction, parsing, and certified evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside an operation's mathematical domain.
    Domain(String),
    /// Input outside the range covered by the prime table; the caller must
    /// rebuild the table with a larger limit.
    Range(String),
    /// A memory or work budget would be exceeded.
    Resource(String),
    /// Malformed textual input.
    Parse(String),
    /// No sign change was found while bracketing a root.
    Bracket(String),
    /// A documented hypothesis failed to hold at runtime (for example, a
    /// function required to be negative at the bracket start evaluates
    /// certifiably positive there).
    ContractViolation(String),
    /// A sign or ordering could not be certified within the precision cap.
    PrecisionExhausted(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::Resource(msg) => write!(f, "resource error: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Bracket(msg) => write!(f, "bracket error: {msg}"),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::PrecisionExhausted(msg) => write!(f, "precision exhausted: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
