//! Error type shared by the core library.

use alloc::string::String;
use core::fmt;

/// Failures of web construction, evaluation and verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Source/target boundaries do not match, or a slice does not cover its input.
    Boundary(String),
    /// An operation was requested in an evaluation mode that cannot support it.
    Mode(String),
    /// Malformed generator or parameters.
    Invalid(String),
    /// A convention calibration found no (or more than one) admissible candidate.
    Calibration(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Boundary(m) => write!(f, "boundary error: {m}"),
            Error::Mode(m) => write!(f, "mode error: {m}"),
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
            Error::Calibration(m) => write!(f, "calibration failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
