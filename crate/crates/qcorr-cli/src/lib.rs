//! Sweep, plotting and verification machinery behind the `qcorr` binary.

pub mod csvio;
pub mod presets;
pub mod range;
pub mod svg;
pub mod sweep;
pub mod verify;

/// Bad invocation or malformed input; the binary maps this to exit code 1.
/// Everything else (numerical or I/O failure) exits with 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

impl UsageError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}
