use alloc::string::String;

/// Failures raised by the tree, spectral and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    /// A structural invariant failed. Always names the offending instance.
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
