use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested decimal precision is below the supported minimum.
    #[error("precision of {0} digits is below the minimum of {min}", min = crate::ap::MIN_DIGITS)]
    DigitsTooLow(u32),
    /// The operation needs more working digits than the context provides.
    #[error("operation needs at least {required} digits but the context has {available}")]
    InsufficientPrecision { required: u32, available: u32 },
    /// An enumeration would exceed the configured structure cap.
    #[error("enumeration of {needed} structures exceeds the cap of {cap}")]
    CapExceeded { cap: u64, needed: u64 },
    /// A recurrence specification violates its invariants.
    #[error("invalid recurrence spec: {0}")]
    InvalidSpec(String),
    /// A range request with `from > to`.
    #[error("empty range: from {from} > to {to}")]
    EmptyRange { from: i64, to: i64 },
    /// Iterative root refinement failed to reach tolerance.
    #[error("root refinement did not converge within {0} iterations")]
    NoConvergence(u32),
    /// A chain-structure fixture file could not be parsed.
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
