//! Crate-wide error type.

use num_bigint::BigUint;
use thiserror::Error;

/// Errors surfaced by table construction, constant evaluation, and scans.
#[derive(Debug, Error)]
pub enum Error {
    /// Table constructors need a range of at least one entry.
    #[error("table limit must be at least 1")]
    EmptyRange,

    /// Product exponents `a_j` must be non-negative.
    #[error("exponent a_{j} = {value} is negative")]
    NegativeExponent { j: u64, value: i64 },

    /// Brute-force enumeration refuses `n` beyond its cap.
    #[error("brute-force enumeration supports n <= {cap}, got {n}")]
    BruteForceCap { n: u64, cap: u64 },

    /// The recurrence sum failed its exact-divisibility check. This can
    /// only come from a corrupted weight table or accumulator, never from
    /// valid input.
    #[error("recurrence sum at n = {n} leaves remainder {remainder}")]
    DivisibilityFailure { n: u64, remainder: BigUint },

    /// Two supposedly independent evaluation routes disagree beyond their
    /// combined error bounds.
    #[error("independent routes disagree: {0}")]
    RouteDisagreement(String),

    /// Input outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested working precision is below the supported floor.
    #[error("working precision must be at least {min} bits, got {got}")]
    PrecisionTooLow { got: u32, min: u32 },

    /// Structurally invalid parameters (empty grids, ranges out of order,
    /// constraints between fields violated).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A size guard tripped before an infeasibly large computation.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
