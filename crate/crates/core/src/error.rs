use thiserror::Error;

use crate::operators::Side;

#[derive(Debug, Error)]
pub enum Error {
    /// A table does not have the shape its carriers require.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("{what}: {needed} exceeds cap {cap}")]
    CapExceeded { what: &'static str, needed: String, cap: u64 },
    #[error("closure exceeded the time budget after {elements} elements")]
    Budget { elements: usize },
    #[error("carrier mismatch: expected {expected} elements, found {found}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("operation needs a {expected:?} operator semiring, got {found:?}")]
    SideMismatch { expected: Side, found: Side },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("product of operator elements left the closure (instance is not a valid Γ-semiring)")]
    NotClosed,
}

pub type Result<T> = std::result::Result<T, Error>;
