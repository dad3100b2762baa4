//! Error type shared across the engine.

use thiserror::Error;

/// Errors reported by material models, the Lifshitz engine and the
/// mode-operator machinery.
#[derive(Debug, Clone, Error)]
pub enum CasimirError {
    /// A physical input is outside its domain (negative separation,
    /// zero plasma frequency, imaginary frequency out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An optical data table failed validation.
    #[error("invalid optical table: {0}")]
    Table(String),

    /// A mode basis or mode operator failed validation.
    #[error("invalid mode basis: {0}")]
    Basis(String),

    /// The round-trip operator is not a contraction: the scattering
    /// determinant is non-positive or the factorization broke down.
    /// Signals |r| > 1 physics or a basis too coarse for the geometry.
    #[error("unstable round trip: {0}")]
    UnstableRoundTrip(String),

    /// I/O failure while reading an optical table.
    #[error("table I/O error: {0}")]
    TableIo(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CasimirError>;
