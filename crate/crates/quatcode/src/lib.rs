//! Construction and verification of a family of quaternary cyclic codes.
//!
//! The pipeline starts from the reversible MDS BCH codes `C_u` of length
//! `q + 1` over `GF(q)` (`q = 2^m`), takes quaternary subfield subcodes and
//! subfield (trace) codes for even `m`, computes exact weight distributions,
//! and extracts the 3-designs supported by the resulting codes together with
//! the projective group action that explains them.
//!
//! Modules mirror the layers of the construction:
//!
//! * [`field`] — exact arithmetic in the tower `GF(2) ⊂ GF(4) ⊂ GF(q) ⊂ GF(q²)`
//! * [`poly`] — polynomial arithmetic, minimal polynomials, factoring `xⁿ − 1`
//! * [`cyclotomic`] — cyclotomic cosets and the defining-set pair `(T, T^c)`
//! * [`codes`] — cyclic/BCH/linear codes, duals, BCH bound
//! * [`subfield`] — subfield subcodes, trace codes, Delsarte duality
//! * [`weights`] — exact weight distributions and the MacWilliams transform
//! * [`designs`] — support designs and t-design verification
//! * [`projective`] — PGL₂ action, the stabilizer of `U_{q+1}`, block invariance
//! * [`acceptance`] — the end-to-end verification suite

pub mod acceptance;
pub mod codes;
pub mod cyclotomic;
pub mod designs;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod projective;
pub mod report;
pub mod subfield;
pub mod weights;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A field-tower operation was requested between incompatible fields.
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    /// An exhaustive computation would exceed the configured budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on exhaustively enumerated codewords (2^24).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Enumeration budget, honoring the `QUATCODE_BUDGET` override.
pub fn budget_from_env() -> u64 {
    std::env::var("QUATCODE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
