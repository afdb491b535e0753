//! Exact computational representation theory for basic Lie superalgebras and
//! their map (current) superalgebras `g ⊗ A`, `A = ℚ[t]`.
//!
//! The crate is organized in layers:
//!
//! - [`algebra_base`]: exact rational scalars, univariate polynomials,
//!   factored ideals of `ℚ[t]` with support arithmetic, and the
//!   finite-dimensional truncated quotient algebras `B = ℚ[t]/I`.
//! - [`rootdata`]: root systems of the supported families in ε/δ
//!   coordinates, simple systems, odd reflections, the odd-partner
//!   condition used by the finiteness arguments, dominance, and weight
//!   frontiers.
//! - [`liesuper`]: matrix realizations with exact structure constants,
//!   Chevalley-style root vectors and sl(2)-triples, and the map
//!   superalgebra `g ⊗ B`.
//! - [`weylmod`]: the module engine. Generalized Kac modules, local Weyl
//!   modules computed through truncations, Garland series, characters,
//!   tensor products, and an independent brute-force oracle.
//! - [`cli`]: the `superweyl` command-line front end with stable JSON
//!   reports.

pub mod algebra_base;
pub mod cli;
pub mod liesuper;
pub mod linalg;
pub mod report;
pub mod rootdata;
pub mod weylmod;

pub use algebra_base::{truncated_algebra, FactoredIdeal, FinDimCommAlgebra, IdealOp, Polynomial, Scalar};

use thiserror::Error as ThisError;

/// Crate-wide error type. The three variants map onto the CLI exit codes
/// 2 (invalid input), 3 (unsupported request), 4 (internal invariant
/// violation).
#[derive(Debug, Clone, ThisError)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) => 2,
            Error::Unsupported(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
