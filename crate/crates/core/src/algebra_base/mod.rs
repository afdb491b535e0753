//! Exact scalars, univariate polynomials over ℚ, factored ideals with
//! support arithmetic, and finite-dimensional truncated quotients of ℚ[t].
//!
//! Everything here is immutable after construction and all operations are
//! pure, so values can be shared freely across threads.

mod ideal;
mod poly;
mod scalar;

pub use ideal::{truncated_algebra, FactoredIdeal, FinDimCommAlgebra, IdealOp};
pub use poly::Polynomial;
pub use scalar::Scalar;
