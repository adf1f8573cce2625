//! Exact scalar arithmetic and dense linear algebra over ℚ and 𝔽_p.
//!
//! No floating point is used anywhere: rank and vanishing decisions must be
//! exact for the set-theoretic statements built on top of them.

mod matrix;
mod scalar;

pub use matrix::{mat_rank_kernel, row_reduced_basis, solve_membership, Echelon, Matrix};
pub use scalar::{Field, Scalar, MAX_MODULUS};
