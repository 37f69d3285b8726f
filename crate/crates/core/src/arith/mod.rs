//! Exact integer and rational linear algebra.
//!
//! Nothing here touches floating point: correctness of circuits and cone
//! membership downstream relies on exact zero tests.

mod elim;
pub mod lp;
mod matrix;

pub use elim::{
    det, full_row_rank_form, gcd_of_maximal_minors, integer_kernel_basis, rank, reduce_on_basis,
    reduce_on_basis_scaled, row_echelon, rref, same_rowspace, solve_unique, Echelon,
};
pub use matrix::{IntMat, RatMat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("the selected columns are linearly dependent")]
    SingularBasis,
    #[error("expected {expected} basis columns, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
