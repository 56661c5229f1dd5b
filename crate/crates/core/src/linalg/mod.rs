//! Exact integer and rational linear algebra.
//!
//! Everything here is generic over the scalar: integer routines accept any
//! `Integer + Signed` type (`i64`, `BigInt`, ...), field routines any exact
//! ordered field (`Rational64`, `BigRational`, ...). There is no floating point.

mod feasibility;
mod field;
mod integer;
mod matrix;
mod shortvec;

use num_integer::Integer;
use num_traits::{Num, Signed};
use thiserror::Error;

pub use feasibility::{rational_feasibility, separates, separating_functional, Feasibility};
pub use field::{inverse, rational_cholesky, recompose_cholesky, solve_left, solve_right};
pub use integer::{
    complete_to_basis, content, hermite_normal_form, kernel_basis, smith_normal_form,
    unimodular_inverse,
};
pub use matrix::{determinant, dot, to_ratio, Matrix};
pub use shortvec::ellipsoid_points;

/// Exact integers usable by the normal-form routines.
pub trait ExactInt: Integer + Signed + Clone {}
impl<T: Integer + Signed + Clone> ExactInt for T {}

/// Exact ordered fields usable by elimination, Cholesky and the simplex.
pub trait ExactField: Num + Signed + PartialOrd + Clone {}
impl<T: Num + Signed + PartialOrd + Clone> ExactField for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not positive definite (leading minor {minor} is not positive)")]
    NotPositiveDefinite { minor: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
