//! Exact lattice arithmetic for cones of curves on irreducible holomorphic
//! symplectic manifolds of K3^[n] and generalized Kummer type.
//!
//! The linear algebra in [`linalg`] is generic over the scalar type; the
//! lattice, model and ray layers work over arbitrary-precision integers and
//! rationals through the aliases below.

pub mod fixtures;
pub mod format;
pub mod input;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod mukai;
pub mod rays;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Exact rational in lowest terms.
pub type Rat = BigRational;
pub type IntMatrix = linalg::Matrix<Int>;
pub type RatMatrix = linalg::Matrix<Rat>;

pub use lattice::{pair, ClassVector, LatticeEmbedding, LatticeError, QuadLattice};
pub use model::{build_model, constant_c, CStatus, DeformationType, HKModel, ModelError};
