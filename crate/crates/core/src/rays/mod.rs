//! Curve classes on a model: invariants, candidate enumeration, and the two
//! cone questions (is a divisor ample, is a curve class in the cone).

mod classify;
mod cone;
mod enumerate;

use thiserror::Error;

pub use classify::{
    classify_ray, divisorial_bound_check, effective_divisor_position, k_bucket, markman_filter, markman_square,
    DivisorPosition, MarkmanBranch, MarkmanVerdict, RayReport,
};
pub use cone::{ample_certify, cone_membership, AmpleVerdict, ConeStatus, ConeVerdict};
pub use enumerate::{enumerate_classes, enumerate_ray_candidates};

use crate::lattice::LatticeError;
use crate::linalg::LinalgError;
use crate::model::{DeformationType, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    #[error("class {0} has degree zero against the polarization")]
    ZeroDegree(String),
    #[error("not defined for {0}")]
    WrongDeformationType(DeformationType),
    #[error("class {0} is not primitive")]
    NotPrimitive(String),
    #[error("class lives on {0}, expected the curve lattice")]
    NotOnCurveLattice(String),
    #[error("class lives on {0}, expected the divisor lattice")]
    NotOnDivisorLattice(String),
    #[error("the orthogonal complement of the polarization is not negative definite")]
    IndefinitePerp,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
