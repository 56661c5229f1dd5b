//! Lattice models of polarized holomorphic symplectic manifolds of K3, K3^[n]
//! and generalized Kummer type.
//!
//! A model carries the divisor lattice `N¹ = N_S ⊕⊥ ℤδ` (resp. `ℤe`), the curve
//! lattice `N₁ = N_S ⊕⊥ ℤδ∨` (resp. `ℤe∨`), the isometric embedding
//! `N¹ ↪ N₁` given by the form, a polarization `g ∈ N¹`, and the constant `c_X`
//! bounding squares of extremal rays.
//!
//! Sign convention: `δ ↦ 2(n−1)·δ∨` and `e ↦ 2(n+1)·e∨`, so `δ·δ∨ = e·e∨ = −1`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    self, divisibility_ideal, pair, ClassVector, LatticeEmbedding, LatticeError, QuadLattice,
};
use crate::linalg::Matrix;
use crate::{Int, IntMatrix, Rat, RatMatrix};

pub const DELTA: &str = "delta";
pub const DELTA_DUAL: &str = "delta_v";
pub const KUMMER_E: &str = "e";
pub const KUMMER_E_DUAL: &str = "e_v";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("surface lattice must be integral and even (diagonal entry {0} is not an even integer)")]
    NotEven(String),
    #[error("polarization has (g,g) = {0}, which is not positive")]
    NotPolarized(String),
    #[error("rank mismatch: {0}")]
    BadRank(String),
    #[error("invalid deformation type: {0}")]
    BadType(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeformationType {
    K3Surface,
    HilbK3 { n: u32 },
    Kummer { n: u32 },
}

impl DeformationType {
    pub fn hilb(n: u32) -> Result<Self, ModelError> {
        if n < 2 {
            return Err(ModelError::BadType(format!("K3^[n] needs n ≥ 2, got {n}")));
        }
        Ok(DeformationType::HilbK3 { n })
    }

    pub fn kummer(n: u32) -> Result<Self, ModelError> {
        if n < 2 {
            return Err(ModelError::BadType(format!("Kummer needs n ≥ 2, got {n}")));
        }
        Ok(DeformationType::Kummer { n })
    }

    /// Half the complex dimension (1 for a K3 surface).
    pub fn n(&self) -> u32 {
        match *self {
            DeformationType::K3Surface => 1,
            DeformationType::HilbK3 { n } | DeformationType::Kummer { n } => n,
        }
    }

    /// `−(δ,δ)` resp. `−(e,e)`: the scale of the embedding on the extra slot.
    pub fn slot_scale(&self) -> Option<u32> {
        match *self {
            DeformationType::K3Surface => None,
            DeformationType::HilbK3 { n } => Some(2 * (n - 1)),
            DeformationType::Kummer { n } => Some(2 * (n + 1)),
        }
    }

    /// Labels of the extra basis vector on `N¹` and `N₁`.
    pub fn slot_labels(&self) -> Option<(&'static str, &'static str)> {
        match self {
            DeformationType::K3Surface => None,
            DeformationType::HilbK3 { .. } => Some((DELTA, DELTA_DUAL)),
            DeformationType::Kummer { .. } => Some((KUMMER_E, KUMMER_E_DUAL)),
        }
    }
}

impl fmt::Display for DeformationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeformationType::K3Surface => write!(f, "K3"),
            DeformationType::HilbK3 { n } => write!(f, "K3^[{n}]"),
            DeformationType::Kummer { n } => write!(f, "K_{n}(A)"),
        }
    }
}

/// How firmly the constant `c_X` is established for a deformation type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CStatus {
    Proven,
    Conjectural,
    Tentative,
}

impl fmt::Display for CStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CStatus::Proven => "proven",
            CStatus::Conjectural => "conjectural",
            CStatus::Tentative => "tentative",
        };
        f.write_str(s)
    }
}

/// `c_X` and its status: 2 for K3 surfaces, `(n+3)/2` for K3^[n], `3/2` for
/// `K₂(A)` and tentatively `(n+1)/2` for `K_n(A)`, `n ≥ 3`.
pub fn constant_c(dtype: DeformationType) -> (Rat, CStatus) {
    match dtype {
        DeformationType::K3Surface => (Rat::from_integer(2.into()), CStatus::Proven),
        DeformationType::HilbK3 { n } => (Rat::new((n + 3).into(), 2.into()), CStatus::Conjectural),
        DeformationType::Kummer { n: 2 } => (Rat::new(3.into(), 2.into()), CStatus::Conjectural),
        DeformationType::Kummer { n } => (Rat::new((n + 1).into(), 2.into()), CStatus::Tentative),
    }
}

/// `(ℓ, ℓ) = −c_X` for the line class of a Lagrangian `Pⁿ`.
pub fn lagrangian_line_square(dtype: DeformationType) -> Rat {
    -constant_c(dtype).0
}

/// Whether `(x, H²)` can be computed exactly or only `(x, N¹)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Divisibility {
    Ambient(Int),
    PicardOnly(Int),
}

impl Divisibility {
    pub fn value(&self) -> &Int {
        match self {
            Divisibility::Ambient(d) | Divisibility::PicardOnly(d) => d,
        }
    }
}

impl fmt::Display for Divisibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divisibility::Ambient(d) => write!(f, "{d}"),
            Divisibility::PicardOnly(d) => write!(f, "{d} (N1 only)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HKModel {
    dtype: DeformationType,
    surface_rank: usize,
    divisors: Arc<QuadLattice>,
    curves: Arc<QuadLattice>,
    embedding: LatticeEmbedding,
    polarization: ClassVector,
    c: Rat,
    c_status: CStatus,
}

/// Builds a model from the Picard lattice of the underlying surface.
///
/// `g_coords` may cover only the surface block (the slot coordinate is then
/// zero) or the whole divisor lattice.
pub fn build_model(
    dtype: DeformationType,
    surface_gram: &RatMatrix,
    surface_labels: &[String],
    g_coords: &[Int],
    ambient_unimodular: bool,
) -> Result<HKModel, ModelError> {
    let k = surface_labels.len();
    if !surface_gram.is_square() || surface_gram.rows() != k {
        return Err(ModelError::BadRank(format!(
            "{} labels for a {}x{} gram matrix",
            k,
            surface_gram.rows(),
            surface_gram.cols()
        )));
    }
    if let DeformationType::HilbK3 { n } | DeformationType::Kummer { n } = dtype {
        if n < 2 {
            return Err(ModelError::BadType(format!("{dtype} needs n ≥ 2")));
        }
    }
    let surface = QuadLattice::new("N_S", surface_labels.to_vec(), surface_gram.clone(), ambient_unimodular)?;
    if let Some(i) = (0..k).find(|&i| {
        let d = &surface_gram[(i, i)];
        !d.is_integer() || !(d.to_integer() % Int::from(2)).is_zero()
    }) {
        return Err(ModelError::NotEven(crate::format::format_rat(&surface_gram[(i, i)])));
    }
    if !surface.is_integral() {
        return Err(ModelError::NotEven("off-diagonal entry is not integral".into()));
    }

    let (divisors, curves, emb_matrix) = match (dtype.slot_scale(), dtype.slot_labels()) {
        (Some(scale), Some((div_label, cur_label))) => {
            let scale_q = Rat::from_integer(scale.into());
            let mut div_labels = surface_labels.to_vec();
            div_labels.push(div_label.to_string());
            let mut cur_labels = surface_labels.to_vec();
            cur_labels.push(cur_label.to_string());
            let div_gram = block_diag(surface_gram, -scale_q.clone());
            let cur_gram = block_diag(surface_gram, -Rat::one() / scale_q);
            let divisors = QuadLattice::new(format!("N1({dtype})"), div_labels, div_gram, ambient_unimodular)?;
            let curves = QuadLattice::new(format!("N_1({dtype})"), cur_labels, cur_gram, ambient_unimodular)?;
            let m = Matrix::from_fn(k + 1, k + 1, |i, j| {
                if i != j {
                    Int::zero()
                } else if i == k {
                    Int::from(scale)
                } else {
                    Int::one()
                }
            });
            (divisors, curves, m)
        }
        _ => {
            let divisors = QuadLattice::new("N1(K3)", surface_labels.to_vec(), surface_gram.clone(), ambient_unimodular)?;
            let curves = QuadLattice::new("N_1(K3)", surface_labels.to_vec(), surface_gram.clone(), ambient_unimodular)?;
            (divisors, curves, IntMatrix::identity(k))
        }
    };
    let embedding = LatticeEmbedding::new(&divisors, &curves, emb_matrix)?;

    let mut g = g_coords.to_vec();
    if g.len() == k && divisors.rank() == k + 1 {
        g.push(Int::zero());
    }
    if g.len() != divisors.rank() {
        return Err(ModelError::BadRank(format!(
            "polarization has {} coordinates, divisor lattice has rank {}",
            g_coords.len(),
            divisors.rank()
        )));
    }
    let polarization = ClassVector::from_bigints(&divisors, &g)?;
    let gg = polarization.square();
    if !gg.is_positive() {
        return Err(ModelError::NotPolarized(crate::format::format_rat(&gg)));
    }
    let (c, c_status) = constant_c(dtype);
    Ok(HKModel {
        dtype,
        surface_rank: k,
        divisors,
        curves,
        embedding,
        polarization,
        c,
        c_status,
    })
}

fn block_diag(surface: &RatMatrix, last: Rat) -> RatMatrix {
    let k = surface.rows();
    Matrix::from_fn(k + 1, k + 1, |i, j| {
        if i < k && j < k {
            surface[(i, j)].clone()
        } else if i == k && j == k {
            last.clone()
        } else {
            Rat::zero()
        }
    })
}

impl HKModel {
    pub fn dtype(&self) -> DeformationType {
        self.dtype
    }

    pub fn n(&self) -> u32 {
        self.dtype.n()
    }

    pub fn surface_rank(&self) -> usize {
        self.surface_rank
    }

    /// `N¹`, the divisor lattice.
    pub fn divisors(&self) -> &Arc<QuadLattice> {
        &self.divisors
    }

    /// `N₁`, the curve lattice.
    pub fn curves(&self) -> &Arc<QuadLattice> {
        &self.curves
    }

    pub fn embedding(&self) -> &LatticeEmbedding {
        &self.embedding
    }

    pub fn polarization(&self) -> &ClassVector {
        &self.polarization
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn c_status(&self) -> CStatus {
        self.c_status
    }

    pub fn divisor(&self, coords: &[i64]) -> Result<ClassVector, ModelError> {
        Ok(ClassVector::from_ints(&self.divisors, coords)?)
    }

    pub fn curve(&self, coords: &[i64]) -> Result<ClassVector, ModelError> {
        Ok(ClassVector::from_ints(&self.curves, coords)?)
    }

    /// `δ` (resp. `e`) on `N¹`.
    pub fn slot_divisor(&self) -> Option<ClassVector> {
        let (d, _) = self.dtype.slot_labels()?;
        ClassVector::basis(&self.divisors, d).ok()
    }

    /// `δ∨` (resp. `e∨`) on `N₁`.
    pub fn slot_curve(&self) -> Option<ClassVector> {
        let (_, c) = self.dtype.slot_labels()?;
        ClassVector::basis(&self.curves, c).ok()
    }

    /// Pushes a divisor class into `N₁`.
    pub fn to_curves(&self, d: &ClassVector) -> Result<ClassVector, ModelError> {
        Ok(self.embedding.apply(d)?)
    }

    /// `D · C` for `D ∈ N¹` and `C ∈ N₁`.
    pub fn intersect(&self, d: &ClassVector, c: &ClassVector) -> Result<Rat, ModelError> {
        Ok(pair(&self.to_curves(d)?, c)?)
    }

    /// `R · g` for a curve class `R`.
    pub fn degree(&self, r: &ClassVector) -> Result<Rat, ModelError> {
        self.intersect(&self.polarization, r)
    }

    /// `g` as a curve class.
    pub fn polarization_curve(&self) -> ClassVector {
        self.embedding
            .apply(&self.polarization)
            .expect("polarization lives on N¹")
    }

    /// Smallest `t` with `t·R ∈ N¹`, and `ρ = t·R` as a divisor class.
    pub fn saturate(&self, r: &ClassVector) -> Result<(Int, ClassVector), ModelError> {
        Ok(lattice::saturate_to_sublattice(r, &self.embedding)?)
    }

    /// `(x, H²(X, ℤ))` when the surface block is declared saturated in a
    /// unimodular lattice, `(x, N¹)` otherwise.
    pub fn divisibility(&self, x: &ClassVector) -> Result<Divisibility, ModelError> {
        match divisibility_ideal(x, self.surface_rank) {
            Ok(d) => Ok(Divisibility::Ambient(d)),
            Err(LatticeError::FlagRequired(d)) => Ok(Divisibility::PicardOnly(d)),
            Err(e) => Err(e.into()),
        }
    }
}

/// Gram matrix from integer rows.
pub fn int_gram(rows: &[&[i64]]) -> RatMatrix {
    let k = rows.len();
    Matrix::from_fn(k, k, |i, j| Rat::from_integer(rows[i][j].into()))
}

pub fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

/// Model over a rank-one surface lattice `⟨degree⟩ = ℤf`, polarized by `f`,
/// with `f` primitive in the unimodular K3 (or abelian) lattice.
pub fn rank_one_model(dtype: DeformationType, degree: i64) -> Result<HKModel, ModelError> {
    build_model(dtype, &int_gram(&[&[degree]]), &labels(&["f"]), &ints(&[1]), true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn k3_surface_model() {
        let m = build_model(DeformationType::K3Surface, &int_gram(&[&[2]]), &labels(&["h"]), &ints(&[1]), true).unwrap();
        assert_eq!(m.divisors().gram(), &int_gram(&[&[2]]));
        assert_eq!(m.curves().gram(), &int_gram(&[&[2]]));
        assert_eq!(m.c(), &rat(2, 1));
        assert_eq!(m.c_status(), CStatus::Proven);
    }

    #[test]
    fn hilb_two_over_degree_ten() {
        let m = rank_one_model(DeformationType::hilb(2).unwrap(), 10).unwrap();
        assert_eq!(m.divisors().gram(), &Matrix::diagonal(&[rat(10, 1), rat(-2, 1)]));
        assert_eq!(m.curves().gram(), &Matrix::diagonal(&[rat(10, 1), rat(-1, 2)]));
        let delta = m.slot_divisor().unwrap();
        let dv = m.slot_curve().unwrap();
        assert_eq!(m.intersect(&delta, &dv).unwrap(), rat(-1, 1));
    }

    #[test]
    fn kummer_two_over_principal_polarization() {
        let m = build_model(DeformationType::kummer(2).unwrap(), &int_gram(&[&[2]]), &labels(&["Theta"]), &ints(&[1]), true).unwrap();
        assert_eq!(m.divisors().gram(), &Matrix::diagonal(&[rat(2, 1), rat(-6, 1)]));
        assert_eq!(m.c(), &rat(3, 2));
    }

    #[test]
    fn constants() {
        assert_eq!(constant_c(DeformationType::HilbK3 { n: 2 }).0, rat(5, 2));
        assert_eq!(constant_c(DeformationType::HilbK3 { n: 4 }).0, rat(7, 2));
        assert_eq!(constant_c(DeformationType::Kummer { n: 2 }), (rat(3, 2), CStatus::Conjectural));
        assert_eq!(constant_c(DeformationType::Kummer { n: 5 }), (rat(3, 1), CStatus::Tentative));
        assert_eq!(lagrangian_line_square(DeformationType::HilbK3 { n: 3 }), rat(-3, 1));
    }

    #[test]
    fn construction_errors() {
        let odd = build_model(DeformationType::K3Surface, &int_gram(&[&[3]]), &labels(&["h"]), &ints(&[1]), true);
        assert!(matches!(odd, Err(ModelError::NotEven(_))));
        let neg = build_model(DeformationType::HilbK3 { n: 2 }, &int_gram(&[&[-2]]), &labels(&["E"]), &ints(&[1]), true);
        assert!(matches!(neg, Err(ModelError::NotPolarized(_))));
        let rank = build_model(DeformationType::HilbK3 { n: 2 }, &int_gram(&[&[2]]), &labels(&["f", "g"]), &ints(&[1]), true);
        assert!(matches!(rank, Err(ModelError::BadRank(_))));
        assert!(DeformationType::hilb(1).is_err());
        let clash = build_model(DeformationType::HilbK3 { n: 2 }, &int_gram(&[&[2]]), &labels(&["delta"]), &ints(&[1]), true);
        assert!(matches!(clash, Err(ModelError::Lattice(LatticeError::DuplicateLabel(_)))));
    }
}
