//! Quadratic lattices with labeled bases, class vectors, embeddings,
//! saturation and divisibility.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::format::format_class;
use crate::linalg::{self, LinalgError};
use crate::{Int, IntMatrix, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("classes live on different lattices ({0} vs {1})")]
    LatticeMismatch(String, String),
    #[error("zero vector")]
    ZeroVector,
    #[error("class has non-integral coordinates")]
    NotIntegral,
    #[error("no multiple of the class lies in the span of the sublattice")]
    NotInRationalSpan,
    #[error("divisibility in the full H² requires the ambient-unimodular flag; only (x, N¹) = {0} is computable")]
    FlagRequired(Int),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("embedding does not preserve the form on basis pair ({0}, {1})")]
    IncompatibleEmbedding(String, String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite-rank lattice with a labeled basis and rational Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadLattice {
    name: String,
    labels: Vec<String>,
    gram: RatMatrix,
    ambient_unimodular: bool,
}

impl QuadLattice {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        gram: RatMatrix,
        ambient_unimodular: bool,
    ) -> Result<Arc<Self>, LatticeError> {
        if !gram.is_square() || gram.rows() != labels.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: labels.len(),
                found: gram.rows(),
            });
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(QuadLattice {
            name: name.into(),
            labels,
            gram,
            ambient_unimodular,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn ambient_unimodular(&self) -> bool {
        self.ambient_unimodular
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_integral(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.gram[(i, j)].is_integer()))
    }

    /// Integral with even diagonal.
    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.gram[(i, i)].to_integer().is_even())
    }
}

/// An element of a [`QuadLattice`] (or of its rational span) in basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassVector {
    lattice: Arc<QuadLattice>,
    coords: Vec<Rat>,
}

impl ClassVector {
    pub fn new(lattice: &Arc<QuadLattice>, coords: Vec<Rat>) -> Result<Self, LatticeError> {
        if coords.len() != lattice.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: lattice.rank(),
                found: coords.len(),
            });
        }
        Ok(ClassVector {
            lattice: Arc::clone(lattice),
            coords,
        })
    }

    pub fn from_ints(lattice: &Arc<QuadLattice>, coords: &[i64]) -> Result<Self, LatticeError> {
        Self::new(lattice, coords.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(lattice: &Arc<QuadLattice>, coords: &[Int]) -> Result<Self, LatticeError> {
        Self::new(lattice, coords.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    pub fn zero(lattice: &Arc<QuadLattice>) -> Self {
        ClassVector {
            lattice: Arc::clone(lattice),
            coords: vec![Rat::zero(); lattice.rank()],
        }
    }

    /// The basis vector with the given label.
    pub fn basis(lattice: &Arc<QuadLattice>, label: &str) -> Result<Self, LatticeError> {
        let idx = lattice
            .label_index(label)
            .ok_or_else(|| LatticeError::UnknownLabel(label.to_string()))?;
        let mut v = Self::zero(lattice);
        v.coords[idx] = Rat::one();
        Ok(v)
    }

    pub fn lattice(&self) -> &Arc<QuadLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, label: &str) -> Option<&Rat> {
        self.lattice.label_index(label).map(|i| &self.coords[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rat::is_integer)
    }

    pub fn int_coords(&self) -> Option<Vec<Int>> {
        self.is_integral()
            .then(|| self.coords.iter().map(Rat::to_integer).collect())
    }

    pub fn scaled(&self, k: &Rat) -> Self {
        ClassVector {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &ClassVector) -> Result<Self, LatticeError> {
        same_lattice(self, other)?;
        Ok(ClassVector {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &ClassVector) -> Result<Self, LatticeError> {
        self.add(&other.scaled(&-Rat::one()))
    }

    /// Self-pairing `(x, x)`.
    pub fn square(&self) -> Rat {
        self.lattice.gram.bilinear(&self.coords, &self.coords)
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_class(self.lattice.labels(), &self.coords))
    }
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lattice.name, self)
    }
}

fn same_lattice(x: &ClassVector, y: &ClassVector) -> Result<(), LatticeError> {
    if Arc::ptr_eq(&x.lattice, &y.lattice) || x.lattice == y.lattice {
        Ok(())
    } else {
        Err(LatticeError::LatticeMismatch(
            x.lattice.name.clone(),
            y.lattice.name.clone(),
        ))
    }
}

/// The form `xᵀ · gram · y`.
pub fn pair(x: &ClassVector, y: &ClassVector) -> Result<Rat, LatticeError> {
    same_lattice(x, y)?;
    Ok(x.lattice.gram.bilinear(&x.coords, &y.coords))
}

/// gcd of the coordinates of a nonzero integral class.
pub fn content(x: &ClassVector) -> Result<Int, LatticeError> {
    let ints = x.int_coords().ok_or(LatticeError::NotIntegral)?;
    if x.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(linalg::content(&ints))
}

pub fn is_primitive(x: &ClassVector) -> Result<bool, LatticeError> {
    Ok(content(x)?.is_one())
}

/// The primitive integral class on the ray through `x` (which may be rational).
pub fn primitive_on_ray(x: &ClassVector) -> Result<ClassVector, LatticeError> {
    if x.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let denom_lcm = x
        .coords
        .iter()
        .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let scaled = x.scaled(&Rat::from_integer(denom_lcm));
    let c = content(&scaled)?;
    Ok(scaled.scaled(&Rat::new(Int::one(), c)))
}

/// A form-preserving map from `source` into `target`.
///
/// Row `i` of `matrix` holds the target coordinates of source basis vector `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEmbedding {
    source: Arc<QuadLattice>,
    target: Arc<QuadLattice>,
    matrix: IntMatrix,
}

impl LatticeEmbedding {
    pub fn new(
        source: &Arc<QuadLattice>,
        target: &Arc<QuadLattice>,
        matrix: IntMatrix,
    ) -> Result<Self, LatticeError> {
        if matrix.rows() != source.rank() || matrix.cols() != target.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: source.rank() * target.rank(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        let emb = LatticeEmbedding {
            source: Arc::clone(source),
            target: Arc::clone(target),
            matrix,
        };
        emb.check_compatible()?;
        Ok(emb)
    }

    pub fn source(&self) -> &Arc<QuadLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QuadLattice> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    fn rat_matrix(&self) -> RatMatrix {
        linalg::to_ratio(&self.matrix)
    }

    /// Verifies `(x, y)_source = (emb x, emb y)_target` on all basis pairs.
    pub fn check_compatible(&self) -> Result<(), LatticeError> {
        let m = self.rat_matrix();
        let pulled = &(&m * self.target.gram()) * &m.transpose();
        for i in 0..self.source.rank() {
            for j in 0..self.source.rank() {
                if pulled[(i, j)] != self.source.gram[(i, j)] {
                    return Err(LatticeError::IncompatibleEmbedding(
                        self.source.labels[i].clone(),
                        self.source.labels[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &ClassVector) -> Result<ClassVector, LatticeError> {
        if !(Arc::ptr_eq(&x.lattice, &self.source) || *x.lattice == *self.source) {
            return Err(LatticeError::LatticeMismatch(
                x.lattice.name.clone(),
                self.source.name.clone(),
            ));
        }
        ClassVector::new(&self.target, self.rat_matrix().vec_mul(&x.coords))
    }

    /// Source coordinates of a target class lying in the rational span of the
    /// image, `None` otherwise.
    pub fn preimage(&self, x: &ClassVector) -> Result<Option<ClassVector>, LatticeError> {
        same_lattice(x, &ClassVector::zero(&self.target))?;
        match linalg::solve_left(&self.rat_matrix(), &x.coords)? {
            Some(y) => Ok(Some(ClassVector::new(&self.source, y)?)),
            None => Ok(None),
        }
    }
}

/// Smallest `t > 0` with `t·x` in the image of `emb`, together with the
/// preimage `ρ` of `t·x`. `(ρ, ρ) = t²·(x, x)` since the embedding is isometric.
pub fn saturate_to_sublattice(
    x: &ClassVector,
    emb: &LatticeEmbedding,
) -> Result<(Int, ClassVector), LatticeError> {
    if !x.is_integral() {
        return Err(LatticeError::NotIntegral);
    }
    if x.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let y = emb.preimage(x)?.ok_or(LatticeError::NotInRationalSpan)?;
    let t = y
        .coords
        .iter()
        .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let rho = y.scaled(&Rat::from_integer(t.clone()));
    Ok((t, rho))
}

/// Generator of `(x, L)` for the lattice `L` that `x` lives on: gcd of the
/// pairings of `x` with every basis vector.
pub fn picard_divisibility(x: &ClassVector) -> Result<Int, LatticeError> {
    if !x.is_integral() {
        return Err(LatticeError::NotIntegral);
    }
    if x.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let row = x.lattice.gram.vec_mul(&x.coords);
    if row.iter().any(|r| !r.is_integer()) {
        return Err(LatticeError::NotIntegral);
    }
    let ints: Vec<Int> = row.iter().map(Rat::to_integer).collect();
    Ok(linalg::content(&ints))
}

/// Generator of `(x, H)` where `H = A ⊕⊥ B` is the full lattice: the first
/// `ambient_block` basis vectors span a sublattice of `A` that is saturated in
/// the unimodular `A`, and the remaining basis vectors span `B` exactly.
///
/// Unimodularity gives `(x_A, A) = content(x_A)·ℤ`, so the answer is
/// `gcd(content(x_A), (x, b) for b in basis(B))`.
pub fn divisibility_ideal(x: &ClassVector, ambient_block: usize) -> Result<Int, LatticeError> {
    let picard = picard_divisibility(x)?;
    if !x.lattice.ambient_unimodular {
        return Err(LatticeError::FlagRequired(picard));
    }
    let ints = x.int_coords().ok_or(LatticeError::NotIntegral)?;
    let surface_content = linalg::content(&ints[..ambient_block]);
    let row = x.lattice.gram.vec_mul(&x.coords);
    let d = row[ambient_block..]
        .iter()
        .fold(surface_content, |g, r| g.gcd(&r.to_integer()));
    Ok(d.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn diag_lattice(name: &str, labels: &[&str], diag: &[Rat], flag: bool) -> Arc<QuadLattice> {
        QuadLattice::new(
            name,
            labels.iter().map(|s| s.to_string()).collect(),
            Matrix::diagonal(diag),
            flag,
        )
        .unwrap()
    }

    #[test]
    fn content_examples() {
        let l = diag_lattice("L", &["a", "b", "c"], &[rat(1, 1), rat(1, 1), rat(1, 1)], false);
        let two = diag_lattice("L2", &["a", "b"], &[rat(1, 1), rat(1, 1)], false);
        assert_eq!(content(&ClassVector::from_ints(&two, &[2, 4]).unwrap()).unwrap(), Int::from(2));
        assert_eq!(content(&ClassVector::from_ints(&two, &[1, -5]).unwrap()).unwrap(), Int::from(1));
        assert_eq!(content(&ClassVector::from_ints(&l, &[6, 10, 15]).unwrap()).unwrap(), Int::from(1));
        assert_eq!(content(&ClassVector::zero(&l)), Err(LatticeError::ZeroVector));
    }

    #[test]
    fn mismatch_and_label_errors() {
        let a = diag_lattice("A", &["x"], &[rat(2, 1)], false);
        let b = diag_lattice("B", &["x"], &[rat(4, 1)], false);
        let va = ClassVector::basis(&a, "x").unwrap();
        let vb = ClassVector::basis(&b, "x").unwrap();
        assert!(matches!(pair(&va, &vb), Err(LatticeError::LatticeMismatch(..))));
        assert!(matches!(ClassVector::basis(&a, "y"), Err(LatticeError::UnknownLabel(_))));
        let dup = QuadLattice::new("D", vec!["x".into(), "x".into()], Matrix::identity(2), false);
        assert!(matches!(dup, Err(LatticeError::DuplicateLabel(_))));
    }

    #[test]
    fn incompatible_embedding_rejected() {
        let a = diag_lattice("A", &["x"], &[rat(2, 1)], false);
        let b = diag_lattice("B", &["y"], &[rat(1, 1)], false);
        let m = Matrix::from_rows(vec![vec![Int::from(1)]], 1);
        assert!(matches!(
            LatticeEmbedding::new(&a, &b, m),
            Err(LatticeError::IncompatibleEmbedding(..))
        ));
    }

    #[test]
    fn flagless_divisibility_reports_picard_value() {
        let l = diag_lattice("L", &["f"], &[rat(4, 1)], false);
        let f = ClassVector::basis(&l, "f").unwrap();
        assert_eq!(divisibility_ideal(&f, 1), Err(LatticeError::FlagRequired(Int::from(4))));
        let flagged = diag_lattice("L", &["f"], &[rat(4, 1)], true);
        let f = ClassVector::basis(&flagged, "f").unwrap();
        assert_eq!(divisibility_ideal(&f, 1).unwrap(), Int::from(1));
    }

    #[test]
    fn primitive_on_ray_clears_denominators() {
        let l = diag_lattice("L", &["a", "b"], &[rat(1, 1), rat(1, 1)], false);
        let x = ClassVector::new(&l, vec![rat(2, 3), rat(-4, 3)]).unwrap();
        assert_eq!(primitive_on_ray(&x).unwrap(), ClassVector::from_ints(&l, &[1, -2]).unwrap());
    }
}
