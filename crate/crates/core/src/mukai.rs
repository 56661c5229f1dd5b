//! Algebraic Mukai lattice `H⁰ ⊕ N_S ⊕ H⁴` of a surface, Mukai vectors of
//! sheaves, and the period lattice `v⊥/ℤv` of a moduli space of sheaves.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{pair, ClassVector, LatticeError, QuadLattice};
use crate::linalg::{self, LinalgError, Matrix};
use crate::model::{build_model, int_gram, labels, DeformationType, ModelError, DELTA};
use crate::{Int, IntMatrix, Rat, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MukaiError {
    #[error("Mukai vector is not isotropic (<v,v> = {0})")]
    NotIsotropic(Int),
    #[error("Mukai vector is not primitive (content {0})")]
    NotPrimitive(Int),
    #[error("c1^2 = {0} is odd, so c1^2/2 is not an integer")]
    OddSquare(Int),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A Mukai vector `(r, D, s)`: rank, first Chern class on the surface's
/// algebraic lattice, and the `H⁴` coefficient `s = χ − r`.
#[derive(Clone, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: Int,
    pub d: ClassVector,
    pub s: Int,
}

impl MukaiVector {
    pub fn new(r: impl Into<Int>, d: ClassVector, s: impl Into<Int>) -> Result<Self, MukaiError> {
        if !d.is_integral() {
            return Err(LatticeError::NotIntegral.into());
        }
        Ok(MukaiVector {
            r: r.into(),
            d,
            s: s.into(),
        })
    }

    /// Parses `r,d₁,…,d_k,s` against a surface lattice of rank `k`.
    pub fn from_ints(surface: &Arc<QuadLattice>, v: &[i64]) -> Result<Self, MukaiError> {
        let k = surface.rank();
        if v.len() != k + 2 {
            return Err(LatticeError::DimensionMismatch {
                expected: k + 2,
                found: v.len(),
            }
            .into());
        }
        let d = ClassVector::from_ints(surface, &v[1..=k])?;
        MukaiVector::new(v[0], d, v[k + 1])
    }

    /// `χ = r + s`.
    pub fn euler_char(&self) -> Int {
        &self.r + &self.s
    }

    /// Coordinates in the total basis `(1, surface basis…, p)`.
    pub fn total_coords(&self) -> Vec<Int> {
        let mut out = Vec::with_capacity(self.d.coords().len() + 2);
        out.push(self.r.clone());
        out.extend(self.d.int_coords().expect("Mukai vectors are integral"));
        out.push(self.s.clone());
        out
    }

    pub fn is_primitive(&self) -> bool {
        linalg::content(&self.total_coords()).is_one()
    }

    /// `gcd(r, s, A·c₁) = 1`, the coprimality condition for compactness of
    /// moduli of `A`-stable sheaves.
    pub fn is_coprime_with(&self, a: &ClassVector) -> Result<bool, MukaiError> {
        let ad = pair(a, &self.d)?;
        if !ad.is_integer() {
            return Err(LatticeError::NotIntegral.into());
        }
        Ok(self.r.gcd(&self.s).gcd(&ad.to_integer()).is_one())
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.d, self.s)
    }
}

impl fmt::Debug for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `⟨(r₁,D₁,s₁),(r₂,D₂,s₂)⟩ = D₁·D₂ − r₁s₂ − r₂s₁`.
pub fn mukai_pair(v: &MukaiVector, w: &MukaiVector) -> Result<Int, MukaiError> {
    let dd = pair(&v.d, &w.d)?;
    if !dd.is_integer() {
        return Err(LatticeError::NotIntegral.into());
    }
    Ok(dd.to_integer() - &v.r * &w.s - &w.r * &v.s)
}

/// `v = (r, c₁, c₁²/2 − c₂ + r)`.
pub fn mukai_vector_from_chern(r: impl Into<Int>, c1: ClassVector, c2: impl Into<Int>) -> Result<MukaiVector, MukaiError> {
    let r = r.into();
    let sq = c1.square();
    if !sq.is_integer() {
        return Err(LatticeError::NotIntegral.into());
    }
    let sq = sq.to_integer();
    if sq.is_odd() {
        return Err(MukaiError::OddSquare(sq));
    }
    let s = sq / Int::from(2) - c2.into() + &r;
    MukaiVector::new(r, c1, s)
}

/// `χ(E, F) = −⟨v(E), v(F)⟩`.
pub fn euler_pairing(v: &MukaiVector, w: &MukaiVector) -> Result<Int, MukaiError> {
    Ok(-mukai_pair(v, w)?)
}

/// Dimension `⟨v,v⟩ + 2` of the moduli space of simple sheaves with vector `v`.
pub fn moduli_dimension(v: &MukaiVector) -> Result<Int, MukaiError> {
    Ok(mukai_pair(v, v)? + Int::from(2))
}

/// Gram matrix of the algebraic Mukai lattice in the basis `(1, surface…, p)`.
pub fn mukai_gram(surface: &QuadLattice) -> RatMatrix {
    let k = surface.rank();
    let n = k + 2;
    Matrix::from_fn(n, n, |i, j| {
        if (i == 0 && j == n - 1) || (i == n - 1 && j == 0) {
            -Rat::one()
        } else if (1..=k).contains(&i) && (1..=k).contains(&j) {
            surface.gram()[(i - 1, j - 1)].clone()
        } else {
            Rat::zero()
        }
    })
}

/// `H²(M, ℤ)` (algebraic part) for a primitive isotropic `v`: the lattice
/// `v⊥/ℤv` with its induced form.
pub fn period_lattice(v: &MukaiVector) -> Result<Arc<QuadLattice>, MukaiError> {
    Ok(period_quotient(v)?.0)
}

/// [`period_lattice`] together with representatives (total Mukai
/// coordinates) of the quotient basis.
pub fn period_quotient(v: &MukaiVector) -> Result<(Arc<QuadLattice>, IntMatrix), MukaiError> {
    let perp = orthogonal_complement(v)?;
    quotient_by_isotropic(v, &perp)
}

/// Saturated basis of `v⊥` in total coordinates, rows in Hermite normal form.
pub fn orthogonal_complement(v: &MukaiVector) -> Result<IntMatrix, MukaiError> {
    let surface = v.d.lattice();
    let gram = mukai_gram(surface);
    let w: Vec<Rat> = v.total_coords().into_iter().map(Rat::from_integer).collect();
    let functional: Vec<Int> = gram.mul_vec(&w).iter().map(Rat::to_integer).collect();
    let n = functional.len();
    let rows = linalg::kernel_basis(&Matrix::from_rows(vec![functional], n));
    Ok(Matrix::from_rows(rows, n))
}

/// Quotient of the lattice spanned by the rows of `perp` (which must contain
/// `v` and be orthogonal to it) by `ℤv`.
pub fn quotient_by_isotropic(
    v: &MukaiVector,
    perp: &IntMatrix,
) -> Result<(Arc<QuadLattice>, IntMatrix), MukaiError> {
    let total = v.total_coords();
    let c = linalg::content(&total);
    if !c.is_one() {
        return Err(MukaiError::NotPrimitive(c));
    }
    let sq = mukai_pair(v, v)?;
    if !sq.is_zero() {
        return Err(MukaiError::NotIsotropic(sq));
    }
    let surface = v.d.lattice();
    let gram = mukai_gram(surface);

    let perp_q = linalg::to_ratio(perp);
    let target: Vec<Rat> = total.iter().cloned().map(Rat::from_integer).collect();
    let coeffs = linalg::solve_left(&perp_q, &target)?
        .filter(|c| c.iter().all(Rat::is_integer))
        .ok_or(LatticeError::NotInRationalSpan)?;
    let coeffs: Vec<Int> = coeffs.iter().map(Rat::to_integer).collect();
    // v is primitive in the saturated v⊥, so its coordinates complete to a basis.
    let change = linalg::complete_to_basis(&coeffs).ok_or(MukaiError::NotPrimitive(linalg::content(&coeffs)))?;
    let new_basis = &change * perp;
    debug_assert_eq!(new_basis.row(0), &total[..]);

    let idx: Vec<usize> = (1..new_basis.rows()).collect();
    let reps = new_basis.select_rows(&idx);
    let reps_q = linalg::to_ratio(&reps);
    let induced = &(&reps_q * &gram) * &reps_q.transpose();
    let names: Vec<String> = (1..=reps.rows()).map(|i| format!("u{i}")).collect();
    let lattice = QuadLattice::new(format!("v_perp/Zv for v={v}"), names, induced, surface.ambient_unimodular())?;
    Ok((lattice, reps))
}

/// One row of [`fm_fixture_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmCheck {
    pub r: u32,
    pub degree: Int,
    pub isotropic: bool,
    pub primitive: bool,
    pub delta_prime_square: Rat,
    pub delta_prime_divisibility: Int,
    pub period_degree: Option<Rat>,
}

impl FmCheck {
    pub fn passed(&self) -> bool {
        self.isotropic
            && self.primitive
            && self.delta_prime_square == Rat::from_integer(Int::from(-2))
            && self.delta_prime_divisibility == Int::from(2)
            && self.period_degree == Some(Rat::from_integer(self.degree.clone()))
    }
}

/// For `r = 1..=max_r` on a K3 surface of degree `2(r²+r)`: `v = (r, f, r+1)`
/// is primitive and isotropic with period lattice of the same degree, and on
/// `S^[2]` the class `δ′ = 2f − (2r+1)δ` has square −2 and divisibility 2.
pub fn fm_fixture_check(max_r: u32) -> Result<Vec<FmCheck>, ModelError> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        let degree = 2 * (i64::from(r) * i64::from(r) + i64::from(r));
        let surface = QuadLattice::new("N_S", labels(&["f"]), int_gram(&[&[degree]]), true)?;
        let f = ClassVector::basis(&surface, "f")?;
        let v = MukaiVector::new(r, f, r + 1).expect("integral");
        let isotropic = mukai_pair(&v, &v).map(|x| x.is_zero()).unwrap_or(false);
        let primitive = v.is_primitive();
        let period_degree = period_lattice(&v).ok().map(|l| l.gram()[(0, 0)].clone());

        let model = build_model(
            DeformationType::HilbK3 { n: 2 },
            &int_gram(&[&[degree]]),
            &labels(&["f"]),
            &[Int::one()],
            true,
        )?;
        let f = ClassVector::basis(model.divisors(), "f")?;
        let delta = ClassVector::basis(model.divisors(), DELTA)?;
        let two_r_plus_one = Rat::from_integer(Int::from(2 * r + 1));
        let delta_prime = f.scaled(&Rat::from_integer(2.into())).sub(&delta.scaled(&two_r_plus_one))?;
        out.push(FmCheck {
            r,
            degree: Int::from(degree),
            isotropic,
            primitive,
            delta_prime_square: delta_prime.square(),
            delta_prime_divisibility: model.divisibility(&delta_prime)?.value().clone(),
            period_degree,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(deg: i64) -> Arc<QuadLattice> {
        QuadLattice::new("S", labels(&["f"]), int_gram(&[&[deg]]), true).unwrap()
    }

    fn v(s: &Arc<QuadLattice>, xs: &[i64]) -> MukaiVector {
        MukaiVector::from_ints(s, xs).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let s = surface(4);
        let ideal = MukaiVector::new(1, ClassVector::zero(&s), -1).unwrap();
        assert_eq!(mukai_pair(&ideal, &ideal).unwrap(), Int::from(2));
        for n in 3..=10i64 {
            let iso = v(&surface(4 * n - 8), &[2, 1, n - 2]);
            assert_eq!(mukai_pair(&iso, &iso).unwrap(), Int::zero());
            let rigid = v(&surface(4 * n - 6), &[2, 1, n - 1]);
            assert_eq!(mukai_pair(&rigid, &rigid).unwrap(), Int::from(-2));
            assert_eq!(euler_pairing(&rigid, &rigid).unwrap(), Int::from(2));
        }
    }

    #[test]
    fn chern_to_mukai() {
        let s6 = surface(6);
        let v6 = mukai_vector_from_chern(2, ClassVector::basis(&s6, "f").unwrap(), 4).unwrap();
        assert_eq!(v6, v(&s6, &[2, 1, 1]));
        assert_eq!(v6.euler_char(), Int::from(3));

        let s16 = surface(16);
        let v16 = mukai_vector_from_chern(2, ClassVector::basis(&s16, "f").unwrap(), 6).unwrap();
        assert_eq!(v16, v(&s16, &[2, 1, 4]));
        assert_eq!(v16.euler_char(), Int::from(6));

        let ideal = mukai_vector_from_chern(1, ClassVector::zero(&s6), 2).unwrap();
        assert_eq!(ideal, v(&s6, &[1, 0, -1]));
    }

    #[test]
    fn odd_square_rejected() {
        let odd = QuadLattice::new("odd", labels(&["x"]), int_gram(&[&[3]]), false).unwrap();
        let x = ClassVector::basis(&odd, "x").unwrap();
        assert_eq!(mukai_vector_from_chern(1, x, 0), Err(MukaiError::OddSquare(Int::from(3))));
    }

    #[test]
    fn dimensions() {
        for n in 3..=10i64 {
            assert_eq!(moduli_dimension(&v(&surface(4 * n - 10), &[2, 1, n - 3])).unwrap(), Int::from(4));
            assert_eq!(moduli_dimension(&v(&surface(4 * n - 6), &[2, 1, n - 1])).unwrap(), Int::zero());
        }
        assert_eq!(moduli_dimension(&v(&surface(2), &[1, 0, -1])).unwrap(), Int::from(4));
    }

    #[test]
    fn period_lattices() {
        let l = period_lattice(&v(&surface(4), &[1, 1, 2])).unwrap();
        assert_eq!(l.gram(), &int_gram(&[&[4]]));
        let l = period_lattice(&v(&surface(12), &[2, 1, 3])).unwrap();
        assert_eq!(l.gram(), &int_gram(&[&[12]]));
        let two = QuadLattice::new("U", labels(&["a", "b"]), int_gram(&[&[0, 1], &[1, -2]]), true).unwrap();
        let l = period_lattice(&v(&surface(6), &[0, 0, 1])).unwrap();
        assert_eq!(l.gram(), &int_gram(&[&[6]]));
        // Rank two: same lattice up to a change of basis.
        let l = period_lattice(&v(&two, &[0, 0, 0, 1])).unwrap();
        let ints = |m: &RatMatrix| m.map(Rat::to_integer);
        assert_eq!(linalg::determinant(&ints(l.gram())), linalg::determinant(&ints(two.gram())));
        assert_eq!(linalg::smith_normal_form(&ints(l.gram())).0, linalg::smith_normal_form(&ints(two.gram())).0);
    }

    #[test]
    fn period_preconditions() {
        assert!(matches!(period_lattice(&v(&surface(4), &[1, 0, -1])), Err(MukaiError::NotIsotropic(_))));
        assert!(matches!(period_lattice(&v(&surface(4), &[2, 2, 4])), Err(MukaiError::NotPrimitive(_))));
    }

    #[test]
    fn coprimality_helper() {
        let s = surface(4);
        let f = ClassVector::basis(&s, "f").unwrap();
        assert!(v(&s, &[2, 1, 1]).is_coprime_with(&f).unwrap());
        assert!(!v(&s, &[2, 1, 2]).is_coprime_with(&f).unwrap());
    }
}
