use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{classify_ray, RayError, RayReport};
use crate::lattice::ClassVector;
use crate::linalg::{ellipsoid_points, hermite_normal_form, inverse, kernel_basis, rational_cholesky, Matrix};
use crate::model::HKModel;
use crate::{Int, Rat, RatMatrix};

/// Every integral curve class `C` with `0 < C·g ≤ max_degree` and `(C,C) ≥ floor`,
/// sorted by degree and then lexicographically by coordinates.
///
/// Each degree slice is an affine lattice `R₀ + K` with `K` the integral
/// kernel of `· g`, on which the form is negative definite; the condition
/// `(C,C) ≥ floor` cuts out an ellipsoid there.
pub fn enumerate_classes(model: &HKModel, max_degree: u64, floor: &Rat) -> Result<Vec<ClassVector>, RayError> {
    let curves = model.curves();
    let rank = curves.rank();
    let gram = curves.gram();
    let g = model.polarization_curve();
    let gamma = gram.mul_vec(g.coords());
    // Clear denominators so that C·g = d becomes an integral equation.
    let scale = gamma.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let gamma_int: Vec<Int> = gamma.iter().map(|x| (x * Rat::from_integer(scale.clone())).to_integer()).collect();

    let column = Matrix::from_fn(rank, 1, |i, _| gamma_int[i].clone());
    let (h, u) = hermite_normal_form(&column);
    let step = h[(0, 0)].clone();
    let particular = u.row(0).to_vec();

    let kernel = kernel_basis(&Matrix::from_rows(vec![gamma_int], rank));
    let k = kernel.len();
    let kmat: RatMatrix = Matrix::from_fn(k, rank, |i, j| Rat::from_integer(kernel[i][j].clone()));
    let kg = &kmat * gram;
    let p = (&kg * &kmat.transpose()).map(|x| -x.clone());
    if rational_cholesky(&p).is_err() {
        return Err(RayError::IndefinitePerp);
    }
    let p_inv = inverse(&p).ok_or(RayError::IndefinitePerp)?;

    let mut out = Vec::new();
    for d in 1..=max_degree {
        let target = &scale * Int::from(d);
        if !target.is_multiple_of(&step) {
            continue;
        }
        let mult = Rat::from_integer(target / &step);
        let r0: Vec<Rat> = particular.iter().map(|x| Rat::from_integer(x.clone()) * &mult).collect();
        let r0_sq = gram.bilinear(&r0, &r0);
        let a = kg.mul_vec(&r0);
        let center = p_inv.mul_vec(&a);
        let bound = r0_sq + p.bilinear(&center, &center) - floor;
        let mut slice = Vec::new();
        for point in ellipsoid_points(&p, &center, &bound)? {
            let mut coords = r0.clone();
            for (ki, row) in point.iter().zip(&kernel) {
                if ki.is_zero() {
                    continue;
                }
                for (c, b) in coords.iter_mut().zip(row) {
                    *c += Rat::from_integer(ki * b);
                }
            }
            slice.push(coords);
        }
        slice.sort();
        for coords in slice {
            let class = ClassVector::new(curves, coords)?;
            debug_assert!(class.square() >= *floor);
            out.push(class);
        }
    }
    Ok(out)
}

/// Classes from [`enumerate_classes`] with negative square, each classified.
pub fn enumerate_ray_candidates(model: &HKModel, max_degree: u64, floor: &Rat) -> Result<Vec<RayReport>, RayError> {
    enumerate_classes(model, max_degree, floor)?
        .iter()
        .filter(|c| c.square().is_negative())
        .map(|c| classify_ray(model, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{int_gram, labels, rank_one_model, DeformationType};

    /// Box search over `a·f + b·δ∨` on a rank-one surface.
    fn brute(model: &HKModel, max_degree: i64, floor: &Rat) -> Vec<Vec<Rat>> {
        let f = model.divisor(&[1, 0]).unwrap();
        let f_degree = model.degree(&model.to_curves(&f).unwrap()).unwrap().to_integer();
        let mut out = Vec::new();
        for a in -60i64..=60 {
            // The degree is a·(f,f); skip rows that cannot qualify.
            let deg = Int::from(a) * &f_degree;
            if deg <= Int::zero() || deg > Int::from(max_degree) {
                continue;
            }
            for b in -300i64..=300 {
                let c = model.curve(&[a, b]).unwrap();
                let d = model.degree(&c).unwrap();
                if d.is_positive() && d <= Rat::from_integer(max_degree.into()) && c.square() >= *floor {
                    out.push((d, c.coords().to_vec()));
                }
            }
        }
        out.sort();
        out.into_iter().map(|(_, c)| c).collect()
    }

    #[test]
    fn matches_box_search() {
        for (n, deg) in [(2, 2), (2, 10), (3, 4), (4, 16)] {
            let m = rank_one_model(DeformationType::hilb(n).unwrap(), deg).unwrap();
            let floor = -m.c().clone();
            let got: Vec<Vec<Rat>> = enumerate_classes(&m, 40, &floor)
                .unwrap()
                .iter()
                .map(|c| c.coords().to_vec())
                .collect();
            assert_eq!(got, brute(&m, 40, &floor), "n={n} deg={deg}");
        }
    }

    #[test]
    fn kummer_theta_pair() {
        let m = rank_one_model(DeformationType::kummer(2).unwrap(), 2).unwrap();
        let got = enumerate_ray_candidates(&m, 2, &-m.c().clone()).unwrap();
        let names: Vec<String> = got.iter().map(|r| r.class.to_string()).collect();
        assert!(names.contains(&"f-4e_v".to_string()), "{names:?}");
        assert!(names.contains(&"f+4e_v".to_string()), "{names:?}");
    }

    #[test]
    fn indefinite_perp_rejected() {
        // U ⊕ ⟨2⟩ polarized by the ⟨2⟩ class: g⊥ contains U.
        let gram = int_gram(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        let m = crate::build_model(DeformationType::K3Surface, &gram, &labels(&["a", "b", "h"]), &crate::model::ints(&[0, 0, 1]), true)
            .unwrap();
        assert_eq!(enumerate_classes(&m, 3, &Rat::from_integer((-2).into())), Err(RayError::IndefinitePerp));
    }
}
