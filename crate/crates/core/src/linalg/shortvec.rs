//! Exact Fincke–Pohst enumeration of lattice points in an ellipsoid.

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::Zero;

use super::field::rational_cholesky;
use super::matrix::Matrix;
use super::{ExactInt, LinalgError};

/// All integer vectors `x` with `(x − c)ᵀ · gram · (x − c) ≤ bound`.
///
/// `gram` must be positive definite. Every comparison is exact, so the
/// returned set is complete. Output is sorted lexicographically.
pub fn ellipsoid_points<I>(
    gram: &Matrix<Ratio<I>>,
    center: &[Ratio<I>],
    bound: &Ratio<I>,
) -> Result<Vec<Vec<I>>, LinalgError>
where
    I: ExactInt + Roots,
{
    let n = gram.rows();
    if center.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: n,
            found: center.len(),
        });
    }
    if *bound < Ratio::zero() {
        return Ok(Vec::new());
    }
    let q = rational_cholesky(gram)?;
    let mut out = Vec::new();
    let mut x = vec![I::zero(); n];
    descend(&q, center, n, bound.clone(), &mut x, &mut out);
    out.sort();
    Ok(out)
}

fn descend<I: ExactInt + Roots>(
    q: &Matrix<Ratio<I>>,
    center: &[Ratio<I>],
    level: usize,
    budget: Ratio<I>,
    x: &mut Vec<I>,
    out: &mut Vec<Vec<I>>,
) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = q.rows();
    // Shifted center for coordinate i given the already fixed x_{i+1..n}.
    let mut shift = center[i].clone();
    for j in i + 1..n {
        let yj = Ratio::from_integer(x[j].clone()) - center[j].clone();
        shift = shift - q[(i, j)].clone() * yj;
    }
    let diag = q[(i, i)].clone();
    let radius_sq = budget.clone() / diag.clone();
    let width = radius_sq.ceil().to_integer().sqrt() + I::one();
    let lo = shift.floor().to_integer() - width.clone();
    let hi = shift.ceil().to_integer() + width;
    let mut xi = lo;
    while xi <= hi {
        let d = Ratio::from_integer(xi.clone()) - shift.clone();
        let used = diag.clone() * d.clone() * d;
        if used <= budget {
            x[i] = xi.clone();
            descend(q, center, i, budget.clone() - used, x, out);
        }
        xi = xi + I::one();
    }
    x[i] = I::zero();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn unit_disc() {
        let g = Matrix::<Rational64>::identity(2);
        let pts = ellipsoid_points(&g, &[r(0), r(0)], &r(1)).unwrap();
        assert_eq!(pts, vec![vec![-1, 0], vec![0, -1], vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn matches_brute_force_on_skew_form() {
        let g = Matrix::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(3)]], 2);
        let c = [Rational64::new(1, 3), Rational64::new(-5, 2)];
        let bound = Rational64::new(37, 4);
        let pts = ellipsoid_points(&g, &c, &bound).unwrap();
        let mut brute = Vec::new();
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let y = [r(a) - c[0], r(b) - c[1]];
                if g.bilinear(&y, &y) <= bound {
                    brute.push(vec![a, b]);
                }
            }
        }
        assert_eq!(pts, brute);
    }

    #[test]
    fn negative_bound_and_rank_zero() {
        let g = Matrix::<Rational64>::identity(1);
        assert!(ellipsoid_points(&g, &[r(0)], &r(-1)).unwrap().is_empty());
        let empty = Matrix::<Rational64>::zeros(0, 0);
        assert_eq!(ellipsoid_points(&empty, &[], &r(0)).unwrap(), vec![Vec::<i64>::new()]);
    }
}
