//! Elimination over an exact field: Cholesky data for quadratic forms and
//! linear solves.

use super::matrix::Matrix;
use super::{ExactField, LinalgError};

/// Fincke–Pohst decomposition of a positive definite Gram matrix.
///
/// Returns `q` with `q[i][i] = dᵢ` and `q[i][j] = Lᵢⱼ` for `j > i` (zeros below
/// the diagonal), such that
/// `xᵀ g x = Σᵢ dᵢ (xᵢ + Σ_{j>i} Lᵢⱼ xⱼ)²`, i.e. `g = Lᵀ · diag(d) · L` with `L`
/// unit upper triangular.
pub fn rational_cholesky<F: ExactField>(g: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    if !g.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = g.rows();
    let mut q = g.clone();
    for i in 0..n {
        if q[(i, i)] <= F::zero() {
            return Err(LinalgError::NotPositiveDefinite { minor: i + 1 });
        }
        for j in i + 1..n {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = q[(i, j)].clone() / q[(i, i)].clone();
        }
        for k in i + 1..n {
            for l in k..n {
                let s = q[(k, i)].clone() * q[(i, l)].clone();
                q[(k, l)] = q[(k, l)].clone() - s;
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            q[(i, j)] = F::zero();
        }
    }
    Ok(q)
}

/// Rebuilds `Lᵀ · diag(d) · L` from the output of [`rational_cholesky`].
pub fn recompose_cholesky<F: ExactField>(q: &Matrix<F>) -> Matrix<F> {
    let n = q.rows();
    let l = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            F::one()
        } else if j > i {
            q[(i, j)].clone()
        } else {
            F::zero()
        }
    });
    let d = Matrix::from_fn(n, n, |i, j| if i == j { q[(i, i)].clone() } else { F::zero() });
    &(&l.transpose() * &d) * &l
}

/// Solves `y · m = x` for a row vector `y`.
///
/// Returns `Ok(None)` when `x` is outside the row space of `m`. When the rows of
/// `m` are dependent, free coordinates are set to zero.
pub fn solve_left<F: ExactField>(m: &Matrix<F>, x: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
    if x.len() != m.cols() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.cols(),
            found: x.len(),
        });
    }
    // yᵀ solves mᵀ · yᵀ = xᵀ.
    solve_right(&m.transpose(), x)
}

/// Solves `a · y = b` for a column vector `y` (free variables zero).
pub fn solve_right<F: ExactField>(a: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut aug = Matrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[(i, c)].is_zero()) else { continue };
        aug.swap_rows(r, p);
        let inv = F::one() / aug[(r, c)].clone();
        for x in aug.row_mut(r) {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || aug[(i, c)].is_zero() {
                continue;
            }
            let f = aug[(i, c)].clone();
            for j in 0..=cols {
                let s = f.clone() * aug[(r, j)].clone();
                aug[(i, j)] = aug[(i, j)].clone() - s;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| !aug[(i, cols)].is_zero()) {
        return Ok(None);
    }
    let mut y = vec![F::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = aug[(i, cols)].clone();
    }
    Ok(Some(y))
}

/// Inverse of a square matrix over the field, `None` when singular.
pub fn inverse<F: ExactField>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<F> = (0..n).map(|i| if i == j { F::one() } else { F::zero() }).collect();
        let y = solve_right(m, &e).ok()??;
        if m.mul_vec(&y) != e {
            return None;
        }
        cols.push(y);
    }
    Some(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn cholesky_examples() {
        let one = Matrix::from_rows(vec![vec![r(1, 1)]], 1);
        assert_eq!(rational_cholesky(&one).unwrap(), one);

        let g = Matrix::from_rows(vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(2, 1)]], 2);
        let q = rational_cholesky(&g).unwrap();
        assert_eq!(q[(0, 0)], r(2, 1));
        assert_eq!(q[(1, 1)], r(3, 2));
        assert_eq!(q[(0, 1)], r(1, 2));
        assert_eq!(recompose_cholesky(&q), g);

        let zero = Matrix::from_rows(vec![vec![r(0, 1)]], 1);
        assert_eq!(
            rational_cholesky(&zero),
            Err(LinalgError::NotPositiveDefinite { minor: 1 })
        );
        let indefinite = Matrix::from_rows(vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(1, 1)]], 2);
        assert_eq!(
            rational_cholesky(&indefinite),
            Err(LinalgError::NotPositiveDefinite { minor: 2 })
        );
    }

    #[test]
    fn left_solve_and_inverse() {
        let m = Matrix::from_rows(vec![vec![r(1, 1), r(0, 1)], vec![r(0, 1), r(4, 1)]], 2);
        assert_eq!(solve_left(&m, &[r(1, 1), r(-1, 1)]).unwrap(), Some(vec![r(1, 1), r(-1, 4)]));
        let line = Matrix::from_rows(vec![vec![r(1, 1), r(1, 1)]], 2);
        assert_eq!(solve_left(&line, &[r(1, 1), r(0, 1)]).unwrap(), None);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        let singular = Matrix::from_rows(vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]], 2);
        assert!(inverse(&singular).is_none());
    }
}
