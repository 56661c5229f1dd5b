//! Hermite and Smith normal forms and saturated integer kernels.

use super::matrix::Matrix;
use super::ExactInt;

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `u · m = h`. Pivots of `h` are
/// positive, entries above a pivot lie in `[0, pivot)`, and zero rows sit at
/// the bottom.
pub fn hermite_normal_form<I: ExactInt>(m: &Matrix<I>) -> (Matrix<I>, Matrix<I>) {
    let mut h = m.clone();
    let mut u = Matrix::identity(m.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        // Euclid down the column until only the pivot row is nonzero.
        loop {
            let smallest = (pivot_row..h.rows())
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = smallest else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..h.rows() {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
                add_row_multiple(&mut h, i, pivot_row, &q);
                add_row_multiple(&mut u, i, pivot_row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            negate_row(&mut h, pivot_row);
            negate_row(&mut u, pivot_row);
        }
        for i in 0..pivot_row {
            let q = h[(i, col)].div_floor(&h[(pivot_row, col)]);
            if !q.is_zero() {
                add_row_multiple(&mut h, i, pivot_row, &q);
                add_row_multiple(&mut u, i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form.
///
/// Returns `(d, u, v)` with `u`, `v` unimodular, `u · m · v = d`, `d` diagonal
/// with nonnegative entries and `d₁ | d₂ | …`.
pub fn smith_normal_form<I: ExactInt>(m: &Matrix<I>) -> (Matrix<I>, Matrix<I>, Matrix<I>) {
    let mut d = m.clone();
    let mut u = Matrix::identity(m.rows());
    let mut v = Matrix::identity(m.cols());
    let steps = m.rows().min(m.cols());

    for t in 0..steps {
        // Bring the smallest nonzero entry of the trailing block to (t, t).
        let Some((pi, pj)) = min_abs_entry(&d, t, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..d.rows() {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                add_row_multiple(&mut d, i, t, &q);
                add_row_multiple(&mut u, i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..d.cols() {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                add_col_multiple(&mut d, j, t, &q);
                add_col_multiple(&mut v, j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder survived; move the new smallest entry of row/col t to the pivot.
                let (bi, bj) = min_abs_cross(&d, t);
                d.swap_rows(t, bi);
                u.swap_rows(t, bi);
                d.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the trailing block.
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..d.rows())
                .find(|&i| (t + 1..d.cols()).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    add_row_multiple(&mut d, t, i, &-I::one());
                    add_row_multiple(&mut u, t, i, &-I::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    (d, u, v)
}

/// Basis of the integer kernel `{x ∈ ℤⁿ : m · x = 0}`.
///
/// The returned vectors span the full (saturated) lattice of integer solutions
/// and are themselves in Hermite normal form.
pub fn kernel_basis<I: ExactInt>(m: &Matrix<I>) -> Vec<Vec<I>> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = (0..h.rows()).take_while(|&i| !h.row(i).iter().all(|x| x.is_zero())).count();
    let idx: Vec<usize> = (rank..h.rows()).collect();
    if idx.is_empty() {
        return Vec::new();
    }
    let (basis, _) = hermite_normal_form(&u.select_rows(&idx));
    basis.row_vecs()
}

/// gcd of the entries; zero for the zero vector.
pub fn content<I: ExactInt>(v: &[I]) -> I {
    v.iter().fold(I::zero(), |g, x| g.gcd(x))
}

/// A unimodular matrix whose first row is the primitive vector `v`.
///
/// Returns `None` if `v` is not primitive.
pub fn complete_to_basis<I: ExactInt>(v: &[I]) -> Option<Matrix<I>> {
    if !content(v).is_one() {
        return None;
    }
    // u · vᵀ = e₁ up to sign, so the first column of u⁻¹ is ±v.
    let col = Matrix::from_fn(v.len(), 1, |i, _| v[i].clone());
    let (h, u) = hermite_normal_form(&col);
    debug_assert!(h[(0, 0)].is_one());
    let inv = unimodular_inverse(&u)?;
    Some(inv.transpose())
}

/// Inverse of a unimodular matrix, `None` if `m` is not unimodular.
pub fn unimodular_inverse<I: ExactInt>(m: &Matrix<I>) -> Option<Matrix<I>> {
    if !m.is_square() {
        return None;
    }
    // Row-reducing m to the identity: HNF of a unimodular matrix is the identity.
    let (h, u) = hermite_normal_form(m);
    if h == Matrix::identity(m.rows()) {
        Some(u)
    } else {
        None
    }
}

fn add_row_multiple<I: ExactInt>(m: &mut Matrix<I>, target: usize, source: usize, q: &I) {
    // row[target] -= q * row[source]
    for j in 0..m.cols() {
        let s = m[(source, j)].clone() * q.clone();
        m[(target, j)] = m[(target, j)].clone() - s;
    }
}

fn add_col_multiple<I: ExactInt>(m: &mut Matrix<I>, target: usize, source: usize, q: &I) {
    for i in 0..m.rows() {
        let s = m[(i, source)].clone() * q.clone();
        m[(i, target)] = m[(i, target)].clone() - s;
    }
}

fn negate_row<I: ExactInt>(m: &mut Matrix<I>, i: usize) {
    for x in m.row_mut(i) {
        *x = -x.clone();
    }
}

fn min_abs_entry<I: ExactInt>(m: &Matrix<I>, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..m.rows() {
        for j in c0..m.cols() {
            if m[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_cross<I: ExactInt>(m: &Matrix<I>, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let candidates = (t..m.rows())
        .map(|i| (i, t))
        .chain((t + 1..m.cols()).map(|j| (t, j)));
    for (i, j) in candidates {
        if m[(i, j)].is_zero() {
            continue;
        }
        if m[best].is_zero() || m[(i, j)].abs() < m[best].abs() {
            best = (i, j);
        }
    }
    best
}
