//! Exact conic feasibility: is a target a nonnegative combination of generators?
//!
//! Both the primal question and the Farkas alternative are answered with a
//! phase-one simplex on a dense tableau over an exact field, using Bland's rule
//! so that degenerate pivots cannot cycle.

use super::matrix::{dot, Matrix};
use super::{ExactField, LinalgError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<F> {
    /// Nonnegative coefficients, one per generator, recombining to the target.
    Feasible(Vec<F>),
    Infeasible,
}

impl<F> Feasibility<F> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides whether `target = Σ cᵢ · generatorsᵢ` has a solution with all `cᵢ ≥ 0`.
pub fn rational_feasibility<F: ExactField>(
    generators: &[Vec<F>],
    target: &[F],
) -> Result<Feasibility<F>, LinalgError> {
    let dim = target.len();
    if let Some(bad) = generators.iter().find(|g| g.len() != dim) {
        return Err(LinalgError::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    // Columns are generators.
    let a = Matrix::from_fn(dim, generators.len(), |i, j| generators[j][i].clone());
    Ok(match phase_one(&a, target) {
        PhaseOne::Feasible(c) => Feasibility::Feasible(c),
        PhaseOne::Infeasible(_) => Feasibility::Infeasible,
    })
}

/// Finds `y` with `y · gᵢ ≥ 0` for every generator and `y · target = −1`, the
/// Farkas certificate that `target` is outside the cone. `None` if no such `y`
/// exists, i.e. exactly when the target is inside.
///
/// The certificate is read off the phase-one duals of the primal problem.
pub fn separating_functional<F: ExactField>(
    generators: &[Vec<F>],
    target: &[F],
) -> Result<Option<Vec<F>>, LinalgError> {
    let dim = target.len();
    if let Some(bad) = generators.iter().find(|g| g.len() != dim) {
        return Err(LinalgError::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let a = Matrix::from_fn(dim, generators.len(), |i, j| generators[j][i].clone());
    Ok(match phase_one(&a, target) {
        PhaseOne::Feasible(_) => None,
        PhaseOne::Infeasible(w) => {
            let scale = -dot(&w, target);
            Some(w.into_iter().map(|x| x / scale.clone()).collect())
        }
    })
}

/// Checks a Farkas certificate exactly.
pub fn separates<F: ExactField>(functional: &[F], generators: &[Vec<F>], target: &[F]) -> bool {
    generators.iter().all(|g| dot(functional, g) >= F::zero()) && dot(functional, target) < F::zero()
}

enum PhaseOne<F> {
    Feasible(Vec<F>),
    /// Dual `w` with `w · aⱼ ≤ 0` for every column and `w · b > 0`.
    Infeasible(Vec<F>),
}

/// Phase-one simplex for `a · x = b, x ≥ 0`.
fn phase_one<F: ExactField>(a: &Matrix<F>, b: &[F]) -> PhaseOne<F> {
    let (m, n) = (a.rows(), a.cols());
    let width = n + m + 1;
    let rhs = width - 1;
    // Tableau rows 0..m are constraints, row m is the phase-one objective.
    let mut t = Matrix::zeros(m + 1, width);
    for i in 0..m {
        let flip = b[i] < F::zero();
        for j in 0..n {
            t[(i, j)] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
        }
        t[(i, n + i)] = F::one();
        t[(i, rhs)] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    for j in 0..n {
        let s = (0..m).fold(F::zero(), |acc, i| acc + t[(i, j)].clone());
        t[(m, j)] = -s;
    }
    let total = (0..m).fold(F::zero(), |acc, i| acc + t[(i, rhs)].clone());
    t[(m, rhs)] = -total;
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Bland: lowest-index column with negative reduced cost.
    while let Some(enter) = (0..n + m).find(|&j| t[(m, j)] < F::zero()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[(i, enter)] <= F::zero() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let lhs = t[(i, rhs)].clone() * t[(l, enter)].clone();
                    let rhs_val = t[(l, rhs)].clone() * t[(i, enter)].clone();
                    if lhs < rhs_val || (lhs == rhs_val && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // Phase-one objective is bounded below by zero, so a pivot row exists.
        let leave = leave.expect("phase-one simplex is bounded");
        pivot(&mut t, leave, enter);
        basis[leave] = enter;
    }

    if !t[(m, rhs)].is_zero() {
        // The objective row holds 1 − wᵢ under artificial i (rows were sign-normalized).
        let w = (0..m)
            .map(|i| {
                let wi = F::one() - t[(m, n + i)].clone();
                if b[i] < F::zero() { -wi } else { wi }
            })
            .collect();
        return PhaseOne::Infeasible(w);
    }
    let mut x = vec![F::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[(i, rhs)].clone();
        }
    }
    PhaseOne::Feasible(x)
}

fn pivot<F: ExactField>(t: &mut Matrix<F>, row: usize, col: usize) {
    let inv = F::one() / t[(row, col)].clone();
    for x in t.row_mut(row) {
        *x = x.clone() * inv.clone();
    }
    for i in 0..t.rows() {
        if i == row || t[(i, col)].is_zero() {
            continue;
        }
        let f = t[(i, col)].clone();
        for j in 0..t.cols() {
            let s = f.clone() * t[(row, j)].clone();
            t[(i, j)] = t[(i, j)].clone() - s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn v(xs: &[i64]) -> Vec<Rational64> {
        xs.iter().map(|&x| Rational64::from_integer(x)).collect()
    }

    fn recombine(gens: &[Vec<Rational64>], c: &[Rational64]) -> Vec<Rational64> {
        let dim = gens[0].len();
        (0..dim)
            .map(|i| gens.iter().zip(c).map(|(g, ci)| g[i] * ci).sum())
            .collect()
    }

    #[test]
    fn unit_generators() {
        let gens = vec![v(&[1, 0]), v(&[0, 1])];
        assert_eq!(
            rational_feasibility(&gens, &v(&[2, 3])).unwrap(),
            Feasibility::Feasible(v(&[2, 3]))
        );
    }

    #[test]
    fn missing_direction_is_infeasible() {
        let gens = vec![v(&[1, 0])];
        assert_eq!(rational_feasibility(&gens, &v(&[0, 1])).unwrap(), Feasibility::Infeasible);
        let y = separating_functional(&gens, &v(&[0, 1])).unwrap().unwrap();
        assert!(separates(&y, &gens, &v(&[0, 1])));
    }

    #[test]
    fn skew_generators() {
        let gens = vec![v(&[1, 1]), v(&[1, -1])];
        let Feasibility::Feasible(c) = rational_feasibility(&gens, &v(&[2, 0])).unwrap() else {
            panic!("expected feasible");
        };
        assert_eq!(c, v(&[1, 1]));
        assert_eq!(recombine(&gens, &c), v(&[2, 0]));
        assert_eq!(separating_functional(&gens, &v(&[2, 0])).unwrap(), None);
    }

    #[test]
    fn negative_target_and_zero_target() {
        let gens = vec![v(&[1, 2]), v(&[3, 1])];
        assert!(!rational_feasibility(&gens, &v(&[-1, -1])).unwrap().is_feasible());
        let y = separating_functional(&gens, &v(&[-1, -1])).unwrap().unwrap();
        assert!(separates(&y, &gens, &v(&[-1, -1])));
        let y = separating_functional(&gens, &v(&[1, -4])).unwrap().unwrap();
        assert!(separates(&y, &gens, &v(&[1, -4])));
        assert_eq!(
            rational_feasibility(&gens, &v(&[0, 0])).unwrap(),
            Feasibility::Feasible(v(&[0, 0]))
        );
        assert!(rational_feasibility(&gens, &v(&[1])).is_err());
    }

    #[test]
    fn degenerate_redundant_generators() {
        let gens = vec![v(&[1, 0]), v(&[2, 0]), v(&[1, 1]), v(&[0, 1]), v(&[3, 3])];
        let Feasibility::Feasible(c) = rational_feasibility(&gens, &v(&[5, 2])).unwrap() else {
            panic!("expected feasible");
        };
        assert!(c.iter().all(|x| *x >= Rational64::from_integer(0)));
        assert_eq!(recombine(&gens, &c), v(&[5, 2]));
    }
}
