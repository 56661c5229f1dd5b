use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use hkcone::lattice::{pair, ClassVector};
use hkcone::linalg::{
    determinant, ellipsoid_points, hermite_normal_form, kernel_basis, rational_cholesky, recompose_cholesky,
    smith_normal_form, Matrix,
};
use hkcone::model::{int_gram, ints, labels, rank_one_model, DeformationType, HKModel};
use hkcone::rays::{
    ample_certify, classify_ray, cone_membership, k_bucket, markman_filter, AmpleVerdict, ConeStatus,
    MarkmanVerdict,
};
use hkcone::{build_model, Int, IntMatrix, Rat};

fn matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_fn(rows.len(), cols, |i, j| Int::from(rows[i][j]))
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && determinant(m).abs().is_one()
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Rank-two `S^[n]` or `K_n` over `⟨degree⟩`, polarized by `f`.
fn rank_two(kummer: bool, n: u32, degree: i64) -> HKModel {
    let dtype = if kummer { DeformationType::kummer(n) } else { DeformationType::hilb(n) }.unwrap();
    rank_one_model(dtype, degree).unwrap()
}

fn model_strategy() -> impl Strategy<Value = HKModel> {
    (any::<bool>(), 2u32..=5, 1i64..=8).prop_map(|(k, n, d)| rank_two(k, n, 2 * d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_unimodular_transform(rows in small_matrix()) {
        let m = matrix(&rows);
        let (h, u) = hermite_normal_form(&m);
        prop_assert!(is_unimodular(&u));
        prop_assert_eq!(&(&u * &m), &h);
        // Row echelon with positive pivots and reduced entries above them.
        let mut last_pivot: Option<usize> = None;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => prop_assert!((i..h.rows()).all(|k| h.row(k).iter().all(Zero::is_zero))),
                Some(p) => {
                    prop_assert!(last_pivot.is_none_or(|q| p > q));
                    prop_assert!(h[(i, p)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
                    }
                    last_pivot = Some(p);
                }
            }
        }
    }

    #[test]
    fn snf_divisibility_chain(rows in small_matrix()) {
        let m = matrix(&rows);
        let (d, u, v) = smith_normal_form(&m);
        prop_assert!(is_unimodular(&u) && is_unimodular(&v));
        prop_assert_eq!(&(&(&u * &m) * &v), &d);
        let diag: Vec<Int> = (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn kernel_is_saturated(rows in small_matrix()) {
        let m = matrix(&rows);
        let kernel = kernel_basis(&m);
        let (h, _) = hermite_normal_form(&m);
        let rank = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
        prop_assert_eq!(kernel.len(), m.cols() - rank);
        for k in &kernel {
            prop_assert!(m.mul_vec(k).iter().all(Zero::is_zero));
        }
        if !kernel.is_empty() {
            // Saturated: every elementary divisor of the basis is 1.
            let (d, _, _) = smith_normal_form(&Matrix::from_rows(kernel.clone(), m.cols()));
            for i in 0..kernel.len() {
                prop_assert!(d[(i, i)].is_one());
            }
        }
    }

    #[test]
    fn cholesky_recomposes(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 4)) {
        // AᵀA + I is positive definite.
        let a = matrix(&rows);
        let ata = &a.transpose() * &a;
        let gq = Matrix::from_fn(4, 4, |i, j| Rat::from_integer(&ata[(i, j)] + Int::from(u8::from(i == j))));
        let q = rational_cholesky(&gq).unwrap();
        prop_assert_eq!(recompose_cholesky(&q), gq);
    }

    #[test]
    fn ellipsoid_matches_box(a in 1i64..=5, b in -3i64..=3, c in 1i64..=5, bound in 0i64..=20) {
        prop_assume!(a * c > b * b);
        let g = Matrix::from_fn(2, 2, |i, j| Rat::from_integer(Int::from([[a, b], [b, c]][i][j])));
        let center = [rat(1, 3), rat(-1, 2)];
        let got = ellipsoid_points(&g, &center, &Rat::from_integer(bound.into())).unwrap();
        // Integer oracle: with X = 6x − 2, Y = 6y + 3 the condition scales by 36.
        let mut expected = Vec::new();
        for x in -30i64..=30 {
            for y in -30i64..=30 {
                let (xx, yy) = (6 * x - 2, 6 * y + 3);
                if a * xx * xx + 2 * b * xx * yy + c * yy * yy <= 36 * bound {
                    expected.push(vec![Int::from(x), Int::from(y)]);
                }
            }
        }
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn bucket_brackets_square(num in 1i64..400, den in 1i64..60) {
        let s = rat(-num, den);
        let k = i64::from(k_bucket(&s).unwrap());
        if k == 1 {
            prop_assert!(s >= rat(-2, 1));
        } else {
            prop_assert!(rat(-(k + 3), 2) <= s && s < rat(-(k + 2), 2));
            prop_assert!(s < rat(-2, 1));
        }
    }

    #[test]
    fn ray_report_invariants(m in model_strategy(), a in -6i64..=6, b in -40i64..=40) {
        let r = m.curve(&[a, b]).unwrap();
        prop_assume!(!m.degree(&r).unwrap().is_zero());
        let report = classify_ray(&m, &r).unwrap();
        let t = Rat::from_integer(report.t.clone());
        prop_assert_eq!(&report.rho_square, &(&t * &t * &report.square));
        prop_assert_eq!(report.k_bucket.is_some(), report.square.is_negative());
        prop_assert_eq!(report.within_bound, report.square >= -m.c().clone());
        prop_assert_eq!(m.to_curves(&report.rho).unwrap(), r.scaled(&t));
        let div = Rat::from_integer(report.divisibility.value().clone());
        for label in m.divisors().labels() {
            let e = ClassVector::basis(m.divisors(), label).unwrap();
            prop_assert!((pair(&report.rho, &e).unwrap() / &div).is_integer());
        }
        prop_assert_eq!(report.c_status, m.c_status());
    }

    #[test]
    fn markman_admissible_has_allowed_rho(n in 2u32..=6, a in -4i64..=4, b in -4i64..=4, x in -12i64..=12) {
        // U ⊕ ⟨−2(n−1)⟩ with R = a·e1 + b·e2 + x·δ∨.
        let m = build_model(
            DeformationType::hilb(n).unwrap(),
            &int_gram(&[&[0, 1], &[1, 0]]),
            &labels(&["e1", "e2"]),
            &ints(&[1, 2]),
            true,
        ).unwrap();
        let r = m.curve(&[a, b, x]).unwrap();
        prop_assume!(!r.is_zero() && hkcone::lattice::is_primitive(&r).unwrap());
        if let MarkmanVerdict::Admissible(_) = markman_filter(&m, &r).unwrap() {
            let (_, rho) = m.saturate(&r).unwrap();
            let sq = rho.square();
            prop_assert!(sq == rat(-2, 1) || sq == rat(-2 * (i64::from(n) - 1), 1), "rho^2 = {}", sq);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polarization_certifies_itself(m in model_strategy(), max_degree in 1u64..=12) {
        let verdict = ample_certify(&m, m.polarization(), max_degree).unwrap();
        prop_assert!(matches!(verdict, AmpleVerdict::CertifiedAmpleUpTo { .. }), "{}", verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cone_certificates_are_exact(m in model_strategy(), a in -4i64..=6, b in -30i64..=30, max_degree in 2u64..=8) {
        let c = m.curve(&[a, b]).unwrap();
        prop_assume!(!c.is_zero());
        let verdict = cone_membership(&m, &c, max_degree).unwrap();
        prop_assert_eq!(verdict.c_status, m.c_status());
        let floor = -m.c().clone();
        let degree = m.degree(&c).unwrap();
        match &verdict.status {
            ConeStatus::Generator => {
                prop_assert!(c.square() >= floor && degree.is_positive());
                prop_assert!(!verdict.backend_used);
            }
            ConeStatus::InsideByCombination(terms) => {
                let mut sum = ClassVector::zero(m.curves());
                for (g, coef) in terms {
                    prop_assert!(coef.is_positive());
                    prop_assert!(g.square() >= floor && m.degree(g).unwrap().is_positive());
                    sum = sum.add(&g.scaled(coef)).unwrap();
                }
                prop_assert_eq!(&sum, &c);
                if !verdict.backend_used {
                    prop_assert_eq!(terms.len(), 1);
                }
            }
            ConeStatus::OutsideCertifiedUpTo { functional, .. } => {
                prop_assert!(verdict.backend_used);
                let f = |x: &ClassVector| hkcone::linalg::dot(functional, x.coords());
                prop_assert_eq!(f(&c), rat(-1, 1));
                for g in hkcone::rays::enumerate_classes(&m, max_degree, &floor).unwrap() {
                    prop_assert!(!f(&g).is_negative());
                }
            }
            ConeStatus::Unknown => prop_assert!(false, "feasibility and its dual both failed"),
        }
        // A positive multiple of a generator never needs the backend.
        if degree.is_positive() && hkcone::lattice::primitive_on_ray(&c).unwrap().square() >= floor {
            prop_assert!(!verdict.backend_used);
        }
    }
}
