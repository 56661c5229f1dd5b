
use super::{hilb, hilb_by_f, hilb_with_curve, kummer_product, kummer_theta, q, surface, FixtureOutcome, VerificationReport};
use crate::lattice::ClassVector;
use crate::model::{lagrangian_line_square, Divisibility};
use crate::mukai::{fm_fixture_check, moduli_dimension, mukai_pair, mukai_vector_from_chern, period_lattice, MukaiVector};
use crate::rays::{classify_ray, enumerate_ray_candidates, markman_filter, MarkmanBranch, MarkmanVerdict};
use crate::{Int, Rat};

fn int(x: i64) -> Rat {
    Rat::from_integer(x.into())
}

/// Checks `(r, f, s)`, χ and `⟨v,v⟩` for the sheaf with `r`, `c₁ = f`, `c₂` on `⟨degree⟩`.
fn chern_family(
    out: &mut FixtureOutcome,
    degree: i64,
    c2: i64,
    s: i64,
    chi: i64,
    square: i64,
) -> Result<MukaiVector, Box<dyn std::error::Error>> {
    let lat = surface(degree)?;
    let v = mukai_vector_from_chern(2, ClassVector::basis(&lat, "f")?, c2)?;
    out.value(format!("s on <{degree}>"), &v.s, s);
    out.value(format!("chi on <{degree}>"), v.euler_char(), chi);
    out.value(format!("<v,v> on <{degree}>"), mukai_pair(&v, &v)?, square);
    Ok(v)
}

/// Every quoted identity of the worked examples, recomputed.
pub fn run_example_suite() -> VerificationReport {
    let mut report = VerificationReport::new("examples");

    report.run("ex.diagonal", "diagonal P^1-bundle, class delta_v", |out| {
        for n in 2u32..=6 {
            let m = hilb(n, 2)?;
            let diag = m.slot_divisor().expect("slot").scaled(&int(2));
            let dv = m.slot_curve().expect("slot");
            out.status(&m);
            out.rat(format!("n={n} Delta.delta_v"), &m.intersect(&diag, &dv)?, &int(-2));
            out.rat(format!("n={n} (delta_v,delta_v)"), &dv.square(), &q(-1, 2 * (i64::from(n) - 1)));
        }
        Ok(())
    });

    report.run("ex.fm-flop", "Fourier-Mukai flop of S^[2] over degree 2(r^2+r)", |out| {
        for c in fm_fixture_check(10)? {
            let r = i64::from(c.r);
            out.value(format!("r={r} v=(r,f,r+1) isotropic"), c.isotropic, true);
            out.value(format!("r={r} v primitive"), c.primitive, true);
            out.rat(format!("r={r} (delta',delta')"), &c.delta_prime_square, &int(-2));
            out.value(format!("r={r} divisibility of delta'"), &c.delta_prime_divisibility, 2);
            let period = c.period_degree.map(|d| crate::format::format_rat(&d)).unwrap_or_default();
            out.value(format!("r={r} period degree"), period, 2 * (r * r + r));

            let lat = surface(2 * (r * r + r))?;
            let f = ClassVector::basis(&lat, "f")?;
            let e = mukai_vector_from_chern(c.r, f.clone(), r * r + r - 1)?;
            out.value(format!("r={r} chi(E)"), e.euler_char(), 2 * r + 1);
            // phi(w) = (r+1, f', r p') − (r, f', (r+1) p')
            let phi = MukaiVector::new(1, f.scaled(&int(0)), -1)?;
            let a = MukaiVector::new(r + 1, f.clone(), r)?;
            let b = MukaiVector::new(r, f, r + 1)?;
            let diff: Vec<Int> = a.total_coords().iter().zip(b.total_coords()).map(|(x, y)| x - y).collect();
            out.value(format!("r={r} phi(w)"), format!("{diff:?}"), format!("{:?}", phi.total_coords()));
        }
        let lat = surface(4)?;
        let w = mukai_vector_from_chern(1, ClassVector::zero(&lat), 2)?;
        out.value("w = ideal sheaf of two points", format!("{:?}", w.total_coords()), "[1, 0, -1]");
        out.value("dim M_w", moduli_dimension(&w)?, 4);
        Ok(())
    });

    report.run("ex.isogenous-family", "P^1-bundles in S^[n] over degree 8n-16", |out| {
        for n in 3i64..=10 {
            let v = chern_family(out, 8 * n - 16, 2 * n - 2, 2 * n - 4, 2 * (n - 1), 0)?;
            out.value(format!("n={n} chi(E x I) = chi(E) - 2(n-2)"), v.euler_char() - Int::from(2 * (n - 2)), 2);
            let p = period_lattice(&v)?;
            out.rat(format!("n={n} M_v degree"), &p.gram()[(0, 0)], &int(2 * n - 4));
        }
        Ok(())
    });

    report.run("ex.isogenous-n4", "R = f16 - 10 delta_v on S_16^[4]", |out| {
        let m = hilb(4, 16)?;
        out.status(&m);
        let r = m.curve(&[1, -10])?;
        let f = m.divisor(&[1, 0])?;
        out.rat("(R,R)", &r.square(), &q(-2, 3));
        out.rat("R.f16", &m.intersect(&f, &r)?, &int(16));
        // Sign-sensitive: with delta -> 2(n-1) delta_v the coefficient 10 is R.delta.
        out.rat("R.delta", &m.intersect(&m.slot_divisor().expect("slot"), &r)?, &int(10));
        let schubert = 16 - 10 - 2;
        out.value("deg(phi) (Schubert constant)", schubert, 4);
        let v = chern_family(out, 16, 6, 4, 6, 0)?;
        out.rat("M_v degree", &period_lattice(&v)?.gram()[(0, 0)], &int(4));
        Ok(())
    });

    report.run("ex.relative-picard", "Abel-Jacobi P^1-bundle, v = (0,f,2)", |out| {
        for n in 3i64..=10 {
            let lat = surface(2 * (n - 2))?;
            let v = MukaiVector::new(0, ClassVector::basis(&lat, "f")?, 2)?;
            out.value(format!("n={n} dim M_v"), moduli_dimension(&v)?, 2 * (n - 1));
        }
        Ok(())
    });

    report.run("ex.minus-two", "ruling of the divisor of a (-2)-curve", |out| {
        for n in 2u32..=6 {
            let m = hilb_with_curve(n)?;
            out.status(&m);
            let r = m.curve(&[0, 1, 0])?;
            let e = m.divisor(&[0, 1, 0])?;
            out.rat(format!("n={n} R.E"), &m.intersect(&e, &r)?, &int(-2));
            out.rat(format!("n={n} (R,R)"), &r.square(), &int(-2));
            let expected = if n == 2 {
                MarkmanVerdict::Admissible(MarkmanBranch::Divisible { m: 1 })
            } else {
                MarkmanVerdict::Admissible(MarkmanBranch::MinusTwo)
            };
            out.value(format!("n={n} markman"), markman_filter(&m, &r)?, expected);
        }
        Ok(())
    });

    report.run("ex.pn-2-bundles", "P^(n-2)-bundles over degree 4n-10", |out| {
        for n in 3i64..=10 {
            let v = chern_family(out, 4 * n - 10, n, n - 3, n - 1, 2)?;
            out.value(format!("n={n} dim M_v"), moduli_dimension(&v)?, 4);
        }
        Ok(())
    });

    report.run("ex.degree-six", "S_6^[2] birational to M_(2,f,1)(S_6)", |out| {
        let v = chern_family(out, 6, 4, 1, 3, 2)?;
        out.value("dim M_v", moduli_dimension(&v)?, 4);
        Ok(())
    });

    report.run("ex.pn-1-bundles", "P^(n-1)-bundles over degree 4n-8", |out| {
        for n in 3i64..=10 {
            let v = chern_family(out, 4 * n - 8, n, n - 2, n, 0)?;
            out.value(format!("n={n} dim M_v"), moduli_dimension(&v)?, 2);
        }
        Ok(())
    });

    report.run("ex.degree-four", "P^2 in S_4^[3]", |out| {
        chern_family(out, 4, 3, 1, 3, 0)?;
        Ok(())
    });

    report.run("ex.degree-eight", "P^3-bundle over S_2 in S_8^[4]", |out| {
        let v = chern_family(out, 8, 4, 2, 4, 0)?;
        out.rat("M_v degree", &period_lattice(&v)?.gram()[(0, 0)], &int(2));
        Ok(())
    });

    report.run("ex.lagrangian", "line in E^[n], l = E - (n-1) delta_v", |out| {
        for n in 2u32..=6 {
            let ni = i64::from(n);
            let m = hilb_with_curve(n)?;
            out.status(&m);
            let l = m.curve(&[0, 1, -(ni - 1)])?;
            let diag = m.slot_divisor().expect("slot").scaled(&int(2));
            let e = m.divisor(&[0, 1, 0])?;
            out.rat(format!("n={n} Delta.l"), &m.intersect(&diag, &l)?, &int(2 * (ni - 1)));
            out.rat(format!("n={n} l.E"), &m.intersect(&e, &l)?, &int(-2));
            out.rat(format!("n={n} (l,l)"), &l.square(), &q(-(ni + 3), 2));
            out.rat(format!("n={n} (l,l) = -c"), &l.square(), &lagrangian_line_square(m.dtype()));
            let (t, rho) = m.saturate(&l)?;
            out.value(format!("n={n} t"), &t, 2);
            out.value(format!("n={n} rho"), &rho, "2E-delta");
            out.rat(format!("n={n} (rho,rho)"), &rho.square(), &int(-8 - 2 * (ni - 1)));
            let label = classify_ray(&m, &l)?.geometry_label;
            out.value(format!("n={n} geometry"), label, format!("Lagrangian P^{n}"));
        }
        Ok(())
    });

    report.run("ex.degree-ten", "Lagrangian plane in S_10^[2]", |out| {
        let m = hilb_by_f(2, 10)?;
        out.status(&m);
        let r = m.curve(&[1, -5])?;
        out.rat("(R,R)", &r.square(), &q(-5, 2));
        let found = enumerate_ray_candidates(&m, 10, &-m.c().clone())?.iter().any(|x| x.class == r);
        out.value("enumerated up to degree 10", found, true);
        let v = chern_family(out, 10, 4, 3, 5, -2)?;
        out.value("dim M_v (rigid)", moduli_dimension(&v)?, 0);
        Ok(())
    });

    report.run("ex.lagrangian-family", "Lagrangian P^n over degree 4n-6", |out| {
        for n in 2u32..=10 {
            let ni = i64::from(n);
            chern_family(out, 4 * ni - 6, ni, ni - 1, ni + 1, -2)?;
            let m = hilb(n, 4 * ni - 6)?;
            let r = m.curve(&[1, -3 * (ni - 1)])?;
            out.rat(format!("n={n} (f-3(n-1)delta_v)^2"), &r.square(), &q(-(ni + 3), 2));
        }
        Ok(())
    });

    report.run("ex.markman-n5", "n = 5, (R,R) = -9/8 excluded as divisorial", |out| {
        let m = hilb(5, 2)?;
        out.status(&m);
        let r = m.curve(&[1, -5])?;
        out.rat("(R,R)", &r.square(), &q(-9, 8));
        out.value("markman", markman_filter(&m, &r)?, MarkmanVerdict::Inadmissible);
        Ok(())
    });

    report.run("ex.second-kummer", "g^1_3 rulings in K_2 of a Jacobian", |out| {
        let m = kummer_theta(2, 2)?;
        out.status(&m);
        let r = m.curve(&[1, -4])?;
        let theta = m.divisor(&[1, 0])?;
        let e = m.slot_divisor().expect("slot");
        out.rat("l.Theta", &m.intersect(&theta, &r)?, &int(2));
        let ramification_points = 8;
        out.rat("l.e", &m.intersect(&e, &r)?, &int(ramification_points / 2));
        let two_thirds_e = e.scaled(&q(2, 3));
        let expected = theta.sub(&two_thirds_e)?;
        out.value("R = Theta - (2/3)e", m.embedding().preimage(&r)?.expect("rational span"), &expected);
        out.rat("(R,R)", &r.square(), &q(-2, 3));
        let (t, rho) = m.saturate(&r)?;
        out.value("t", &t, 3);
        out.rat("(rho,rho)", &rho.square(), &int(-6));
        out.value("divisibility", m.divisibility(&rho)?, Divisibility::Ambient(3.into()));
        Ok(())
    });

    report.run("ex.general-kummer", "rulings over K_g of a (1,g)-polarized A", |out| {
        for g in 2u32..=8 {
            let gi = i64::from(g);
            let m = kummer_theta(g, 2 * gi - 2)?;
            out.status(&m);
            let r = m.curve(&[1, -2 * gi])?;
            let theta = m.divisor(&[1, 0])?;
            let e = m.slot_divisor().expect("slot");
            out.rat(format!("g={g} R.2e"), &m.intersect(&e.scaled(&int(2)), &r)?, &int(4 * gi));
            out.rat(format!("g={g} R.Theta"), &m.intersect(&theta, &r)?, &int(2 * gi - 2));
            out.rat(format!("g={g} (R,R)"), &r.square(), &q(-2, gi + 1));
            let (t, rho) = m.saturate(&r)?;
            out.value(format!("g={g} t"), &t, gi + 1);
            out.rat(format!("g={g} (rho,rho)"), &rho.square(), &int(-2 * (gi + 1)));
            out.rat(format!("g={g} (rho,rho) = (e,e)"), &rho.square(), &e.square());
        }
        Ok(())
    });

    report.run("ex.kummer-lagrangian", "line in P^n inside K_n(E1 x E2)", |out| {
        for n in 2u32..=8 {
            let ni = i64::from(n);
            let m = kummer_product(n)?;
            out.status(&m);
            let l = m.curve(&[1, 0, -(ni + 1)])?;
            let e1 = m.divisor(&[1, 0, 0])?;
            let e2 = m.divisor(&[0, 1, 0])?;
            let e = m.slot_divisor().expect("slot");
            out.rat(format!("n={n} l.E1"), &m.intersect(&e1, &l)?, &int(0));
            out.rat(format!("n={n} l.E2"), &m.intersect(&e2, &l)?, &int(1));
            out.rat(format!("n={n} l.e"), &m.intersect(&e, &l)?, &int(ni + 1));
            out.rat(format!("n={n} (R,R)"), &l.square(), &q(-(ni + 1), 2));
            let (t, rho) = m.saturate(&l)?;
            out.value(format!("n={n} t"), &t, 2);
            out.rat(format!("n={n} (rho,rho)"), &rho.square(), &int(-2 * (ni + 1)));
            out.rat(format!("n={n} (rho,rho) = (e,e)"), &rho.square(), &e.square());
            out.value(format!("n={n} R = E1 - (1/2)e"), m.embedding().preimage(&l)?.expect("span"), e1.sub(&e.scaled(&q(1, 2)))?);
        }
        Ok(())
    });

    report.run("ex.ample-one-way", "h = f - delta against f - 5 delta_v on S_10^[2]", |out| {
        let m = hilb(2, 10)?;
        out.status(&m);
        let h = m.divisor(&[1, -1])?;
        let r = m.curve(&[1, -5])?;
        out.rat("h.R", &m.intersect(&h, &r)?, &int(5));
        out.rat("(h,h)", &h.square(), &int(8));
        Ok(())
    });

    report
}
