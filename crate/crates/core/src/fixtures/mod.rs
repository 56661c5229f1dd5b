//! Fixture ledger: witness classes for every table row and worked example,
//! recomputed exactly and compared against the tabulated values.

mod examples;
mod tables;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::format::format_rat;
use crate::lattice::QuadLattice;
use crate::model::{build_model, int_gram, ints, labels, CStatus, DeformationType, HKModel};
use crate::Rat;

pub use examples::run_example_suite;
pub use tables::run_table_suite;

type FixtureResult = Result<(), Box<dyn std::error::Error>>;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub source: String,
    pub c_status: Option<CStatus>,
    pub checks: Vec<Check>,
    /// Set when the computation itself failed before all checks ran.
    pub error: Option<String>,
}

impl FixtureOutcome {
    fn new(id: impl Into<String>, source: impl Into<String>) -> Self {
        FixtureOutcome {
            id: id.into(),
            source: source.into(),
            c_status: None,
            checks: Vec::new(),
            error: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: impl Into<String>, computed: String, expected: String) {
        let passed = computed == expected;
        self.checks.push(Check {
            name: name.into(),
            computed,
            expected,
            passed,
        });
    }

    fn rat(&mut self, name: impl Into<String>, computed: &Rat, expected: &Rat) {
        self.check(name, format_rat(computed), format_rat(expected));
    }

    fn value(&mut self, name: impl Into<String>, computed: impl ToString, expected: impl ToString) {
        self.check(name, computed.to_string(), expected.to_string());
    }

    fn status(&mut self, model: &HKModel) {
        self.c_status = Some(model.c_status());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub fixtures: Vec<FixtureOutcome>,
}

impl VerificationReport {
    fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            fixtures: Vec::new(),
        }
    }

    fn run(&mut self, id: impl Into<String>, source: impl Into<String>, body: impl FnOnce(&mut FixtureOutcome) -> FixtureResult) {
        let mut outcome = FixtureOutcome::new(id, source);
        if let Err(e) = body(&mut outcome) {
            outcome.error = Some(e.to_string());
        }
        self.fixtures.push(outcome);
    }

    pub fn passed(&self) -> bool {
        self.fixtures.iter().all(FixtureOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixtureOutcome> {
        self.fixtures.iter().filter(|f| !f.passed())
    }

    pub fn merge(suite: &str, reports: Vec<VerificationReport>) -> Self {
        let mut fixtures: Vec<FixtureOutcome> = reports.into_iter().flat_map(|r| r.fixtures).collect();
        fixtures.sort_by(|a, b| a.id.cmp(&b.id));
        VerificationReport {
            suite: suite.to_string(),
            fixtures,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = self.passed().into();
        v
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fx in &self.fixtures {
            let status = fx.c_status.map(|s| format!(" [{s}]")).unwrap_or_default();
            writeln!(f, "{} {}{} ({})", if fx.passed() { "PASS" } else { "FAIL" }, fx.id, status, fx.source)?;
            for c in &fx.checks {
                let mark = if c.passed { "ok " } else { "BAD" };
                writeln!(f, "    {mark} {} = {} (expected {})", c.name, c.computed, c.expected)?;
            }
            if let Some(e) = &fx.error {
                writeln!(f, "    error: {e}")?;
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} fixtures, {} failed, {}",
            self.suite,
            self.fixtures.len(),
            failed,
            if failed == 0 { "PASS" } else { "FAIL" }
        )
    }
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// `S^[n]` over `⟨degree⟩ = ℤf`, polarized by `(n+1)f − δ` so that every
/// witness (including `δ∨`) has nonzero degree.
fn hilb(n: u32, degree: i64) -> Result<HKModel, Box<dyn std::error::Error>> {
    let a = i64::from(n) + 1;
    Ok(build_model(DeformationType::hilb(n)?, &int_gram(&[&[degree]]), &labels(&["f"]), &ints(&[a, -1]), true)?)
}

/// `S^[n]` over `⟨degree⟩`, polarized by `f` itself.
fn hilb_by_f(n: u32, degree: i64) -> Result<HKModel, Box<dyn std::error::Error>> {
    Ok(crate::model::rank_one_model(DeformationType::hilb(n)?, degree)?)
}

/// `S^[n]` over `⟨2⟩ ⊕ ⟨−2⟩ = ℤh ⊕ ℤE` with `E` a smooth rational curve,
/// polarized by `2n·h − n·E − δ` (`3h − E` on the surface itself), which is
/// positive on `E`, `δ∨` and the lines `E − (n−1)δ∨`.
fn hilb_with_curve(n: u32) -> Result<HKModel, Box<dyn std::error::Error>> {
    let gram = int_gram(&[&[2, 0], &[0, -2]]);
    let names = labels(&["h", "E"]);
    if n == 1 {
        return Ok(build_model(DeformationType::K3Surface, &gram, &names, &ints(&[3, -1]), true)?);
    }
    let n2 = i64::from(n);
    Ok(build_model(DeformationType::hilb(n)?, &gram, &names, &ints(&[2 * n2, -n2, -1]), true)?)
}

/// `K_n(A)` with `NS(A) = ℤΘ`, `(Θ,Θ) = degree`, polarized by `(n+1)Θ − e`.
fn kummer_theta(n: u32, degree: i64) -> Result<HKModel, Box<dyn std::error::Error>> {
    let a = i64::from(n) + 1;
    Ok(build_model(DeformationType::kummer(n)?, &int_gram(&[&[degree]]), &labels(&["Theta"]), &ints(&[a, -1]), true)?)
}

/// `K_n(E₁ × E₂)`, `NS = U` spanned by the two elliptic fibers, polarized by
/// `(n+2)(E₁ + E₂) − e`.
fn kummer_product(n: u32) -> Result<HKModel, Box<dyn std::error::Error>> {
    let a = i64::from(n) + 2;
    Ok(build_model(
        DeformationType::kummer(n)?,
        &int_gram(&[&[0, 1], &[1, 0]]),
        &labels(&["E1", "E2"]),
        &ints(&[a, a, -1]),
        true,
    )?)
}

fn surface(degree: i64) -> Result<Arc<QuadLattice>, Box<dyn std::error::Error>> {
    Ok(QuadLattice::new("S", labels(&["f"]), int_gram(&[&[degree]]), true)?)
}
