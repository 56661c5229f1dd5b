use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::RayError;
use crate::format::format_rat;
use crate::lattice::{content, pair, primitive_on_ray, ClassVector};
use crate::model::{CStatus, DeformationType, Divisibility, HKModel};
use crate::{Int, Rat};

/// The full invariant record of a curve class.
#[derive(Debug, Clone)]
pub struct RayReport {
    pub class: ClassVector,
    pub square: Rat,
    pub degree: Rat,
    pub t: Int,
    pub rho: ClassVector,
    pub rho_square: Rat,
    pub divisibility: Divisibility,
    pub k_bucket: Option<u32>,
    pub divisorial_ok: bool,
    pub markman: MarkmanVerdict,
    pub geometry_label: String,
    /// `false` when `(R,R) < −c_X`: no extremal ray is expected there.
    pub within_bound: bool,
    pub c_status: CStatus,
}

impl RayReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "class": self.class.to_string(),
            "square": format_rat(&self.square),
            "degree": format_rat(&self.degree),
            "t": self.t.to_string(),
            "rho": self.rho.to_string(),
            "rho_square": format_rat(&self.rho_square),
            "divisibility": self.divisibility.to_string(),
            "k": self.k_bucket,
            "divisorial_ok": self.divisorial_ok,
            "markman": self.markman.to_string(),
            "geometry": self.geometry_label,
            "within_bound": self.within_bound,
            "c_status": self.c_status.to_string(),
        })
    }
}

impl fmt::Display for RayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k_bucket.map_or_else(|| "-".to_string(), |k| k.to_string());
        write!(
            f,
            "R={} (R,R)={} R.g={} t={} rho={} (rho,rho)={} div={} k={} divisorial={} markman={} geometry=\"{}\" bound={} [{}]",
            self.class,
            format_rat(&self.square),
            format_rat(&self.degree),
            self.t,
            self.rho,
            format_rat(&self.rho_square),
            self.divisibility,
            k,
            self.divisorial_ok,
            self.markman,
            self.geometry_label,
            if self.within_bound { "ok" } else { "out-of-range" },
            self.c_status
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MarkmanBranch {
    /// `(ρ,ρ) = −2` with `ρ = R`.
    MinusTwo,
    /// `(ρ,ρ) = −2(n−1)` with `ρ = (n−1)·m·R`.
    Divisible { m: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MarkmanVerdict {
    Admissible(MarkmanBranch),
    Inadmissible,
    NotApplicable,
}

impl fmt::Display for MarkmanVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkmanVerdict::Admissible(MarkmanBranch::MinusTwo) => write!(f, "admissible(rho^2=-2)"),
            MarkmanVerdict::Admissible(MarkmanBranch::Divisible { m }) => write!(f, "admissible(m={m})"),
            MarkmanVerdict::Inadmissible => write!(f, "inadmissible"),
            MarkmanVerdict::NotApplicable => write!(f, "n/a"),
        }
    }
}

/// The `k` with `−(k+3)/2 ≤ (R,R) < −(k+2)/2` (`−2 ≤ (R,R) < 0` for `k = 1`);
/// `None` for nonnegative squares.
pub fn k_bucket(square: &Rat) -> Option<u32> {
    if !square.is_negative() {
        return None;
    }
    let minus_two = Rat::from_integer(Int::from(-2));
    if *square >= minus_two {
        return Some(1);
    }
    // k + 2 < −2s ≤ k + 3  ⇒  k = ⌈−2s⌉ − 3
    let k = (-square * Rat::from_integer(Int::from(2))).ceil().to_integer() - Int::from(3);
    Some(u32::try_from(k).expect("bucket index fits in u32"))
}

fn geometry_label(dtype: DeformationType, c: &Rat, square: &Rat, k: Option<u32>) -> String {
    let Some(k) = k else {
        return "non-negative".to_string();
    };
    let n = dtype.n();
    if *square < -c.clone() {
        return "out of range".to_string();
    }
    if *square == -c.clone() {
        return format!("Lagrangian P^{n}");
    }
    match dtype {
        DeformationType::Kummer { .. } => "P^1-bundle".to_string(),
        _ => format!("P^{k}-bundle"),
    }
}

/// `−2 ≤ (R,R) < 0`: necessary for the contraction of `R` to be divisorial.
pub fn divisorial_bound_check(r: &ClassVector) -> bool {
    let sq = r.square();
    sq.is_negative() && sq >= Rat::from_integer(Int::from(-2))
}

/// Square-level Markman test: the branch `(R,R) = −2/(m²(n−1))` (reported
/// with its `m`), else `(R,R) = −2`.
pub fn markman_square(n: u32, square: &Rat) -> Option<MarkmanBranch> {
    if square.is_negative() && n >= 2 {
        let m_sq = Rat::from_integer(Int::from(-2)) / (square * Rat::from_integer(Int::from(n - 1)));
        if m_sq.is_integer() {
            let m_sq = m_sq.to_integer();
            let m = m_sq.sqrt();
            if &m * &m == m_sq {
                if let Ok(m) = u64::try_from(m) {
                    return Some(MarkmanBranch::Divisible { m });
                }
            }
        }
    }
    (*square == Rat::from_integer(Int::from(-2))).then_some(MarkmanBranch::MinusTwo)
}

/// Markman's constraint on exceptional divisors of K3^[n]-type: the saturated
/// `ρ` must have `(ρ,ρ) = −2`, or `(ρ,ρ) = −2(n−1)` with `ρ = (n−1)·m·R`.
pub fn markman_filter(model: &HKModel, r: &ClassVector) -> Result<MarkmanVerdict, RayError> {
    let DeformationType::HilbK3 { n } = model.dtype() else {
        return Err(RayError::WrongDeformationType(model.dtype()));
    };
    check_curve(model, r)?;
    if !content(r)?.is_one() {
        return Err(RayError::NotPrimitive(r.to_string()));
    }
    let square = r.square();
    let (t, _) = model.saturate(r)?;
    let verdict = match markman_square(n, &square) {
        Some(MarkmanBranch::Divisible { m }) if t == Int::from(u64::from(n - 1) * m) => {
            MarkmanVerdict::Admissible(MarkmanBranch::Divisible { m })
        }
        _ if square == Rat::from_integer(Int::from(-2)) && t.is_one() => {
            MarkmanVerdict::Admissible(MarkmanBranch::MinusTwo)
        }
        _ => MarkmanVerdict::Inadmissible,
    };
    Ok(verdict)
}

pub(crate) fn check_curve(model: &HKModel, r: &ClassVector) -> Result<(), RayError> {
    if **r.lattice() != **model.curves() {
        return Err(RayError::NotOnCurveLattice(r.lattice().name().to_string()));
    }
    if !r.is_integral() {
        return Err(RayError::Lattice(crate::lattice::LatticeError::NotIntegral));
    }
    Ok(())
}

/// Computes every invariant of the curve class `R`.
pub fn classify_ray(model: &HKModel, r: &ClassVector) -> Result<RayReport, RayError> {
    check_curve(model, r)?;
    let degree = model.degree(r)?;
    if degree.is_zero() {
        return Err(RayError::ZeroDegree(r.to_string()));
    }
    let square = r.square();
    let (t, rho) = model.saturate(r)?;
    let rho_square = rho.square();
    let divisibility = model.divisibility(&rho)?;
    let k = k_bucket(&square);
    let markman = match model.dtype() {
        DeformationType::HilbK3 { .. } if content(r)?.is_one() => markman_filter(model, r)?,
        _ => MarkmanVerdict::NotApplicable,
    };
    Ok(RayReport {
        class: r.clone(),
        divisorial_ok: divisorial_bound_check(r),
        geometry_label: geometry_label(model.dtype(), model.c(), &square, k),
        within_bound: square >= -model.c().clone(),
        square,
        degree,
        t,
        rho,
        rho_square,
        divisibility,
        k_bucket: k,
        markman,
        c_status: model.c_status(),
    })
}

/// Which side of the effective-cone sandwich a divisor class falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DivisorPosition {
    /// `(D,D) > 0`; `negated` when `D·g < 0`, i.e. `−D` rather than `D` is big.
    InnerCone { negated: bool },
    /// `D·g > 0` and the primitive curve class on the ray of `D` has square in `[−2, 0]`.
    OuterGeneratorOnly,
    OutsideOuter,
}

impl fmt::Display for DivisorPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorPosition::InnerCone { negated: false } => write!(f, "inner cone (D big)"),
            DivisorPosition::InnerCone { negated: true } => write!(f, "inner cone (-D big)"),
            DivisorPosition::OuterGeneratorOnly => write!(f, "outer cone generator"),
            DivisorPosition::OutsideOuter => write!(f, "outside outer cone"),
        }
    }
}

/// Places a divisor class relative to
/// `⟨(R,R) > 0, R·g > 0⟩ ⊂ NE¹(X) ⊂ ⟨(R,R) ≥ −2, R·g > 0⟩`.
pub fn effective_divisor_position(model: &HKModel, d: &ClassVector) -> Result<DivisorPosition, RayError> {
    if **d.lattice() != **model.divisors() {
        return Err(RayError::NotOnDivisorLattice(d.lattice().name().to_string()));
    }
    if d.is_zero() {
        return Err(RayError::Lattice(crate::lattice::LatticeError::ZeroVector));
    }
    let sq = d.square();
    let deg = pair(d, model.polarization())?;
    if sq.is_positive() {
        return Ok(DivisorPosition::InnerCone { negated: deg.is_negative() });
    }
    if !deg.is_positive() {
        return Ok(DivisorPosition::OutsideOuter);
    }
    let r = primitive_on_ray(&model.to_curves(d)?)?;
    if r.square() >= Rat::from_integer(Int::from(-2)) {
        Ok(DivisorPosition::OuterGeneratorOnly)
    } else {
        Ok(DivisorPosition::OutsideOuter)
    }
}
