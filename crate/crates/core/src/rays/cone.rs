use std::fmt;

use num_traits::Signed;

use super::classify::check_curve;
use super::{classify_ray, enumerate_classes, RayError, RayReport};
use crate::format::{format_class, format_rat};
use crate::lattice::{content, pair, primitive_on_ray, ClassVector, LatticeError};
use crate::linalg::{rational_feasibility, separating_functional, Feasibility};
use crate::model::{CStatus, HKModel};
use crate::Rat;

#[derive(Debug, Clone)]
pub enum AmpleVerdict {
    /// Positive on every candidate ray of degree at most `max_degree`.
    CertifiedAmpleUpTo { max_degree: u64, c_status: CStatus },
    /// The first candidate (by degree, then coordinates) with `h·R ≤ 0`.
    FailsOn { ray: Box<RayReport>, pairing: Rat, c_status: CStatus },
    /// `(h,h) ≤ 0` or `h·g ≤ 0`.
    NotBig { square: Rat, degree: Rat },
}

impl AmpleVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, AmpleVerdict::CertifiedAmpleUpTo { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            AmpleVerdict::CertifiedAmpleUpTo { max_degree, c_status } => serde_json::json!({
                "verdict": "certified_ample_up_to",
                "max_degree": max_degree,
                "c_status": c_status.to_string(),
            }),
            AmpleVerdict::FailsOn { ray, pairing, c_status } => serde_json::json!({
                "verdict": "fails_on",
                "ray": ray.to_json(),
                "pairing": format_rat(pairing),
                "c_status": c_status.to_string(),
            }),
            AmpleVerdict::NotBig { square, degree } => serde_json::json!({
                "verdict": "not_big",
                "square": format_rat(square),
                "degree": format_rat(degree),
            }),
        }
    }
}

impl fmt::Display for AmpleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmpleVerdict::CertifiedAmpleUpTo { max_degree, c_status } => {
                write!(f, "certified ample up to degree {max_degree} [{c_status}]")
            }
            AmpleVerdict::FailsOn { ray, pairing, c_status } => {
                write!(f, "fails on {} (h.R={}) [{c_status}]", ray.class, format_rat(pairing))
            }
            AmpleVerdict::NotBig { square, degree } => {
                write!(f, "not big: (h,h)={} h.g={}", format_rat(square), format_rat(degree))
            }
        }
    }
}

/// Tests a divisor `h` against every candidate ray up to `max_degree`.
pub fn ample_certify(model: &HKModel, h: &ClassVector, max_degree: u64) -> Result<AmpleVerdict, RayError> {
    if **h.lattice() != **model.divisors() {
        return Err(RayError::NotOnDivisorLattice(h.lattice().name().to_string()));
    }
    let square = h.square();
    let degree = pair(h, model.polarization())?;
    if !square.is_positive() || !degree.is_positive() {
        return Ok(AmpleVerdict::NotBig { square, degree });
    }
    let c_status = model.c_status();
    for r in enumerate_classes(model, max_degree, &-model.c().clone())? {
        let pairing = model.intersect(h, &r)?;
        if !pairing.is_positive() {
            let ray = Box::new(classify_ray(model, &r)?);
            return Ok(AmpleVerdict::FailsOn { ray, pairing, c_status });
        }
    }
    Ok(AmpleVerdict::CertifiedAmpleUpTo { max_degree, c_status })
}

#[derive(Debug, Clone)]
pub enum ConeStatus {
    /// `C` itself satisfies `(C,C) ≥ −c_X` and `C·g > 0`.
    Generator,
    /// Positive coefficients on generators recombining exactly to `C`.
    InsideByCombination(Vec<(ClassVector, Rat)>),
    /// `functional` is nonnegative on every generator of degree ≤ `max_degree`
    /// and equals −1 on `C`.
    OutsideCertifiedUpTo { max_degree: u64, functional: Vec<Rat> },
    Unknown,
}

#[derive(Debug, Clone)]
pub struct ConeVerdict {
    pub status: ConeStatus,
    pub c_status: CStatus,
    /// Whether the linear-programming backend was needed.
    pub backend_used: bool,
}

impl ConeVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let status = match &self.status {
            ConeStatus::Generator => serde_json::json!({ "verdict": "generator" }),
            ConeStatus::InsideByCombination(terms) => serde_json::json!({
                "verdict": "inside",
                "certificate": terms
                    .iter()
                    .map(|(c, a)| serde_json::json!({ "class": c.to_string(), "coefficient": format_rat(a) }))
                    .collect::<Vec<_>>(),
            }),
            ConeStatus::OutsideCertifiedUpTo { max_degree, functional } => serde_json::json!({
                "verdict": "outside_up_to",
                "max_degree": max_degree,
                "functional": functional.iter().map(format_rat).collect::<Vec<_>>(),
            }),
            ConeStatus::Unknown => serde_json::json!({ "verdict": "unknown" }),
        };
        let mut v = status;
        v["c_status"] = self.c_status.to_string().into();
        v["backend_used"] = self.backend_used.into();
        v
    }
}

impl fmt::Display for ConeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            ConeStatus::Generator => write!(f, "generator")?,
            ConeStatus::InsideByCombination(terms) => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(c, a)| format!("{}*({})", format_rat(a), c))
                    .collect();
                write!(f, "inside: {}", parts.join(" + "))?
            }
            ConeStatus::OutsideCertifiedUpTo { max_degree, functional } => {
                let labels: Vec<String> = (0..functional.len()).map(|i| format!("x{}", i + 1)).collect();
                write!(
                    f,
                    "outside up to degree {max_degree}: functional {}",
                    format_class(&labels, functional)
                )?
            }
            ConeStatus::Unknown => write!(f, "unknown")?,
        }
        write!(f, " [{}]", self.c_status)
    }
}

/// Decides whether `C` lies in the cone spanned by classes with
/// `(R,R) ≥ −c_X`, `R·g > 0` and degree at most `max_degree`.
pub fn cone_membership(model: &HKModel, c: &ClassVector, max_degree: u64) -> Result<ConeVerdict, RayError> {
    check_curve(model, c)?;
    if c.is_zero() {
        return Err(LatticeError::ZeroVector.into());
    }
    let c_status = model.c_status();
    let floor = -model.c().clone();
    let verdict = |status, backend_used| ConeVerdict { status, c_status, backend_used };

    if model.degree(c)?.is_positive() {
        if c.square() >= floor {
            return Ok(verdict(ConeStatus::Generator, false));
        }
        let p = primitive_on_ray(c)?;
        if p.square() >= floor {
            let k = Rat::from_integer(content(c)?);
            return Ok(verdict(ConeStatus::InsideByCombination(vec![(p, k)]), false));
        }
    }

    let gens = enumerate_classes(model, max_degree, &floor)?;
    let coords: Vec<Vec<Rat>> = gens.iter().map(|g| g.coords().to_vec()).collect();
    let status = match rational_feasibility(&coords, c.coords())? {
        Feasibility::Feasible(coef) => ConeStatus::InsideByCombination(
            gens.into_iter()
                .zip(coef)
                .filter(|(_, a)| a.is_positive())
                .collect(),
        ),
        Feasibility::Infeasible => match separating_functional(&coords, c.coords())? {
            Some(functional) => ConeStatus::OutsideCertifiedUpTo { max_degree, functional },
            None => ConeStatus::Unknown,
        },
    };
    Ok(verdict(status, true))
}
