//! Canonical text for exact values: `p/q` fractions and label-coefficient classes.

use num_traits::{One, Signed, Zero};

use crate::Rat;

/// `p` for integers, `p/q` otherwise (lowest terms, positive denominator).
pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A class as `2f-5delta_v`; non-integral coefficients are parenthesized, as in `(1/2)e`.
pub fn format_class(labels: &[String], coords: &[Rat]) -> String {
    let mut out = String::new();
    for (label, c) in labels.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            if a.is_integer() {
                out.push_str(&a.numer().to_string());
            } else {
                out.push_str(&format!("({})", format_rat(&a)));
            }
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
