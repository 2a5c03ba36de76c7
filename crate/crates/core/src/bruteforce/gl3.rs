//! The explicit varieties attached to `X_{w₀}(w₀)` in `GL_3`, counted over `F_{q^k}`.
//!
//! `X_full` is the set of `(a, b, c)` with `c^q - c - a(b^q - b)` and
//! `c^q - c - a^q(b^q - b)` both nonzero; the quotient by the free action of
//! `D(U)^F ≅ F_q` is the set of `(a, b, C)` with `C ≠ 0` and
//! `C ≠ (a^q - a)(b^q - b)`, which splits into the closed piece `a ∈ F_q` and
//! its open complement.
//!
//! Rational points of the quotient variety are not the same as `D(U)^F`-orbits
//! on rational points of `X_full`: a rational `(a, b, C)` lifts to a rational
//! `c` only when `C + a(b^q - b)` is in the image of `c ↦ c^q - c`. Both
//! counts are reported.

use rayon::prelude::*;
use serde::Serialize;

use super::field::FiniteField;
use crate::error::{Error, Result};

pub const GL3_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gl3Example {
    pub x_full: u128,
    /// Rational points of the closed and open pieces of the quotient variety.
    pub x_closed: u128,
    pub x_open: u128,
    pub quotient: u128,
    /// `D(U)^F`-orbits on the rational points of `X_full` over `a ∈ F_q` and `a ∉ F_q`.
    pub orbits_closed: u128,
    pub orbits_open: u128,
}

pub fn gl3_example_counts(q: u64, k: u32) -> Result<Gl3Example> {
    let order = q.checked_pow(k).ok_or(Error::UnsupportedField(u64::MAX))?;
    let f = FiniteField::get(order)?;
    if !f.contains_subfield(q) {
        return Err(Error::UnsupportedField(q));
    }
    let cube = (order as u128).pow(3);
    if cube > GL3_BUDGET {
        return Err(Error::BudgetExceeded { what: "triples over F_q^k".into(), needed: cube, limit: GL3_BUDGET });
    }
    let counts: Vec<[u128; 6]> = f
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            let mut acc = [0u128; 6];
            let aq = f.frobenius(a, q);
            let da = f.sub(aq, a);
            for b in f.elements() {
                let db = f.artin_schreier(b, q);
                for c in f.elements() {
                    let dc = f.artin_schreier(c, q);
                    if f.sub(dc, f.mul(a, db)) != super::field::Fq::ZERO && f.sub(dc, f.mul(aq, db)) != super::field::Fq::ZERO {
                        acc[0] += 1;
                        acc[if da.is_zero() { 4 } else { 5 }] += 1;
                    }
                    // c plays the role of C in the quotient
                    let in_quotient = !c.is_zero() && f.sub(c, f.mul(da, db)) != super::field::Fq::ZERO;
                    if in_quotient {
                        acc[3] += 1;
                        if da.is_zero() {
                            acc[1] += 1;
                        } else {
                            acc[2] += 1;
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let mut t = [0u128; 6];
    for c in counts {
        for i in 0..6 {
            t[i] += c[i];
        }
    }
    let q = q as u128;
    assert!(t[4] % q == 0 && t[5] % q == 0, "D(U)^F acts freely on rational points");
    Ok(Gl3Example {
        x_full: t[0],
        x_closed: t[1],
        x_open: t[2],
        quotient: t[3],
        orbits_closed: t[4] / q,
        orbits_open: t[5] / q,
    })
}
