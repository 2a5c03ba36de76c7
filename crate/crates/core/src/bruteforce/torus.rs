//! Orders of the finite tori `T^{wF}` of `GL_n`.

use super::field::FiniteField;
use super::flags::element_to_permutation;
use crate::error::{Error, Result};
use crate::root_weyl::{Family, WeylElement};

fn require_gl(w: &WeylElement) -> Result<Vec<usize>> {
    if w.cartan_type().family != Family::A {
        return Err(Error::Precondition(format!("{} is not the Weyl group of some GL_n", w.cartan_type())));
    }
    Ok(element_to_permutation(w))
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// `|det(q·Id - A_w)|` with `A_w e_j = e_{w(j)}` on the cocharacter lattice.
pub fn torus_order(w: &WeylElement, q: u64) -> Result<u128> {
    let perm = require_gl(w)?;
    let n = perm.len();
    let mut m = vec![vec![0i128; n]; n];
    for (j, &i) in perm.iter().enumerate() {
        m[j][j] += q as i128;
        m[i][j] -= 1;
    }
    Ok(bareiss_determinant(m).unsigned_abs())
}

/// Cycle lengths of `w` as a permutation, in decreasing order.
pub fn cycle_type(w: &WeylElement) -> Result<Vec<usize>> {
    let perm = require_gl(w)?;
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Counts diagonal `t` over `F_{q^L}` with `t_{w(j)} = t_j^q`, where `L` is
/// the order of `w`; every fixed point of `wF` lives there.
pub fn torus_order_brute_force(w: &WeylElement, q: u64) -> Result<u128> {
    let perm = require_gl(w)?;
    let cycles = cycle_type(w)?;
    let lcm = cycles.iter().fold(1u32, |acc, &c| {
        let c = c as u32;
        let g = (1..=acc.min(c)).rev().find(|d| acc % d == 0 && c.is_multiple_of(*d)).unwrap();
        acc / g * c
    });
    let order = q.checked_pow(lcm).ok_or(Error::UnsupportedField(u64::MAX))?;
    let f = FiniteField::get(order)?;
    let n = perm.len();
    let units: Vec<_> = f.nonzero().collect();
    let total = (units.len() as u128).pow(n as u32);
    if total > super::flags::FLAG_BUDGET * 10 {
        return Err(Error::BudgetExceeded { what: "diagonal tuples".into(), needed: total, limit: super::flags::FLAG_BUDGET * 10 });
    }
    let mut count = 0;
    let mut idx = vec![0usize; n];
    'outer: loop {
        if (0..n).all(|j| units[idx[perm[j]]] == f.frobenius(units[idx[j]], q)) {
            count += 1;
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < units.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    Ok(count)
}
