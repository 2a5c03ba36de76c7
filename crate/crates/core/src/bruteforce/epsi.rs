//! The idempotent `e_ψ = (1/|U|) Σ ψ(u⁻¹) u` in the group algebra of a small
//! unipotent group, checked in exact cyclotomic arithmetic.

use std::collections::BTreeSet;

use serde::Serialize;

use super::cyclotomic::{CyclotomicRational, Rational};
use crate::error::{Error, Result};

/// Upper unitriangular `n × n` matrices over `F_p`.
#[derive(Clone, Debug)]
pub struct UnipotentGroup {
    n: usize,
    p: u32,
    elements: Vec<Vec<u32>>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

/// The supported groups: `U` of `GL_2(F_2)`, `GL_2(F_3)` and `GL_3(F_2)`.
pub const SUPPORTED_GROUPS: [(usize, u32); 3] = [(2, 2), (2, 3), (3, 2)];

impl UnipotentGroup {
    pub fn new(n: usize, p: u32) -> Result<UnipotentGroup> {
        if !SUPPORTED_GROUPS.contains(&(n, p)) {
            return Err(Error::Precondition(format!("U of GL_{n}(F_{p}) is not supported")));
        }
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let order = (p as usize).pow(slots.len() as u32);
        let elements: Vec<Vec<u32>> = (0..order)
            .map(|mut idx| {
                let mut m = vec![0u32; n * n];
                for i in 0..n {
                    m[i * n + i] = 1;
                }
                for &(i, j) in &slots {
                    m[i * n + j] = (idx % p as usize) as u32;
                    idx /= p as usize;
                }
                m
            })
            .collect();
        let find = |m: &Vec<u32>| elements.iter().position(|e| e == m).expect("closed under products");
        let mul = |a: &[u32], b: &[u32]| -> Vec<u32> {
            (0..n * n).map(|ij| (0..n).map(|k| a[(ij / n) * n + k] * b[k * n + ij % n]).sum::<u32>() % p).collect()
        };
        let table: Vec<Vec<usize>> = elements.iter().map(|a| elements.iter().map(|b| find(&mul(a, b))).collect()).collect();
        let inverse = (0..order).map(|a| (0..order).find(|&b| table[a][b] == 0).unwrap()).collect();
        Ok(UnipotentGroup { n, p, elements, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn label(&self) -> String {
        format!("U(GL{}(F{}))", self.n, self.p)
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> BTreeSet<usize> {
        let n = self.order();
        let mut sub: BTreeSet<usize> = BTreeSet::from([0]);
        for a in 0..n {
            for b in 0..n {
                sub.insert(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        loop {
            let prods: Vec<usize> = sub.iter().flat_map(|&a| sub.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
            let before = sub.len();
            sub.extend(prods);
            if sub.len() == before {
                return sub;
            }
        }
    }

    /// Every homomorphism `U → Z/p`, as exponent tables, found by exhaustive search.
    pub fn linear_characters(&self) -> Vec<Vec<u32>> {
        let n = self.order();
        let total = (self.p as usize).pow(n as u32);
        (0..total)
            .map(|mut idx| {
                (0..n)
                    .map(|_| {
                        let d = (idx % self.p as usize) as u32;
                        idx /= self.p as usize;
                        d
                    })
                    .collect::<Vec<u32>>()
            })
            .filter(|k| self.is_homomorphism(k))
            .collect()
    }

    fn is_homomorphism(&self, k: &[u32]) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| k[self.mul(a, b)] == (k[a] + k[b]) % self.p))
    }

    /// Entries `(i, i+1)`: coordinates of the image in `U/D(U)`.
    pub fn simple_coordinates(&self, a: usize) -> Vec<u32> {
        (0..self.n - 1).map(|i| self.elements[a][i * self.n + i + 1]).collect()
    }
}

type GroupAlgebraElement = Vec<CyclotomicRational>;

fn algebra_mul(g: &UnipotentGroup, x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> GroupAlgebraElement {
    let mut out = vec![CyclotomicRational::zero(g.p); g.order()];
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if !yb.is_zero() {
                let c = g.mul(a, b);
                out[c] = &out[c] + &(xa * yb);
            }
        }
    }
    out
}

fn basis(g: &UnipotentGroup, a: usize) -> GroupAlgebraElement {
    let mut out = vec![CyclotomicRational::zero(g.p); g.order()];
    out[a] = CyclotomicRational::one(g.p);
    out
}

/// `e_ψ` for `ψ(u) = ζ_p^{k(u)}`.
pub fn e_psi(g: &UnipotentGroup, k: &[u32]) -> GroupAlgebraElement {
    let scale = Rational::new(1, g.order() as i128);
    (0..g.order()).map(|u| CyclotomicRational::zeta_pow(g.p, -(k[u] as i64)).scale(scale)).collect()
}

/// Rank over `Q(ζ_p)` of a list of vectors.
pub fn rank(mut rows: Vec<Vec<CyclotomicRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = rows[r][c].inverse().expect("nonzero");
        let pivot_row: Vec<CyclotomicRational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * pv);
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EPsiReport {
    pub group: String,
    pub order: usize,
    pub derived_order: usize,
    pub psi: Vec<u32>,
    pub idempotent: bool,
    pub central: bool,
    pub image_rank: usize,
}

impl EPsiReport {
    pub fn passed(&self) -> bool {
        self.idempotent && self.central && self.image_rank == 1
    }
}

pub fn e_psi_check(g: &UnipotentGroup, k: &[u32]) -> Result<EPsiReport> {
    if k.len() != g.order() || k.iter().any(|&x| x >= g.p) {
        return Err(Error::Precondition(format!("character table must list {} exponents mod {}", g.order(), g.p)));
    }
    let derived = g.derived_subgroup();
    if derived.iter().any(|&d| k[d] != 0) {
        return Err(Error::NotTrivialOnDerived);
    }
    if !g.is_homomorphism(k) {
        return Err(Error::NotLinear);
    }
    let e = e_psi(g, k);
    let idempotent = algebra_mul(g, &e, &e) == e;
    let central = (0..g.order()).all(|u| {
        let bu = basis(g, u);
        algebra_mul(g, &e, &bu) == algebra_mul(g, &bu, &e)
    });
    let image: Vec<Vec<CyclotomicRational>> = (0..g.order()).map(|u| algebra_mul(g, &basis(g, u), &e)).collect();
    Ok(EPsiReport {
        group: g.label(),
        order: g.order(),
        derived_order: derived.len(),
        psi: k.to_vec(),
        idempotent,
        central,
        image_rank: rank(image),
    })
}
