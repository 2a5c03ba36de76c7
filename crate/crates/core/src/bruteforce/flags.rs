//! Matrices over small fields and complete flags `gB` of `GL_n`.
//!
//! A flag is stored as its column-reduced representative: column `j` has a 1
//! in its lowest nonzero row (the pivot), zeros below it and zeros in the
//! pivot rows of earlier columns. Right multiplication by invertible upper
//! triangular matrices does not change it.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::field::{FiniteField, Fq};
use crate::error::{Error, Result};
use crate::root_weyl::{build_root_system, RootSystem, WeylElement};

pub const MAX_N: usize = 4;
pub const FLAG_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    n: usize,
    /// Row-major.
    entries: Vec<Fq>,
}

impl FqMatrix {
    pub fn zero(n: usize) -> FqMatrix {
        FqMatrix { n, entries: vec![Fq::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> FqMatrix {
        let mut m = FqMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fq>]) -> FqMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        FqMatrix { n, entries: rows.concat() }
    }

    /// Permutation matrix with a 1 at `(perm[j], j)`.
    pub fn permutation(perm: &[usize]) -> FqMatrix {
        let mut m = FqMatrix::zero(perm.len());
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, Fq::ONE);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fq) {
        self.entries[i * self.n + j] = x;
    }

    pub fn mul(&self, f: &FiniteField, other: &FqMatrix) -> FqMatrix {
        let n = self.n;
        let mut out = FqMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Fq::ZERO;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` for singular matrices.
    pub fn inverse(&self, f: &FiniteField) -> Option<FqMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = FqMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let s = f.inv(a.get(col, col)).unwrap();
            for j in 0..n {
                a.set(col, j, f.mul(s, a.get(col, j)));
                inv.set(col, j, f.mul(s, inv.get(col, j)));
            }
            for r in 0..n {
                let c = a.get(r, col);
                if r != col && !c.is_zero() {
                    for j in 0..n {
                        a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(col, j))));
                        inv.set(r, j, f.sub(inv.get(r, j), f.mul(c, inv.get(col, j))));
                    }
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    /// Entrywise `x ↦ x^q`.
    pub fn frobenius(&self, f: &FiniteField, q: u64) -> FqMatrix {
        FqMatrix { n: self.n, entries: self.entries.iter().map(|&x| f.frobenius(x, q)).collect() }
    }

    /// `w₀ g`: the rows in reverse order.
    pub fn reverse_rows(&self) -> FqMatrix {
        let n = self.n;
        let mut out = FqMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(n - 1 - i, j, self.get(i, j));
            }
        }
        out
    }

    /// Rank of the submatrix on `rows × cols`.
    pub fn rank_of(&self, f: &FiniteField, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> usize {
        let mut m: Vec<Vec<Fq>> = rows.map(|i| cols.clone().map(|j| self.get(i, j)).collect()).collect();
        let width = cols.len();
        let mut rank = 0;
        for c in 0..width {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            let s = f.inv(m[rank][c]).unwrap();
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let factor = f.mul(m[r][c], s);
                    for j in 0..width {
                        m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Canonical representative of a coset `gB`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    matrix: FqMatrix,
    pivots: Vec<usize>,
}

impl Flag {
    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }

    /// Pivot row of each column; the permutation `w` with `gB ∈ BwB/B`.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Column reduction of an invertible matrix; errors on singular input.
pub fn canonicalize(f: &FiniteField, g: &FqMatrix) -> Result<Flag> {
    let n = g.n;
    let mut m = g.clone();
    let mut pivots: Vec<usize> = Vec::with_capacity(n);
    for j in 0..n {
        for (i, &p) in pivots.iter().enumerate() {
            let c = m.get(p, j);
            if !c.is_zero() {
                for r in 0..n {
                    m.set(r, j, f.sub(m.get(r, j), f.mul(c, m.get(r, i))));
                }
            }
        }
        let p = (0..n)
            .rev()
            .find(|&r| !m.get(r, j).is_zero())
            .ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
        let s = f.inv(m.get(p, j)).unwrap();
        for r in 0..n {
            m.set(r, j, f.mul(s, m.get(r, j)));
        }
        pivots.push(p);
    }
    Ok(Flag { matrix: m, pivots })
}

/// Root system `A_{n-1}` of `GL_n`.
pub fn gl_system(n: usize) -> Result<RootSystem> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::Precondition(format!("GL_{n} is outside the supported range")));
    }
    build_root_system('A', n - 1)
}

/// The Weyl element `ε_j ↦ ε_{perm[j]}` of `A_{n-1}`.
pub fn permutation_to_element(rs: RootSystem, perm: &[usize]) -> WeylElement {
    let mut p = perm.to_vec();
    let mut letters = Vec::new();
    while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        letters.push(i);
    }
    letters.reverse();
    rs.element_from_word(&letters).expect("letters within rank")
}

pub fn element_to_permutation(w: &WeylElement) -> Vec<usize> {
    let mut p: Vec<usize> = (0..=w.rank()).collect();
    for i in w.canonical_word() {
        p.swap(i, i + 1);
    }
    p
}

pub fn bruhat_cell(flag: &Flag) -> WeylElement {
    let rs = build_root_system('A', flag.pivots.len() - 1).expect("supported rank");
    permutation_to_element(rs, &flag.pivots)
}

/// `v` with `gB ∈ B⁻vB/B`, read off as `w₀ · bruhat_cell(w₀ g)`.
pub fn opposite_cell(f: &FiniteField, flag: &Flag) -> WeylElement {
    let reversed = canonicalize(f, &flag.matrix.reverse_rows()).expect("invertible");
    let u = bruhat_cell(&reversed);
    u.system().longest_element() * u
}

fn field_for(q: u64, k: u32) -> Result<&'static FiniteField> {
    let order = q.checked_pow(k).ok_or(Error::UnsupportedField(u64::MAX))?;
    FiniteField::get(order)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let rs = build_root_system('A', n - 1).expect("supported rank");
    rs.elements().iter().map(element_to_permutation).collect()
}

fn check_budget(what: &str, needed: u128) -> Result<()> {
    if needed > FLAG_BUDGET {
        return Err(Error::BudgetExceeded { what: what.to_string(), needed, limit: FLAG_BUDGET });
    }
    Ok(())
}

/// Free positions `(row, col)` of the canonical flags in the cell of `perm`.
fn free_positions(perm: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (j, &pj) in perm.iter().enumerate() {
        for r in 0..pj {
            if !perm[..j].contains(&r) {
                out.push((r, j));
            }
        }
    }
    out
}

/// The `index`-th canonical flag in the cell of `perm`, digits of `index` in base `|F|`.
fn cell_flag(f: &FiniteField, perm: &[usize], free: &[(usize, usize)], mut index: u64) -> Flag {
    let mut m = FqMatrix::permutation(perm);
    for &(r, j) in free {
        m.set(r, j, Fq((index % f.order() as u64) as u16));
        index /= f.order() as u64;
    }
    Flag { matrix: m, pivots: perm.to_vec() }
}

fn cell_size(f: &FiniteField, free: &[(usize, usize)]) -> u64 {
    (f.order() as u64).pow(free.len() as u32)
}

fn flag_count(n: usize, order: u128) -> u128 {
    (1..=n as u32).map(|i| (0..i).map(|e| order.pow(e)).sum::<u128>()).product()
}

/// All flags of `GL_n(F_q)`, cell by cell.
pub fn enumerate_flags(n: usize, q: u64) -> Result<Vec<Flag>> {
    gl_system(n)?;
    let f = field_for(q, 1)?;
    check_budget("flags of G/B", flag_count(n, q as u128))?;
    let mut out = Vec::new();
    for perm in permutations(n) {
        let free = free_positions(&perm);
        out.extend((0..cell_size(f, &free)).map(|i| cell_flag(f, &perm, &free, i)));
    }
    Ok(out)
}

/// `#{gB ∈ BwB/B ∩ B⁻vB/B}` over `F_q`.
pub fn double_cell_count(n: usize, q: u64, w: &WeylElement, v: &WeylElement) -> Result<u128> {
    let rs = gl_system(n)?;
    if w.system() != rs || v.system() != rs {
        return Err(Error::MismatchedSystems { left: w.cartan_type().to_string(), right: rs.cartan_type().to_string() });
    }
    let f = field_for(q, 1)?;
    let perm = element_to_permutation(w);
    let free = free_positions(&perm);
    let size = cell_size(f, &free);
    check_budget("flags in the Bruhat cell", size as u128)?;
    let count = (0..size)
        .into_par_iter()
        .filter(|&i| {
            let flag = cell_flag(f, &perm, &free, i);
            debug_assert_eq!(bruhat_cell(&flag), *w);
            opposite_cell(f, &flag) == *v
        })
        .count();
    Ok(count as u128)
}

/// Every nonzero `double_cell_count(n, q, w, v)`, from one pass over `G/B`.
pub fn double_cell_table(n: usize, q: u64) -> Result<BTreeMap<(WeylElement, WeylElement), u128>> {
    let f = field_for(q, 1)?;
    let flags = enumerate_flags(n, q)?;
    let pairs: Vec<(WeylElement, WeylElement)> =
        flags.par_iter().map(|fl| (bruhat_cell(fl), opposite_cell(f, fl))).collect();
    let mut out = BTreeMap::new();
    for p in pairs {
        *out.entry(p).or_insert(0) += 1;
    }
    Ok(out)
}

fn in_dl_variety(f: &FiniteField, q: u64, flag: &Flag, w: &WeylElement) -> bool {
    let g = flag.matrix();
    let h = g.inverse(f).expect("invertible").mul(f, &g.frobenius(f, q));
    bruhat_cell(&canonicalize(f, &h).expect("invertible")) == *w
}

/// `#X_x(w)(F_{q^k})`: flags in `BxB/B` with `g⁻¹F(g) ∈ BwB`.
pub fn dl_piece_count(n: usize, q: u64, w: &WeylElement, x: &WeylElement, k: u32) -> Result<u128> {
    let rs = gl_system(n)?;
    if w.system() != rs || x.system() != rs {
        return Err(Error::MismatchedSystems { left: w.cartan_type().to_string(), right: rs.cartan_type().to_string() });
    }
    let f = field_for(q, k)?;
    let perm = element_to_permutation(x);
    let free = free_positions(&perm);
    let size = cell_size(f, &free);
    check_budget("flags in the Bruhat cell", size as u128)?;
    let count = (0..size).into_par_iter().filter(|&i| in_dl_variety(f, q, &cell_flag(f, &perm, &free, i), w)).count();
    Ok(count as u128)
}

/// `#X(w)(F_{q^k})` in one pass over all flags, without splitting by cells.
pub fn dl_variety_count(n: usize, q: u64, w: &WeylElement, k: u32) -> Result<u128> {
    gl_system(n)?;
    let f = field_for(q, k)?;
    check_budget("flags of G/B", flag_count(n, f.order() as u128))?;
    let mut flags = Vec::new();
    for perm in permutations(n) {
        let free = free_positions(&perm);
        flags.extend((0..cell_size(f, &free)).map(|i| cell_flag(f, &perm, &free, i)));
    }
    Ok(flags.par_iter().filter(|fl| in_dl_variety(f, q, fl, w)).count() as u128)
}
