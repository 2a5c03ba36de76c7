//! Small finite fields `F_{p^e}` with `p ∈ {2, 3, 5, 7}` and at most 512 elements.
//!
//! An element is stored as an integer whose base-`p` digits are the
//! coefficients of a polynomial in `x`, constant term first, reduced modulo
//! the Conway polynomial of the field. Those polynomials are primitive, so `x`
//! generates the multiplicative group and multiplication runs on log tables.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u32 = 512;

/// `(p, e, c_0, ..., c_{e-1})`: the monic modulus is `x^e + c_{e-1} x^{e-1} + ... + c_0`.
pub const CONWAY_POLYNOMIALS: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (3, 1, &[1]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (5, 1, &[3]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (7, 1, &[4]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
];

/// Element of a [`FiniteField`]; `Fq(0)` is zero and `Fq(1)` is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u16);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    /// `exp[i] = x^i` for `0 <= i < 2(order - 1)`.
    exp: Vec<u16>,
    log: Vec<u32>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

fn digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Splits `order = p^e` for a supported prime.
pub fn prime_power(order: u64) -> Option<(u32, u32)> {
    for p in [2u64, 3, 5, 7] {
        let (mut n, mut e) = (order, 0);
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if n == 1 && e > 0 {
            return Some((p as u32, e));
        }
    }
    None
}

impl FiniteField {
    /// Shared field of the given order.
    pub fn get(order: u64) -> Result<&'static FiniteField> {
        static FIELDS: OnceLock<Vec<OnceLock<FiniteField>>> = OnceLock::new();
        let slots = FIELDS.get_or_init(|| CONWAY_POLYNOMIALS.iter().map(|_| OnceLock::new()).collect());
        let (p, e) = prime_power(order).ok_or(Error::UnsupportedField(order))?;
        let idx = CONWAY_POLYNOMIALS
            .iter()
            .position(|&(pp, ee, _)| pp == p && ee == e)
            .ok_or(Error::UnsupportedField(order))?;
        Ok(slots[idx].get_or_init(|| FiniteField::build(p, e, CONWAY_POLYNOMIALS[idx].2)))
    }

    fn build(p: u32, e: u32, modulus: &[u32]) -> FiniteField {
        let order = p.pow(e);
        let mut add = vec![0u16; (order * order) as usize];
        let mut neg = vec![0u16; order as usize];
        for a in 0..order {
            let da = digits(a, p, e);
            let dn: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = undigits(&dn, p) as u16;
            for b in 0..order {
                let db = digits(b, p, e);
                let ds: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * order + b) as usize] = undigits(&ds, p) as u16;
            }
        }
        // repeated multiplication by x modulo the Conway polynomial
        let times_x = |a: u32| -> u32 {
            let d = digits(a, p, e);
            let top = d[e as usize - 1];
            let mut out = vec![0u32; e as usize];
            for i in (1..e as usize).rev() {
                out[i] = d[i - 1];
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o = (*o + (p - top * modulus[i] % p)) % p;
            }
            undigits(&out, p)
        };
        let n = order - 1;
        let mut exp = vec![0u16; 2 * n as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = 1u32;
        for i in 0..n {
            assert!(log[cur as usize] == u32::MAX, "modulus for F_{order} is not primitive");
            exp[i as usize] = cur as u16;
            log[cur as usize] = i;
            cur = times_x(cur);
        }
        assert_eq!(cur, 1, "x does not have order {n} in F_{order}");
        for i in n..2 * n {
            exp[i as usize] = exp[(i - n) as usize];
        }
        FiniteField { p, degree: e, order, modulus: modulus.to_vec(), add, neg, exp, log }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.order as u16).map(Fq)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fq> {
        (1..self.order as u16).map(Fq)
    }

    /// Image of an integer under `Z -> F`.
    pub fn from_int(&self, k: i64) -> Fq {
        Fq(k.rem_euclid(self.p as i64) as u16)
    }

    /// The generator `x` of the multiplicative group.
    pub fn generator(&self) -> Fq {
        Fq(self.exp[1 % (self.order - 1) as usize])
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.add[a.0 as usize * self.order as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        Fq(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        let n = self.order - 1;
        Some(Fq(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.is_zero() {
            return Fq::ZERO;
        }
        let n = (self.order - 1) as u64;
        Fq(self.exp[((self.log[a.0 as usize] as u64 * (e % n)) % n) as usize])
    }

    /// `a^q`; for `q` a power of the characteristic this is a field automorphism.
    pub fn frobenius(&self, a: Fq, q: u64) -> Fq {
        self.pow(a, q)
    }

    /// Artin-Schreier map `ζ ↦ ζ^q - ζ`.
    pub fn artin_schreier(&self, z: Fq, q: u64) -> Fq {
        self.sub(self.pow(z, q), z)
    }

    /// Does this field contain `F_q` (so that `x ↦ x^q` is an automorphism)?
    pub fn contains_subfield(&self, q: u64) -> bool {
        match prime_power(q) {
            Some((p, e)) => p == self.p && self.degree.is_multiple_of(e),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_entry_is_a_primitive_field() {
        for &(p, e, _) in CONWAY_POLYNOMIALS {
            let order = p.pow(e) as u64;
            assert!(order <= MAX_FIELD_ORDER as u64);
            let f = FiniteField::get(order).unwrap();
            assert_eq!(f.order() as u64, order);
            // x^q = x for all x; Frobenius by p is a bijection
            let mut seen = std::collections::HashSet::new();
            for a in f.elements() {
                assert_eq!(f.pow(a, order), a);
                assert!(seen.insert(f.frobenius(a, p as u64)));
            }
        }
    }

    #[test]
    fn field_axioms_on_small_fields() {
        for order in [4u64, 8, 9, 25, 27, 49] {
            let f = FiniteField::get(order).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, Fq::ZERO), a);
                assert_eq!(f.mul(a, Fq::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FiniteField::get(27).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frobenius(f.add(a, b), 3), f.add(f.frobenius(a, 3), f.frobenius(b, 3)));
            }
        }
    }

    #[test]
    fn subfield_is_fixed_by_frobenius() {
        let f = FiniteField::get(16).unwrap();
        assert_eq!(f.elements().filter(|&a| f.frobenius(a, 4) == a).count(), 4);
        assert_eq!(f.elements().filter(|&a| f.frobenius(a, 2) == a).count(), 2);
        assert!(f.contains_subfield(4));
        assert!(!f.contains_subfield(8));
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(FiniteField::get(6).unwrap_err(), Error::UnsupportedField(6));
        assert!(FiniteField::get(1024).is_err());
        assert!(FiniteField::get(11).is_err());
    }

    #[test]
    fn prime_field_embedding() {
        let f = FiniteField::get(9).unwrap();
        assert_eq!(f.from_int(-1), f.neg(Fq::ONE));
        assert_eq!(f.from_int(4), Fq::ONE);
    }
}
