//! Point-count polynomials of Deodhar cells and double Schubert cells, and
//! the R-polynomial recursion used as an independent check.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::deodhar::{distinguished_by_endpoint, enumerate_distinguished, CellShape, ReducedWord};
use crate::root_weyl::WeylElement;

/// Dense integer polynomial in `q`, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> IntPolynomial {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> IntPolynomial {
        IntPolynomial::new(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> IntPolynomial {
        IntPolynomial::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn pow(&self, e: usize) -> IntPolynomial {
        (0..e).fold(IntPolynomial::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, q: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * q as i128 + c as i128)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = match (first, c < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = c.unsigned_abs();
            let body = match (d, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "q".to_string(),
                (1, m) => format!("{m}q"),
                (d, 1) => format!("q^{d}"),
                (d, m) => format!("{m}q^{d}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &IntPolynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        IntPolynomial::new((0..n).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> IntPolynomial {
        iter.fold(IntPolynomial::zero(), |acc, p| &acc + &p)
    }
}

/// `q^n (q-1)^m`: rational points of `(G_a)^n x (G_m)^m`.
pub fn cell_count_poly(shape: CellShape) -> IntPolynomial {
    let q = IntPolynomial::q();
    let q_minus_one = &q - &IntPolynomial::one();
    &q.pow(shape.n_affine) * &q_minus_one.pow(shape.m_torus)
}

/// Sum of the cell polynomials over the distinguished subexpressions ending at `v`.
pub fn deodhar_poly(word: &ReducedWord, v: &WeylElement) -> IntPolynomial {
    enumerate_distinguished(word, v)
        .iter()
        .map(|g| cell_count_poly(g.cell_shape().expect("distinguished")))
        .sum()
}

/// [`deodhar_poly`] for every endpoint at once.
pub fn deodhar_polys_by_endpoint(word: &ReducedWord) -> BTreeMap<WeylElement, IntPolynomial> {
    distinguished_by_endpoint(word)
        .into_iter()
        .map(|(v, cells)| {
            let poly = cells.iter().map(|g| cell_count_poly(g.cell_shape().expect("distinguished"))).sum();
            (v, poly)
        })
        .collect()
}

/// `q^{l(w)}`: rational points of the Schubert cell `BwB/B`.
pub fn schubert_cell_poly(w: &WeylElement) -> IntPolynomial {
    IntPolynomial::q().pow(w.length())
}

/// Which descent of `w` the R-polynomial recursion peels off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum DescentRule {
    /// Smallest-index left descent.
    #[default]
    SmallestLeft,
    /// Largest-index left descent.
    LargestLeft,
    /// Smallest-index right descent.
    SmallestRight,
}

/// Memoized Kazhdan-Lusztig R-polynomials.
///
/// With a descent `s` of `w`: `R_{v,w} = R_{sv,sw}` if `sv < v`, otherwise
/// `R_{v,w} = (q-1) R_{v,sw} + q R_{sv,sw}`; `R_{w,w} = 1` and
/// `R_{v,w} = 0` unless `v <= w`. Right descents use the mirrored rule.
#[derive(Debug, Default)]
pub struct RPolynomials {
    rule: DescentRule,
    cache: HashMap<(WeylElement, WeylElement), IntPolynomial>,
}

impl RPolynomials {
    pub fn new() -> RPolynomials {
        RPolynomials::default()
    }

    pub fn with_rule(rule: DescentRule) -> RPolynomials {
        RPolynomials { rule, cache: HashMap::new() }
    }

    pub fn get(&mut self, v: &WeylElement, w: &WeylElement) -> IntPolynomial {
        if let Some(p) = self.cache.get(&(*v, *w)) {
            return p.clone();
        }
        let value = self.compute(v, w);
        self.cache.insert((*v, *w), value.clone());
        value
    }

    fn compute(&mut self, v: &WeylElement, w: &WeylElement) -> IntPolynomial {
        if v == w {
            return IntPolynomial::one();
        }
        if !v.bruhat_leq(w) {
            return IntPolynomial::zero();
        }
        let (sv, sw, s_lowers_v) = match self.rule {
            DescentRule::SmallestLeft | DescentRule::LargestLeft => {
                let ds = w.left_descents();
                let s = if self.rule == DescentRule::SmallestLeft { ds[0] } else { *ds.last().unwrap() };
                let sv = v.left_mul_simple(s);
                (sv, w.left_mul_simple(s), sv.length() < v.length())
            }
            DescentRule::SmallestRight => {
                let s = w.right_descents()[0];
                let vs = v.right_mul_simple(s);
                (vs, w.right_mul_simple(s), vs.length() < v.length())
            }
        };
        if s_lowers_v {
            self.get(&sv, &sw)
        } else {
            let q = IntPolynomial::q();
            let q_minus_one = &q - &IntPolynomial::one();
            &(&q_minus_one * &self.get(v, &sw)) + &(&q * &self.get(&sv, &sw))
        }
    }
}

/// One-off R-polynomial with the default descent rule.
pub fn r_polynomial(v: &WeylElement, w: &WeylElement) -> IntPolynomial {
    RPolynomials::new().get(v, w)
}

/// One CSV row comparing the two polynomial routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyRow {
    #[serde(rename = "type")]
    pub family: char,
    pub rank: usize,
    pub word: String,
    pub v: String,
    pub coefficients: String,
    pub oracle_match: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_weyl::build_root_system;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    #[test]
    fn polynomial_arithmetic() {
        let q = IntPolynomial::q();
        let one = IntPolynomial::one();
        assert_eq!((&q - &one).pow(2), p(&[1, -2, 1]));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(p(&[-1, 2, -2, 1]).eval(2), 3);
        assert_eq!(p(&[-1, 2, -2, 1]).to_string(), "q^3 - 2q^2 + 2q - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(p(&[3, 0, 0, 0, 0]).coeffs(), &[3]);
    }

    #[test]
    fn cell_count_examples() {
        let shape = |n, m| CellShape { n_affine: n, m_torus: m };
        assert_eq!(cell_count_poly(shape(0, 3)), p(&[-1, 3, -3, 1]));
        assert_eq!(cell_count_poly(shape(1, 1)), p(&[0, -1, 1]));
        assert_eq!(cell_count_poly(shape(0, 0)), IntPolynomial::one());
    }

    #[test]
    fn deodhar_poly_examples() {
        let rs = build_root_system('A', 2).unwrap();
        let sts = ReducedWord::parse(rs, "sts").unwrap();
        assert_eq!(deodhar_poly(&sts, &rs.identity()), p(&[-1, 2, -2, 1]));
        let s = ReducedWord::parse(rs, "s").unwrap();
        assert_eq!(deodhar_poly(&s, &rs.identity()), p(&[-1, 1]));
        assert_eq!(deodhar_poly(&sts, &sts.target()), IntPolynomial::one());
        assert_eq!(deodhar_poly(&s, &rs.parse_element("t").unwrap()), IntPolynomial::zero());
    }

    #[test]
    fn r_polynomial_examples() {
        let rs = build_root_system('A', 2).unwrap();
        let e = rs.identity();
        for w in rs.elements() {
            assert_eq!(r_polynomial(w, w), IntPolynomial::one());
        }
        assert_eq!(r_polynomial(&e, &rs.parse_element("s").unwrap()), p(&[-1, 1]));
        assert_eq!(r_polynomial(&e, &rs.longest_element()), p(&[-1, 2, -2, 1]));
        assert!(r_polynomial(&rs.parse_element("t").unwrap(), &rs.parse_element("s").unwrap()).is_zero());
    }

    #[test]
    fn r_polynomial_is_descent_independent() {
        for (f, n) in [('A', 3), ('B', 3), ('G', 2)] {
            let rs = build_root_system(f, n).unwrap();
            let mut rules: Vec<RPolynomials> =
                [DescentRule::SmallestLeft, DescentRule::LargestLeft, DescentRule::SmallestRight]
                    .into_iter()
                    .map(RPolynomials::with_rule)
                    .collect();
            for w in rs.elements() {
                for v in rs.elements() {
                    let base = rules[0].get(v, w);
                    for r in rules.iter_mut().skip(1) {
                        assert_eq!(r.get(v, w), base, "{f}{n} v={v} w={w}");
                    }
                }
            }
        }
    }

    #[test]
    fn schubert_cells_sum_to_flag_count() {
        let rs = build_root_system('A', 2).unwrap();
        assert_eq!(schubert_cell_poly(&rs.identity()), IntPolynomial::one());
        assert_eq!(schubert_cell_poly(&rs.longest_element()), IntPolynomial::q().pow(3));
        let total: i128 = rs.elements().iter().map(|w| schubert_cell_poly(w).eval(2)).sum();
        assert_eq!(total, 21);
    }
}
