//! Exact arithmetic in `Q(ζ_p)` for small primes `p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i128>;

/// `Σ c_j ζ^j` over the basis `1, ζ, ..., ζ^{p-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicRational {
    p: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicRational {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 2, "p must be prime");
        CyclotomicRational { p, coeffs: vec![Rational::zero(); p as usize - 1] }
    }

    pub fn from_rational(p: u32, r: Rational) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = r;
        out
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational::one())
    }

    /// `ζ_p^k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut full = vec![Rational::zero(); p as usize];
        full[k.rem_euclid(p as i64) as usize] = Rational::one();
        Self::reduce(p, full)
    }

    /// Folds a vector over `1, ..., ζ^{p-1}` using `ζ^{p-1} = -(1 + ... + ζ^{p-2})`.
    fn reduce(p: u32, mut full: Vec<Rational>) -> Self {
        let top = full.pop().unwrap();
        for c in full.iter_mut() {
            *c -= top;
        }
        CyclotomicRational { p, coeffs: full }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: Rational) -> Self {
        CyclotomicRational { p: self.p, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse by solving `self · x = 1` over `Q`.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.coeffs.len();
        // column j of the matrix is self · ζ^j
        let cols: Vec<Self> = (0..d).map(|j| self * &Self::zeta_pow(self.p, j as i64)).collect();
        let mut m: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coeffs[i]).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let piv = (c..d).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, piv);
            let s = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x *= s;
            }
            for r in 0..d {
                if r != c && !m[r][c].is_zero() {
                    let factor = m[r][c];
                    for j in 0..=d {
                        let v = m[c][j];
                        m[r][j] -= factor * v;
                    }
                }
            }
        }
        Some(CyclotomicRational { p: self.p, coeffs: m.into_iter().map(|row| row[d]).collect() })
    }
}

impl Add for &CyclotomicRational {
    type Output = CyclotomicRational;
    fn add(self, o: &CyclotomicRational) -> CyclotomicRational {
        assert_eq!(self.p, o.p);
        CyclotomicRational { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Neg for &CyclotomicRational {
    type Output = CyclotomicRational;
    fn neg(self) -> CyclotomicRational {
        CyclotomicRational { p: self.p, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Sub for &CyclotomicRational {
    type Output = CyclotomicRational;
    fn sub(self, o: &CyclotomicRational) -> CyclotomicRational {
        self + &(-o)
    }
}

impl Mul for &CyclotomicRational {
    type Output = CyclotomicRational;
    fn mul(self, o: &CyclotomicRational) -> CyclotomicRational {
        assert_eq!(self.p, o.p);
        let p = self.p as usize;
        let mut full = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        CyclotomicRational::reduce(self.p, full)
    }
}

impl fmt::Display for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.to_string(),
                1 => format!("({c})z"),
                _ => format!("({c})z^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
