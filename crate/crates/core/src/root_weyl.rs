//! Finite root systems in simple-root coordinates and their Weyl groups.
//!
//! Roots are integer vectors in the basis of simple roots, and a Weyl group
//! element is stored as the integer matrix of its action on the root lattice.
//! All arithmetic is exact. Supported types are A1-A4, B2-B3, C2-C3, D4 and
//! G2; the data for each type is built once and shared for the lifetime of
//! the process.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 4;

/// Letters used for the simple reflections when words are displayed or parsed.
pub const LETTERS: [char; MAX_RANK] = ['s', 't', 'u', 'v'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'G' => Some(Family::G),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.as_char(), self.rank)
    }
}

const SUPPORTED: [(Family, usize); 10] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::B, 2),
    (Family::B, 3),
    (Family::C, 2),
    (Family::C, 3),
    (Family::D, 4),
    (Family::G, 2),
];

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<CartanType> {
        if SUPPORTED.contains(&(family, rank)) {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::UnsupportedType { family: family.as_char(), rank })
        }
    }

    pub fn all_supported() -> impl Iterator<Item = CartanType> {
        SUPPORTED.iter().map(|&(family, rank)| CartanType { family, rank })
    }

    /// Cartan matrix with entries `a[i][j] = <alpha_i^vee, alpha_j>` (Bourbaki numbering).
    fn cartan_matrix(self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, -1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // last simple root is short
                link(n - 2, n - 1, -2, -1);
            }
            Family::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                // last simple root is long
                link(n - 2, n - 1, -1, -2);
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            Family::G => {
                // first simple root is short
                link(0, 1, -3, -1);
            }
        }
        a
    }
}

/// A root as an integer vector in the simple-root basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    rank: u8,
    coeffs: [i32; MAX_RANK],
}

impl Root {
    pub fn from_coeffs(coeffs: &[i32]) -> Root {
        assert!(coeffs.len() <= MAX_RANK, "root of rank {} is too large", coeffs.len());
        let mut c = [0; MAX_RANK];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Root { rank: coeffs.len() as u8, coeffs: c }
    }

    pub fn simple(rank: usize, i: usize) -> Root {
        let mut c = [0; MAX_RANK];
        c[i] = 1;
        Root { rank: rank as u8, coeffs: c }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs[..self.rank as usize]
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn is_positive(&self) -> bool {
        let c = self.coeffs();
        c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.neg().is_positive()
    }

    pub fn neg(&self) -> Root {
        let mut r = *self;
        for x in r.coeffs.iter_mut() {
            *x = -*x;
        }
        r
    }

    pub fn height(&self) -> i32 {
        self.coeffs().iter().sum()
    }

    /// Index of the simple root this root equals, if any.
    pub fn simple_index(&self) -> Option<usize> {
        let c = self.coeffs();
        if c.iter().sum::<i32>() == 1 && c.iter().all(|&x| x == 0 || x == 1) {
            c.iter().position(|&x| x == 1)
        } else {
            None
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

struct SystemData {
    ty: CartanType,
    cartan: Vec<Vec<i32>>,
    /// Positive roots sorted by height, then coefficients.
    positive: Vec<Root>,
    /// Positive roots followed by their negatives.
    all: Vec<Root>,
    elements: OnceLock<Vec<WeylElement>>,
}

fn registry() -> &'static [SystemData] {
    static SYSTEMS: OnceLock<Vec<SystemData>> = OnceLock::new();
    SYSTEMS.get_or_init(|| CartanType::all_supported().map(build_data).collect())
}

fn build_data(ty: CartanType) -> SystemData {
    let n = ty.rank;
    let cartan = ty.cartan_matrix();
    let reflect = |r: &Root, i: usize| -> Root {
        let pairing: i32 = (0..n).map(|j| cartan[i][j] * r.coeffs[j]).sum();
        let mut out = *r;
        out.coeffs[i] -= pairing;
        out
    };
    let mut found: BTreeSet<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut frontier: Vec<Root> = found.iter().copied().collect();
    while let Some(r) = frontier.pop() {
        for i in 0..n {
            let image = reflect(&r, i);
            if found.insert(image) {
                frontier.push(image);
            }
        }
    }
    let mut positive: Vec<Root> = found.iter().copied().filter(Root::is_positive).collect();
    positive.sort_by_key(|r| (r.height(), *r));
    let all = positive.iter().copied().chain(positive.iter().map(Root::neg)).collect();
    SystemData { ty, cartan, positive, all, elements: OnceLock::new() }
}

/// Handle to the shared data of one supported root system.
#[derive(Clone, Copy)]
pub struct RootSystem(&'static SystemData);

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({})", self.0.ty)
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.0.ty == other.0.ty
    }
}
impl Eq for RootSystem {}

/// Builds (or fetches) the root system of the given type, e.g. `('A', 2)`.
pub fn build_root_system(type_label: char, rank: usize) -> Result<RootSystem> {
    let family = Family::from_char(type_label)
        .ok_or(Error::UnsupportedType { family: type_label, rank })?;
    RootSystem::new(CartanType::new(family, rank)?)
}

impl RootSystem {
    pub fn new(ty: CartanType) -> Result<RootSystem> {
        registry()
            .iter()
            .find(|d| d.ty == ty)
            .map(RootSystem)
            .ok_or(Error::UnsupportedType { family: ty.family.as_char(), rank: ty.rank })
    }

    fn of(ty: CartanType) -> RootSystem {
        RootSystem::new(ty).expect("weyl element of an unsupported type")
    }

    pub fn cartan_type(&self) -> CartanType {
        self.0.ty
    }

    pub fn rank(&self) -> usize {
        self.0.ty.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.0.cartan
    }

    pub fn simple_root(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(|i| self.simple_root(i)).collect()
    }

    pub fn positive_roots(&self) -> &'static [Root] {
        &self.0.positive
    }

    pub fn roots(&self) -> &'static [Root] {
        &self.0.all
    }

    pub fn is_root(&self, r: &Root) -> bool {
        let target = if r.is_positive() { *r } else { r.neg() };
        r.rank() == self.rank() && self.0.positive.binary_search_by_key(&(target.height(), target), |p| (p.height(), *p)).is_ok()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.0.ty)
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        let n = self.rank();
        if i >= n {
            return Err(Error::BadIndex { index: i, rank: n });
        }
        let mut w = self.identity();
        for j in 0..n {
            w.mat[i * MAX_RANK + j] -= self.0.cartan[i][j];
        }
        Ok(w)
    }

    fn reflection(&self, i: usize) -> WeylElement {
        self.simple_reflection(i).expect("index checked by caller")
    }

    /// Product of the simple reflections named by `letters`, left to right.
    pub fn element_from_word(&self, letters: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &i in letters {
            w = w.mul_unchecked(&self.simple_reflection(i)?);
        }
        Ok(w)
    }

    pub fn longest_element(&self) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| w.apply(&self.simple_root(i)).is_positive()) {
            w = w.mul_unchecked(&self.reflection(i));
        }
        w
    }

    /// All elements of the Weyl group, sorted by length and then canonical word.
    pub fn elements(&self) -> &'static [WeylElement] {
        self.0.elements.get_or_init(|| {
            let id = self.identity();
            let mut seen = BTreeSet::from([id]);
            let mut frontier = vec![id];
            while let Some(w) = frontier.pop() {
                for i in 0..self.rank() {
                    let next = w.mul_unchecked(&self.reflection(i));
                    if seen.insert(next) {
                        frontier.push(next);
                    }
                }
            }
            let mut all: Vec<(usize, Vec<usize>, WeylElement)> =
                seen.into_iter().map(|w| (w.length(), w.canonical_word(), w)).collect();
            all.sort();
            all.into_iter().map(|(_, _, w)| w).collect()
        })
    }

    /// Number of elements of each length, starting at length 0.
    pub fn length_census(&self) -> Vec<usize> {
        let max = self.longest_element().length();
        let mut out = vec![0; max + 1];
        for w in self.elements() {
            out[w.length()] += 1;
        }
        out
    }

    /// Parses a word over the letters `s t u v` (or digits `1..4`); `e` or the
    /// empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text == "e" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for c in text.chars().filter(|c| !c.is_whitespace() && *c != ',' && *c != '.') {
            let idx = match c {
                's' | 't' | 'u' | 'v' => LETTERS.iter().position(|&l| l == c).unwrap(),
                '1'..='4' => c as usize - '1' as usize,
                _ => return Err(Error::BadLetter(c)),
            };
            if idx >= self.rank() {
                return Err(Error::BadIndex { index: idx, rank: self.rank() });
            }
            out.push(idx);
        }
        Ok(out)
    }

    /// Parses a word and returns the element it multiplies to.
    pub fn parse_element(&self, text: &str) -> Result<WeylElement> {
        self.element_from_word(&self.parse_word(text)?)
    }
}

pub fn format_word(letters: &[usize]) -> String {
    if letters.is_empty() {
        "e".to_string()
    } else {
        letters.iter().map(|&i| LETTERS[i]).collect()
    }
}

/// An element of a Weyl group, stored as its action on the root lattice.
///
/// Column `j` of the matrix holds the image of the `j`-th simple root. The
/// matrix is padded with the identity up to `MAX_RANK`, so elements are `Copy`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    ty: CartanType,
    mat: [i32; MAX_RANK * MAX_RANK],
}

impl WeylElement {
    fn identity(ty: CartanType) -> WeylElement {
        let mut mat = [0; MAX_RANK * MAX_RANK];
        for i in 0..MAX_RANK {
            mat[i * MAX_RANK + i] = 1;
        }
        WeylElement { ty, mat }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn system(&self) -> RootSystem {
        RootSystem::of(self.ty)
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Action matrix, row-major, `rank x rank`.
    pub fn matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        (0..n).map(|r| (0..n).map(|c| self.mat[r * MAX_RANK + c]).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.ty)
    }

    pub fn apply(&self, root: &Root) -> Root {
        let n = self.rank();
        let mut out = [0; MAX_RANK];
        for (r, o) in out.iter_mut().enumerate().take(n) {
            *o = (0..n).map(|c| self.mat[r * MAX_RANK + c] * root.coeffs[c]).sum();
        }
        Root { rank: n as u8, coeffs: out }
    }

    pub(crate) fn mul_unchecked(&self, other: &WeylElement) -> WeylElement {
        let mut mat = [0; MAX_RANK * MAX_RANK];
        for r in 0..MAX_RANK {
            for c in 0..MAX_RANK {
                mat[r * MAX_RANK + c] =
                    (0..MAX_RANK).map(|k| self.mat[r * MAX_RANK + k] * other.mat[k * MAX_RANK + c]).sum();
            }
        }
        WeylElement { ty: self.ty, mat }
    }

    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.ty != other.ty {
            return Err(Error::MismatchedSystems { left: self.ty.to_string(), right: other.ty.to_string() });
        }
        Ok(self.mul_unchecked(other))
    }

    /// Inverse, found as the last power before the identity.
    pub fn inverse(&self) -> WeylElement {
        let id = Self::identity(self.ty);
        let mut prev = id;
        let mut cur = *self;
        while cur != id {
            prev = cur;
            cur = cur.mul_unchecked(self);
        }
        prev
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        self.system().positive_roots().iter().filter(|b| self.apply(b).is_negative()).count()
    }

    /// Simple indices `i` with `s_i w < w`.
    pub fn left_descents(&self) -> Vec<usize> {
        let inv = self.inverse();
        (0..self.rank()).filter(|&i| inv.apply(&Root::simple(self.rank(), i)).is_negative()).collect()
    }

    /// Simple indices `i` with `w s_i < w`.
    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_right_descent(i)).collect()
    }

    pub fn is_right_descent(&self, i: usize) -> bool {
        self.apply(&Root::simple(self.rank(), i)).is_negative()
    }

    fn first_left_descent(&self) -> Option<usize> {
        // s_i w < w iff w^{-1}(alpha_i) < 0
        let inv = self.inverse();
        (0..self.rank()).find(|&i| inv.is_right_descent(i))
    }

    /// Left multiplication by the simple reflection `s_i`.
    pub fn left_mul_simple(&self, i: usize) -> WeylElement {
        self.system().reflection(i).mul_unchecked(self)
    }

    pub fn right_mul_simple(&self, i: usize) -> WeylElement {
        self.mul_unchecked(&self.system().reflection(i))
    }

    /// Lexicographically least reduced word.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = *self;
        while let Some(i) = w.first_left_descent() {
            word.push(i);
            w = w.left_mul_simple(i);
        }
        word
    }

    /// All reduced words of this element.
    pub fn reduced_words(&self) -> BTreeSet<Vec<usize>> {
        fn go(w: WeylElement, prefix: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
            let descents = w.left_descents();
            if descents.is_empty() {
                out.insert(prefix.clone());
                return;
            }
            for i in descents {
                prefix.push(i);
                go(w.left_mul_simple(i), prefix, out);
                prefix.pop();
            }
        }
        let mut out = BTreeSet::new();
        go(*self, &mut Vec::new(), &mut out);
        out
    }

    /// Bruhat order test `self <= other`, by descending along left descents of `other`.
    pub fn bruhat_leq(&self, other: &WeylElement) -> bool {
        if self.ty != other.ty {
            return false;
        }
        let (mut v, mut w) = (*self, *other);
        loop {
            if v.length() > w.length() {
                return false;
            }
            match w.first_left_descent() {
                None => return v.is_identity(),
                Some(i) => {
                    let sv = v.left_mul_simple(i);
                    if sv.length() < v.length() {
                        v = sv;
                    }
                    w = w.left_mul_simple(i);
                }
            }
        }
    }

    pub fn bruhat_lt(&self, other: &WeylElement) -> bool {
        self != other && self.bruhat_leq(other)
    }
}

impl Mul for WeylElement {
    type Output = WeylElement;

    /// Panics if the two elements come from different root systems; use
    /// [`WeylElement::compose`] for a checked product.
    fn mul(self, rhs: WeylElement) -> WeylElement {
        self.compose(&rhs).expect("product of elements of different Weyl groups")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.canonical_word()))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ty, self)
    }
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> RootSystem {
        build_root_system('A', 2).unwrap()
    }

    #[test]
    fn root_counts() {
        let expect = [
            ('A', 1, 2),
            ('A', 2, 6),
            ('A', 3, 12),
            ('A', 4, 20),
            ('B', 2, 8),
            ('B', 3, 18),
            ('C', 2, 8),
            ('C', 3, 18),
            ('D', 4, 24),
            ('G', 2, 12),
        ];
        for (f, n, count) in expect {
            let rs = build_root_system(f, n).unwrap();
            assert_eq!(rs.roots().len(), count, "{f}{n}");
            assert_eq!(rs.positive_roots().len() * 2, count);
        }
        assert_eq!(a2().positive_roots().len(), 3);
    }

    #[test]
    fn unsupported_types_are_rejected() {
        assert!(build_root_system('E', 6).is_err());
        assert!(build_root_system('B', 4).is_err());
        assert!(build_root_system('A', 5).is_err());
        assert!(build_root_system('X', 2).is_err());
    }

    #[test]
    fn weyl_group_orders() {
        let expect = [('A', 1, 2), ('A', 2, 6), ('A', 3, 24), ('A', 4, 120), ('B', 2, 8), ('B', 3, 48), ('C', 3, 48), ('D', 4, 192), ('G', 2, 12)];
        for (f, n, order) in expect {
            assert_eq!(build_root_system(f, n).unwrap().elements().len(), order, "{f}{n}");
        }
    }

    #[test]
    fn roots_are_sign_coherent_and_reflections_permute_positives() {
        for ty in CartanType::all_supported() {
            let rs = RootSystem::new(ty).unwrap();
            for r in rs.roots() {
                assert!(r.is_positive() ^ r.is_negative());
            }
            for i in 0..rs.rank() {
                let s = rs.simple_reflection(i).unwrap();
                let alpha = rs.simple_root(i);
                assert_eq!(s.apply(&alpha), alpha.neg());
                for b in rs.positive_roots().iter().filter(|b| **b != alpha) {
                    let image = s.apply(b);
                    assert!(image.is_positive() && rs.is_root(&image), "{ty}: s{i}({b})");
                }
            }
        }
    }

    #[test]
    fn simple_reflection_basics() {
        let rs = a2();
        let s = rs.simple_reflection(0).unwrap();
        let t = rs.simple_reflection(1).unwrap();
        assert!((s * s).is_identity());
        assert_eq!(t.apply(&rs.simple_root(0)), Root::from_coeffs(&[1, 1]));
        assert_eq!(s.apply(&rs.simple_root(0)), rs.simple_root(0).neg());
        assert_eq!(s.apply(&rs.simple_root(1)), Root::from_coeffs(&[1, 1]));
        assert_eq!(s.length(), 1);
        assert!(rs.simple_reflection(2).is_err());
    }

    #[test]
    fn products_and_inverses() {
        let rs = a2();
        let s = rs.simple_reflection(0).unwrap();
        let t = rs.simple_reflection(1).unwrap();
        let e = rs.identity();
        assert_eq!(e * (s * t), s * t);
        assert_eq!((s * t).inverse(), t * s);
        let sts = s * t * s;
        assert_eq!(sts.length(), 3);
        assert_eq!(sts, rs.longest_element());
        assert_eq!(sts, t * s * t);
        let b2 = build_root_system('B', 2).unwrap();
        assert!(s.compose(&b2.identity()).is_err());
    }

    #[test]
    fn lengths() {
        let rs = a2();
        assert_eq!(rs.identity().length(), 0);
        assert_eq!(rs.longest_element().length(), 3);
        assert_eq!(rs.element_from_word(&[0, 1]).unwrap().length(), 2);
    }

    #[test]
    fn longest_element_properties() {
        for ty in CartanType::all_supported() {
            let rs = RootSystem::new(ty).unwrap();
            let w0 = rs.longest_element();
            assert_eq!(w0.length(), rs.positive_roots().len());
            assert!((w0 * w0).is_identity());
            assert!(rs.positive_roots().iter().all(|b| w0.apply(b).is_negative()));
        }
        let a1 = build_root_system('A', 1).unwrap();
        assert_eq!(a1.longest_element(), a1.simple_reflection(0).unwrap());
        let rs = a2();
        // w0 sends alpha_s to -alpha_t
        assert_eq!(rs.longest_element().apply(&rs.simple_root(0)), rs.simple_root(1).neg());
    }

    #[test]
    fn reduced_words_of_a2_longest() {
        let rs = a2();
        let words = rs.longest_element().reduced_words();
        assert_eq!(words, BTreeSet::from([vec![0, 1, 0], vec![1, 0, 1]]));
        assert_eq!(rs.longest_element().canonical_word(), vec![0, 1, 0]);
    }

    #[test]
    fn bruhat_examples() {
        let rs = a2();
        let e = rs.identity();
        for w in rs.elements() {
            assert!(e.bruhat_leq(w));
            assert!(w.bruhat_leq(&rs.longest_element()));
        }
        let sts = rs.parse_element("sts").unwrap();
        let st = rs.parse_element("st").unwrap();
        assert!(!sts.bruhat_leq(&st));
        assert!(st.bruhat_leq(&sts));
        // s and t are incomparable with each other
        let s = rs.parse_element("s").unwrap();
        let t = rs.parse_element("t").unwrap();
        assert!(!s.bruhat_leq(&t) && !t.bruhat_leq(&s));
    }

    #[test]
    fn descents_nonempty_iff_nontrivial() {
        for ty in CartanType::all_supported() {
            let rs = RootSystem::new(ty).unwrap();
            for w in rs.elements() {
                assert_eq!(w.left_descents().is_empty(), w.is_identity());
                assert_eq!(w.right_descents().is_empty(), w.is_identity());
            }
        }
    }

    #[test]
    fn poincare_census_a2() {
        assert_eq!(a2().length_census(), vec![1, 2, 2, 1]);
        assert_eq!(build_root_system('A', 3).unwrap().length_census(), vec![1, 3, 5, 6, 5, 3, 1]);
    }

    #[test]
    fn parse_words() {
        let rs = a2();
        assert_eq!(rs.parse_word("sts").unwrap(), vec![0, 1, 0]);
        assert_eq!(rs.parse_word("121").unwrap(), vec![0, 1, 0]);
        assert_eq!(rs.parse_word("").unwrap(), Vec::<usize>::new());
        assert_eq!(rs.parse_word("e").unwrap(), Vec::<usize>::new());
        assert!(rs.parse_word("su").is_err());
        assert!(rs.parse_word("sx").is_err());
        assert_eq!(format_word(&[0, 1, 0]), "sts");
    }

    #[test]
    fn root_display() {
        assert_eq!(Root::from_coeffs(&[-1, -1]).to_string(), "-a1-a2");
        assert_eq!(Root::from_coeffs(&[1, 2]).to_string(), "a1+2a2");
    }
}
