//! Subexpressions of a reduced word and the Deodhar decomposition of double
//! Schubert cells.
//!
//! Positions in a word are numbered from 1, so the index sets `I(γ)` and
//! `J(γ)` are subsets of `{1, ..., r}` and `γ^0` is the identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_weyl::{format_word, RootSystem, Root, WeylElement, LETTERS};

/// Longest word accepted by full subexpression enumeration.
pub const MAX_WORD_LEN: usize = 20;

/// A reduced expression `w = s_1 ... s_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    system: RootSystem,
    letters: Vec<usize>,
    target: WeylElement,
}

impl ReducedWord {
    pub fn new(system: RootSystem, letters: Vec<usize>) -> Result<ReducedWord> {
        let target = system.element_from_word(&letters)?;
        if target.length() != letters.len() {
            return Err(Error::NotReduced {
                word: format_word(&letters),
                reduced: target.to_string(),
            });
        }
        Ok(ReducedWord { system, letters, target })
    }

    pub fn parse(system: RootSystem, text: &str) -> Result<ReducedWord> {
        ReducedWord::new(system, system.parse_word(text)?)
    }

    /// The lexicographically least reduced word of `w`.
    pub fn canonical(w: &WeylElement) -> ReducedWord {
        ReducedWord { system: w.system(), letters: w.canonical_word(), target: *w }
    }

    pub fn system(&self) -> RootSystem {
        self.system
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn target(&self) -> WeylElement {
        self.target
    }

    /// Simple root `β_i` of the letter at position `i` (1-based).
    pub fn beta(&self, i: usize) -> Root {
        self.system.simple_root(self.letters[i - 1])
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.letters))
    }
}

/// Cell shape `(G_a)^n x (G_m)^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellShape {
    pub n_affine: usize,
    pub m_torus: usize,
}

impl CellShape {
    pub fn dimension(&self) -> usize {
        self.n_affine + self.m_torus
    }
}

impl fmt::Display for CellShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.n_affine {
            0 => {}
            1 => parts.push("Ga".to_string()),
            n => parts.push(format!("Ga^{n}")),
        }
        match self.m_torus {
            0 => {}
            1 => parts.push("Gm".to_string()),
            m => parts.push(format!("Gm^{m}")),
        }
        if parts.is_empty() {
            f.write_str("pt")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

/// A choice `γ_i ∈ {1, s_i}` at each letter of a reduced word, with its
/// partial products and index sets.
#[derive(Clone, Debug)]
pub struct Subexpression {
    word: Arc<ReducedWord>,
    bits: Vec<bool>,
    partials: Vec<WeylElement>,
    i_set: BTreeSet<usize>,
    j_set: BTreeSet<usize>,
    tilde_betas: Vec<Root>,
}

impl PartialEq for Subexpression {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.bits == other.bits
    }
}
impl Eq for Subexpression {}

impl Subexpression {
    pub fn new(word: Arc<ReducedWord>, bits: Vec<bool>) -> Result<Subexpression> {
        if bits.len() != word.len() {
            return Err(Error::Precondition(format!(
                "subexpression has {} entries but the word has {} letters",
                bits.len(),
                word.len()
            )));
        }
        let sys = word.system();
        let mut partials = Vec::with_capacity(bits.len() + 1);
        partials.push(sys.identity());
        for (pos, &taken) in bits.iter().enumerate() {
            let prev = partials[pos];
            partials.push(if taken { prev.right_mul_simple(word.letters[pos]) } else { prev });
        }

        let mut i_set = BTreeSet::new();
        let mut j_set = BTreeSet::new();
        let mut tilde_betas = Vec::with_capacity(bits.len());
        for i in 1..=bits.len() {
            let letter = word.letters[i - 1];
            let gi = partials[i];
            if bits[i - 1] {
                i_set.insert(i);
            }
            let tilde = gi.apply(&word.beta(i).neg());
            let by_descent = gi.right_mul_simple(letter).length() < gi.length();
            // J has two characterizations: a length drop and the sign of β̃_i
            assert_eq!(by_descent, tilde.is_positive(), "descent and root-sign tests disagree at position {i}");
            if by_descent {
                j_set.insert(i);
            }
            tilde_betas.push(tilde);
        }
        Ok(Subexpression { word, bits, partials, i_set, j_set, tilde_betas })
    }

    pub fn all_ones(word: Arc<ReducedWord>) -> Subexpression {
        let r = word.len();
        Subexpression::new(word, vec![false; r]).expect("length matches")
    }

    pub fn full(word: Arc<ReducedWord>) -> Subexpression {
        let r = word.len();
        Subexpression::new(word, vec![true; r]).expect("length matches")
    }

    pub fn word(&self) -> &Arc<ReducedWord> {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `true` at position `i` means `γ_i = s_i`.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Bits as a `0`/`1` string (`1` where the letter is taken).
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Partial product `γ^i` for `0 <= i <= r`.
    pub fn partial(&self, i: usize) -> WeylElement {
        self.partials[i]
    }

    pub fn partials(&self) -> &[WeylElement] {
        &self.partials
    }

    /// Endpoint `γ^r`.
    pub fn end(&self) -> WeylElement {
        *self.partials.last().expect("partials start with the identity")
    }

    pub fn i_set(&self) -> &BTreeSet<usize> {
        &self.i_set
    }

    pub fn j_set(&self) -> &BTreeSet<usize> {
        &self.j_set
    }

    /// `β̃_i = γ^i(-β_i)` for `1 <= i <= r`.
    pub fn tilde_beta(&self, i: usize) -> Root {
        self.tilde_betas[i - 1]
    }

    pub fn tilde_betas(&self) -> &[Root] {
        &self.tilde_betas
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// First position `i` where `γ^{i-1} s_i < γ^{i-1}` but `γ_i = 1`.
    pub fn distinguished_violation(&self) -> Option<usize> {
        (1..=self.len()).find(|&i| !self.bits[i - 1] && self.partials[i - 1].is_right_descent(self.word.letters[i - 1]))
    }

    pub fn is_distinguished(&self) -> bool {
        let by_sets = self.j_set.is_subset(&self.i_set);
        debug_assert_eq!(by_sets, self.distinguished_violation().is_none());
        by_sets
    }

    pub fn cell_shape(&self) -> Result<CellShape> {
        if let Some(position) = self.distinguished_violation() {
            return Err(Error::EmptyCell { position });
        }
        Ok(CellShape {
            n_affine: self.i_set.len() - self.j_set.len(),
            m_torus: self.len() - self.i_set.len(),
        })
    }

    /// The roots `β̃_i` at positions outside `J(γ)`, in order.
    pub fn phi_gamma(&self) -> Vec<Root> {
        (1..=self.len()).filter(|i| !self.j_set.contains(i)).map(|i| self.tilde_beta(i)).collect()
    }

    /// `δ ⪯ γ` iff `γ^i <= δ^i` for every `i`.
    pub fn preceq(&self, gamma: &Subexpression) -> Result<bool> {
        if self.word != gamma.word {
            return Err(Error::WordMismatch);
        }
        Ok(self.partials.iter().zip(&gamma.partials).all(|(d, g)| g.bruhat_leq(d)))
    }

    pub fn record(&self) -> CellRecord {
        let shape = self.cell_shape().ok();
        CellRecord {
            word: self.word.to_string(),
            v: self.end().to_string(),
            gamma: self.to_string(),
            gamma_bits: self.bit_string(),
            i_set: self.i_set.iter().copied().collect(),
            j_set: self.j_set.iter().copied().collect(),
            n: shape.map(|s| s.n_affine),
            m: shape.map(|s| s.m_torus),
            distinguished: shape.is_some(),
        }
    }
}

impl fmt::Display for Subexpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .bits
            .iter()
            .zip(&self.word.letters)
            .map(|(&b, &l)| if b { LETTERS[l].to_string() } else { "1".to_string() })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One row of a serialized decomposition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub word: String,
    pub v: String,
    pub gamma: String,
    pub gamma_bits: String,
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub distinguished: bool,
}

/// All `2^r` subexpressions, in binary counting order of their bit strings.
pub fn subexpressions(word: &ReducedWord) -> Result<Vec<Subexpression>> {
    let r = word.len();
    if r > MAX_WORD_LEN {
        return Err(Error::WordTooLong { len: r, max: MAX_WORD_LEN });
    }
    let word = Arc::new(word.clone());
    (0u32..1 << r)
        .map(|mask| {
            let bits = (0..r).map(|i| mask >> (r - 1 - i) & 1 == 1).collect();
            Subexpression::new(word.clone(), bits)
        })
        .collect()
}

pub fn index_sets(gamma: &Subexpression) -> (BTreeSet<usize>, BTreeSet<usize>) {
    (gamma.i_set.clone(), gamma.j_set.clone())
}

pub fn is_distinguished(gamma: &Subexpression) -> bool {
    gamma.is_distinguished()
}

pub fn cell_shape(gamma: &Subexpression) -> Result<CellShape> {
    gamma.cell_shape()
}

pub fn phi_gamma(gamma: &Subexpression) -> Vec<Root> {
    gamma.phi_gamma()
}

pub fn preceq(delta: &Subexpression, gamma: &Subexpression) -> Result<bool> {
    delta.preceq(gamma)
}

/// Walks the distinguished subexpressions depth-first: at a position where
/// the current partial product has `s_i` as a right descent the letter is forced.
fn distinguished_bits(word: &ReducedWord, mut visit: impl FnMut(Vec<bool>, WeylElement)) {
    fn go(
        word: &ReducedWord,
        pos: usize,
        partial: WeylElement,
        bits: &mut Vec<bool>,
        visit: &mut dyn FnMut(Vec<bool>, WeylElement),
    ) {
        if pos == word.len() {
            visit(bits.clone(), partial);
            return;
        }
        let letter = word.letters[pos];
        let forced = partial.is_right_descent(letter);
        if !forced {
            bits.push(false);
            go(word, pos + 1, partial, bits, visit);
            bits.pop();
        }
        bits.push(true);
        go(word, pos + 1, partial.right_mul_simple(letter), bits, visit);
        bits.pop();
    }
    go(word, 0, word.system.identity(), &mut Vec::new(), &mut visit);
}

/// Distinguished subexpressions ending at `v` (the set `Γ_v`), in
/// lexicographic order of bit strings.
pub fn enumerate_distinguished(word: &ReducedWord, v: &WeylElement) -> Vec<Subexpression> {
    let shared = Arc::new(word.clone());
    let mut out = Vec::new();
    distinguished_bits(word, |bits, end| {
        if end == *v {
            out.push(Subexpression::new(shared.clone(), bits).expect("length matches"));
        }
    });
    out
}

/// Every distinguished subexpression, grouped by endpoint.
pub fn distinguished_by_endpoint(word: &ReducedWord) -> BTreeMap<WeylElement, Vec<Subexpression>> {
    let shared = Arc::new(word.clone());
    let mut out: BTreeMap<WeylElement, Vec<Subexpression>> = BTreeMap::new();
    distinguished_bits(word, |bits, end| {
        out.entry(end).or_default().push(Subexpression::new(shared.clone(), bits).expect("length matches"));
    });
    out
}

/// The unique distinguished subexpression ending at `v` with `I(γ) = J(γ)`.
pub fn unique_ij_equal(word: &ReducedWord, v: &WeylElement) -> Result<Subexpression> {
    if !v.bruhat_leq(&word.target) {
        return Err(Error::NotComparable);
    }
    let mut found: Vec<Subexpression> =
        enumerate_distinguished(word, v).into_iter().filter(|g| g.i_set == g.j_set).collect();
    assert_eq!(found.len(), 1, "expected exactly one subexpression with I = J for v = {v} in {word}");
    Ok(found.pop().unwrap())
}

/// A numbering `γ_0, γ_1, ..., γ_n` of `Γ_v` refining `⪯` from the top.
#[derive(Clone, Debug)]
pub struct FiltrationOrder {
    elements: Vec<Subexpression>,
}

impl FiltrationOrder {
    pub fn elements(&self) -> &[Subexpression] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, gamma: &Subexpression) -> Option<usize> {
        self.elements.iter().position(|g| g == gamma)
    }

    /// Cells making up the closed piece `F_i = D_{γ_i} ∪ ... ∪ D_{γ_n}`.
    pub fn closed_piece(&self, i: usize) -> &[Subexpression] {
        &self.elements[i..]
    }
}

/// Orders `Γ_v` so that every element precedes everything strictly `⪯`-below
/// it. Ties among the currently maximal elements go to the larger cell, then
/// to the lexicographically smallest bit string.
pub fn filtration(word: &ReducedWord, v: &WeylElement) -> Result<FiltrationOrder> {
    if !v.bruhat_leq(&word.target) {
        return Err(Error::NotComparable);
    }
    let mut remaining = enumerate_distinguished(word, v);
    let n = remaining.len();
    // below[a][b]: remaining[a] ⪯ remaining[b], a != b
    let below: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a != b && remaining[a].preceq(&remaining[b]).expect("same word")).collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = (0..n)
            .filter(|&a| alive[a] && !(0..n).any(|b| alive[b] && below[a][b]))
            .min_by_key(|&a| {
                let shape = remaining[a].cell_shape().expect("distinguished");
                (std::cmp::Reverse(shape.dimension()), remaining[a].bit_string())
            })
            .expect("a finite poset has a maximal element");
        alive[pick] = false;
        order.push(pick);
    }
    let mut slots: Vec<Option<Subexpression>> = remaining.drain(..).map(Some).collect();
    let elements = order.into_iter().map(|i| slots[i].take().unwrap()).collect();
    Ok(FiltrationOrder { elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_weyl::build_root_system;

    fn sts() -> ReducedWord {
        ReducedWord::parse(build_root_system('A', 2).unwrap(), "sts").unwrap()
    }

    fn gamma(word: &ReducedWord, pattern: &str) -> Subexpression {
        let bits = pattern.chars().map(|c| c != '1').collect();
        Subexpression::new(Arc::new(word.clone()), bits).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn reduced_word_validation() {
        let rs = build_root_system('A', 2).unwrap();
        let err = ReducedWord::parse(rs, "ss").unwrap_err();
        assert_eq!(err, Error::NotReduced { word: "ss".into(), reduced: "e".into() });
        let err = ReducedWord::parse(rs, "stst").unwrap_err();
        assert!(matches!(err, Error::NotReduced { ref reduced, .. } if reduced == "ts"));
        assert_eq!(ReducedWord::parse(rs, "").unwrap().len(), 0);
    }

    #[test]
    fn subexpression_counts() {
        let rs = build_root_system('A', 2).unwrap();
        assert_eq!(subexpressions(&ReducedWord::parse(rs, "s").unwrap()).unwrap().len(), 2);
        assert_eq!(subexpressions(&sts()).unwrap().len(), 8);
        let empty = subexpressions(&ReducedWord::parse(rs, "").unwrap()).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].end().is_identity());
    }

    #[test]
    fn longest_supported_word_enumerates() {
        let rs = build_root_system('A', 4).unwrap();
        let w0 = ReducedWord::canonical(&rs.longest_element());
        assert_eq!(w0.len(), 10);
        assert!(subexpressions(&w0).is_ok());
    }

    #[test]
    fn index_set_examples() {
        let w = sts();
        let g = gamma(&w, "111");
        assert!(g.i_set().is_empty() && g.j_set().is_empty());
        let g = gamma(&w, "sts");
        assert_eq!(g.i_set(), &set(&[1, 2, 3]));
        assert_eq!(g.j_set(), &set(&[1, 2, 3]));
        let g = gamma(&w, "s1s");
        assert_eq!(g.i_set(), &set(&[1, 3]));
        assert_eq!(g.j_set(), &set(&[1]));
        let rs = w.system();
        assert_eq!(g.tilde_beta(1), rs.simple_root(0));
        assert_eq!(g.tilde_beta(2), Root::from_coeffs(&[-1, -1]));
        assert_eq!(g.tilde_beta(3), rs.simple_root(0).neg());
    }

    #[test]
    fn distinguished_examples() {
        let w = sts();
        let bad = gamma(&w, "s11");
        assert!(!bad.is_distinguished());
        assert_eq!(bad.distinguished_violation(), Some(3));
        assert!(gamma(&w, "111").is_distinguished());
        let all = subexpressions(&w).unwrap();
        let dist: Vec<_> = all.iter().filter(|g| g.is_distinguished()).collect();
        assert_eq!(dist.len(), 7);
        let non: Vec<String> = all.iter().filter(|g| !g.is_distinguished()).map(|g| g.to_string()).collect();
        assert_eq!(non, vec!["(s,1,1)"]);
    }

    #[test]
    fn enumerate_distinguished_examples() {
        let w = sts();
        let rs = w.system();
        let gv: Vec<String> = enumerate_distinguished(&w, &rs.identity()).iter().map(|g| g.to_string()).collect();
        assert_eq!(gv, vec!["(1,1,1)", "(s,1,s)"]);
        let top: Vec<String> = enumerate_distinguished(&w, &w.target()).iter().map(|g| g.to_string()).collect();
        assert_eq!(top, vec!["(s,t,s)"]);
        let w_st = ReducedWord::parse(rs, "st").unwrap();
        let ts = rs.parse_element("ts").unwrap();
        assert!(enumerate_distinguished(&w_st, &ts).is_empty());
    }

    #[test]
    fn dfs_matches_filtered_enumeration() {
        for (f, n) in [('A', 3), ('B', 3), ('G', 2)] {
            let rs = build_root_system(f, n).unwrap();
            for w in rs.elements() {
                let word = ReducedWord::canonical(w);
                let all = subexpressions(&word).unwrap();
                for v in rs.elements() {
                    let filtered: Vec<_> =
                        all.iter().filter(|g| g.is_distinguished() && g.end() == *v).cloned().collect();
                    assert_eq!(enumerate_distinguished(&word, v), filtered);
                }
            }
        }
    }

    #[test]
    fn cell_shape_examples() {
        let w = sts();
        assert_eq!(gamma(&w, "111").cell_shape().unwrap(), CellShape { n_affine: 0, m_torus: 3 });
        assert_eq!(gamma(&w, "s1s").cell_shape().unwrap(), CellShape { n_affine: 1, m_torus: 1 });
        assert_eq!(gamma(&w, "sts").cell_shape().unwrap(), CellShape { n_affine: 0, m_torus: 0 });
        assert_eq!(gamma(&w, "s11").cell_shape(), Err(Error::EmptyCell { position: 3 }));
        assert_eq!(gamma(&w, "111").cell_shape().unwrap().to_string(), "Gm^3");
        assert_eq!(gamma(&w, "s1s").cell_shape().unwrap().to_string(), "Ga x Gm");
    }

    #[test]
    fn phi_gamma_examples() {
        let w = sts();
        let a = |c: &[i32]| Root::from_coeffs(c);
        assert_eq!(gamma(&w, "111").phi_gamma(), vec![a(&[-1, 0]), a(&[0, -1]), a(&[-1, 0])]);
        assert_eq!(gamma(&w, "s1s").phi_gamma(), vec![a(&[-1, -1]), a(&[-1, 0])]);
        assert!(gamma(&w, "sts").phi_gamma().is_empty());
    }

    #[test]
    fn unique_ij_examples() {
        let w = sts();
        let rs = w.system();
        assert_eq!(unique_ij_equal(&w, &rs.identity()).unwrap().to_string(), "(1,1,1)");
        assert_eq!(unique_ij_equal(&w, &w.target()).unwrap().to_string(), "(s,t,s)");
        let s = rs.parse_element("s").unwrap();
        let g = unique_ij_equal(&w, &s).unwrap();
        assert_eq!(g.cell_shape().unwrap(), CellShape { n_affine: 0, m_torus: 2 });
        // exhaustive scan of Γ_s
        let scan: Vec<_> = enumerate_distinguished(&w, &s).into_iter().filter(|g| g.i_set() == g.j_set()).collect();
        assert_eq!(scan, vec![g]);
        let w_s = ReducedWord::parse(rs, "s").unwrap();
        assert_eq!(unique_ij_equal(&w_s, &rs.parse_element("t").unwrap()), Err(Error::NotComparable));
    }

    #[test]
    fn preceq_examples() {
        let w = sts();
        let ones = gamma(&w, "111");
        for d in subexpressions(&w).unwrap() {
            assert!(d.preceq(&ones).unwrap());
            assert!(d.preceq(&d).unwrap());
        }
        assert!(!ones.preceq(&gamma(&w, "s1s")).unwrap());
        let other = ReducedWord::parse(w.system(), "tst").unwrap();
        assert_eq!(ones.preceq(&gamma(&other, "111")), Err(Error::WordMismatch));
    }

    #[test]
    fn filtration_examples() {
        let w = sts();
        let rs = w.system();
        let f = filtration(&w, &rs.identity()).unwrap();
        let names: Vec<String> = f.elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, vec!["(1,1,1)", "(s,1,s)"]);
        assert_eq!(f.closed_piece(1).len(), 1);
        let top = filtration(&w, &w.target()).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top.elements()[0].to_string(), "(s,t,s)");
        let w_s = ReducedWord::parse(rs, "s").unwrap();
        assert!(filtration(&w_s, &rs.parse_element("t").unwrap()).is_err());
    }

    #[test]
    fn record_serializes() {
        let rec = gamma(&sts(), "s1s").record();
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"word":"sts","v":"e","gamma":"(s,1,s)","gamma_bits":"101","I":[1,3],"J":[1],"n":1,"m":1,"distinguished":true}"#
        );
        let bad = gamma(&sts(), "s11").record();
        assert!(!bad.distinguished && bad.n.is_none());
    }
}
