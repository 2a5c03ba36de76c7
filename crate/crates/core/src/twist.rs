//! Frobenius diagram data, orbit invariants of Deodhar cells, the model
//! varieties `X_q(n, m)` and `Y_{q,s}(n, m)`, and the isotypic predictions
//! built from them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bruteforce::field::FiniteField;
use crate::deodhar::{enumerate_distinguished, ReducedWord, Subexpression};
use crate::error::{Error, Result};
use crate::root_weyl::{Root, RootSystem, WeylElement, LETTERS};

/// Smallest prime factor `p` and exponent `e` with `q = p^e`, if `q` is a prime power.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).find(|d| q.is_multiple_of(*d)).unwrap();
    let (mut n, mut e) = (q, 0);
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (n == 1).then_some((p, e))
}

/// Every permutation of the simple roots that preserves the Cartan matrix,
/// identity first, in lexicographic order.
pub fn diagram_automorphisms(rs: RootSystem) -> Vec<Vec<usize>> {
    fn go(rs: RootSystem, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = rs.rank();
        if cur.len() == n {
            if preserves_cartan(rs, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(rs, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(rs, &mut Vec::new(), &mut vec![false; rs.rank()], &mut out);
    out
}

fn preserves_cartan(rs: RootSystem, phi: &[usize]) -> bool {
    let a = rs.cartan_matrix();
    (0..phi.len()).all(|i| (0..phi.len()).all(|j| a[phi[i]][phi[j]] == a[i][j]))
}

/// The action of `F` on simple root subgroups: `α ↦ φ(α)` with field exponent `q_α°`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistData {
    #[serde(skip)]
    system: RootSystem,
    phi: Vec<usize>,
    q_circ: Vec<u64>,
}

impl TwistData {
    pub fn new(system: RootSystem, phi: Vec<usize>, q_circ: Vec<u64>) -> Result<TwistData> {
        let n = system.rank();
        if phi.len() != n || q_circ.len() != n {
            return Err(Error::InvalidTwist(format!("expected {n} entries")));
        }
        let mut sorted = phi.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidTwist(format!("{phi:?} is not a permutation")));
        }
        if !preserves_cartan(system, &phi) {
            return Err(Error::InvalidTwist(format!("{phi:?} does not preserve the Cartan matrix")));
        }
        let primes: Vec<Option<u64>> = q_circ.iter().map(|&q| prime_power_decomposition(q).map(|(p, _)| p)).collect();
        if primes.iter().any(Option::is_none) || primes.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InvalidTwist(format!("{q_circ:?} are not powers of one prime")));
        }
        Ok(TwistData { system, phi, q_circ })
    }

    pub fn split(system: RootSystem, q: u64) -> Result<TwistData> {
        TwistData::diagram(system, (0..system.rank()).collect(), q)
    }

    /// Diagram automorphism `phi` with constant `q° = q`.
    pub fn diagram(system: RootSystem, phi: Vec<usize>, q: u64) -> Result<TwistData> {
        let n = system.rank();
        TwistData::new(system, phi, vec![q; n])
    }

    pub fn system(&self) -> RootSystem {
        self.system
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn q_circ(&self) -> &[u64] {
        &self.q_circ
    }

    pub fn is_split(&self) -> bool {
        self.phi.iter().enumerate().all(|(i, &j)| i == j) && self.q_circ.windows(2).all(|w| w[0] == w[1])
    }

    pub fn characteristic(&self) -> u64 {
        prime_power_decomposition(self.q_circ[0]).expect("validated").0
    }

    /// Image of a root under the linear extension of `φ`.
    pub fn apply(&self, root: &Root) -> Root {
        let mut c = [0i32; 4];
        for (i, &x) in root.coeffs().iter().enumerate() {
            c[self.phi[i]] = x;
        }
        Root::from_coeffs(&c[..root.rank()])
    }
}

/// `φ`-orbits on the simple roots, with `d_α` and `q_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitData {
    #[serde(skip)]
    system: RootSystem,
    orbits: Vec<Vec<usize>>,
    #[serde(skip)]
    orbit_of: Vec<usize>,
    d: Vec<usize>,
    q: Vec<u64>,
    /// `Some(e)` when `q_α = q^e` for the common value `q = q°`.
    #[serde(skip)]
    q_exponent: Vec<Option<u32>>,
}

pub fn orbit_data(twist: &TwistData) -> OrbitData {
    let n = twist.system.rank();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        let mut cur = twist.phi[start];
        while cur != start {
            orbit.push(cur);
            cur = twist.phi[cur];
        }
        for &a in &orbit {
            orbit_of[a] = orbits.len();
        }
        orbits.push(orbit);
    }
    let constant = twist.q_circ.windows(2).all(|w| w[0] == w[1]);
    let mut d = vec![0; n];
    let mut q = vec![0; n];
    let mut q_exponent = vec![None; n];
    for orbit in &orbits {
        let prod: u64 = orbit.iter().map(|&a| twist.q_circ[a]).product();
        for &a in orbit {
            d[a] = orbit.len();
            q[a] = prod;
            q_exponent[a] = constant.then_some(orbit.len() as u32);
        }
    }
    OrbitData { system: twist.system, orbits, orbit_of, d, q, q_exponent }
}

impl OrbitData {
    pub fn system(&self) -> RootSystem {
        self.system
    }

    /// Orbits in order of their smallest member, which is the representative.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    pub fn orbit_index(&self, alpha: usize) -> usize {
        self.orbit_of[alpha]
    }

    pub fn d(&self, alpha: usize) -> usize {
        self.d[alpha]
    }

    pub fn q(&self, alpha: usize) -> u64 {
        self.q[alpha]
    }

    pub fn q_exponent(&self, alpha: usize) -> Option<u32> {
        self.q_exponent[alpha]
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// A simple root `α` with `x⁻¹(α) > 0`, the smallest such; `None` exactly for `x = w₀`.
pub fn vanishing_witness(x: &WeylElement) -> Option<Root> {
    let rs = x.system();
    let inv = x.inverse();
    rs.simple_roots().into_iter().find(|a| inv.apply(a).is_positive())
}

/// Orbit counts of `w₀(β̃_i)` over `I∖J` and over the complement of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellInvariants {
    /// Indexed like [`OrbitData::orbits`].
    pub n: Vec<usize>,
    pub m: Vec<usize>,
    pub n_bar: usize,
    pub m_bar: usize,
}

impl CellInvariants {
    pub fn any_n_positive(&self) -> bool {
        self.n.iter().any(|&x| x > 0)
    }

    pub fn dimension(&self) -> usize {
        self.n_bar + self.m_bar + self.n.iter().sum::<usize>() + self.m.iter().sum::<usize>()
    }
}

fn check_system(gamma: &Subexpression, od: &OrbitData) -> Result<()> {
    let ws = gamma.word().system();
    if ws != od.system {
        return Err(Error::MismatchedSystems { left: ws.cartan_type().to_string(), right: od.system.cartan_type().to_string() });
    }
    Ok(())
}

pub fn cell_invariants(gamma: &Subexpression, od: &OrbitData) -> Result<CellInvariants> {
    check_system(gamma, od)?;
    let shape = gamma.cell_shape()?;
    let w0 = od.system.longest_element();
    let mut n = vec![0; od.orbits.len()];
    let mut m = vec![0; od.orbits.len()];
    for i in 1..=gamma.len() {
        let Some(alpha) = w0.apply(&gamma.tilde_beta(i)).simple_index() else { continue };
        let o = od.orbit_of[alpha];
        if !gamma.i_set().contains(&i) {
            m[o] += 1;
        } else if !gamma.j_set().contains(&i) {
            n[o] += 1;
        }
    }
    let n_bar = shape.n_affine - n.iter().sum::<usize>();
    let m_bar = shape.m_torus - m.iter().sum::<usize>();
    Ok(CellInvariants { n, m, n_bar, m_bar })
}

/// One factor `X_{q_α}(n_α, m_α)` of a quotient model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelFactor {
    pub representative: usize,
    pub q_alpha: u64,
    #[serde(skip)]
    pub q_exponent: Option<u32>,
    pub n: usize,
    pub m: usize,
}

impl fmt::Display for ModelFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q_exponent {
            Some(1) => write!(f, "X_q({},{})", self.n, self.m),
            Some(e) => write!(f, "X_q^{e}({},{})", self.n, self.m),
            None => write!(f, "X_{}({},{})", self.q_alpha, self.n, self.m),
        }
    }
}

/// `(G_a)^ga × (G_m)^gm × ∏ X_{q_α}(n_α, m_α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientModel {
    pub ga: usize,
    pub gm: usize,
    pub factors: Vec<ModelFactor>,
}

pub fn quotient_model(gamma: &Subexpression, od: &OrbitData) -> Result<QuotientModel> {
    let inv = cell_invariants(gamma, od)?;
    let factors = od
        .orbits
        .iter()
        .enumerate()
        .map(|(o, orbit)| {
            let a = orbit[0];
            ModelFactor { representative: a, q_alpha: od.q[a], q_exponent: od.q_exponent[a], n: inv.n[o], m: inv.m[o] }
        })
        .collect();
    Ok(QuotientModel { ga: inv.n_bar, gm: inv.m_bar, factors })
}

impl QuotientModel {
    pub fn dimension(&self) -> usize {
        self.ga + self.gm + self.factors.iter().map(|f| f.n + f.m).sum::<usize>()
    }

    /// Points over `F_{q^k}` when every `q_α` equals `q`.
    pub fn point_count(&self, q: u64, k: u32) -> Result<u128> {
        if self.factors.iter().any(|f| f.q_alpha != q) {
            return Err(Error::Precondition("point counts of the quotient model need a split twist".into()));
        }
        let big = (q as u128).pow(k);
        let mut total = big.pow(self.ga as u32) * (big - 1).pow(self.gm as u32);
        for f in &self.factors {
            total *= xq_point_count(q, f.n, f.m, k)?;
        }
        Ok(total)
    }
}

impl fmt::Display for QuotientModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.ga {
            0 => {}
            1 => parts.push("Ga".to_string()),
            k => parts.push(format!("Ga^{k}")),
        }
        match self.gm {
            0 => {}
            1 => parts.push("Gm".to_string()),
            k => parts.push(format!("Gm^{k}")),
        }
        parts.extend(self.factors.iter().map(|x| x.to_string()));
        if parts.is_empty() {
            write!(f, "pt")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

const FIELD_LIMIT: u128 = crate::bruteforce::field::MAX_FIELD_ORDER as u128;

fn model_field(q: u64, k: u32) -> Result<&'static FiniteField> {
    if prime_power_decomposition(q).is_none() || k == 0 {
        return Err(Error::Precondition(format!("q = {q} must be a prime power and k positive")));
    }
    let order = (q as u128).checked_pow(k).unwrap_or(u128::MAX);
    if order > FIELD_LIMIT {
        return Err(Error::BudgetExceeded { what: format!("field F_{q}^{k}"), needed: order, limit: FIELD_LIMIT });
    }
    FiniteField::get(order as u64)
}

/// Exhaustive count of `ζ^q - ζ = Σ μ_i + Σ λ_j^s` over `F_{q^k}`, with
/// `μ ∈ G_a^n` and `λ ∈ G_m^m`, by convolving the distributions of the sums.
pub fn model_brute_force(q: u64, s: u64, n: usize, m: usize, k: u32) -> Result<u128> {
    let f = model_field(q, k)?;
    let size = f.order() as usize;
    let mut dist = vec![0u128; size];
    dist[0] = 1;
    let step = |dist: &Vec<u128>, values: &[u16]| {
        let mut next = vec![0u128; size];
        for (c, &cnt) in dist.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for &a in values {
                next[f.add(crate::bruteforce::field::Fq(c as u16), crate::bruteforce::field::Fq(a)).0 as usize] += cnt;
            }
        }
        next
    };
    let all: Vec<u16> = f.elements().map(|x| x.0).collect();
    let powers: Vec<u16> = f.nonzero().map(|x| f.pow(x, s).0).collect();
    for _ in 0..n {
        dist = step(&dist, &all);
    }
    for _ in 0..m {
        dist = step(&dist, &powers);
    }
    let mut fiber = vec![0u128; size];
    for z in f.elements() {
        fiber[f.artin_schreier(z, q).0 as usize] += 1;
    }
    Ok(dist.iter().zip(&fiber).map(|(a, b)| a * b).sum())
}

fn closed_form(q: u64, n: usize, m: usize, k: u32) -> Result<u128> {
    let big = (q as u128).checked_pow(k);
    big.and_then(|b| b.checked_pow(n as u32)?.checked_mul((b - 1).checked_pow(m as u32)?))
        .ok_or_else(|| Error::Precondition("point count overflows 128 bits".into()))
}

/// Points of `X_q(n, m)` over `F_{q^k}`: closed form when `n ≥ 1`, exhaustive otherwise.
pub fn xq_point_count(q: u64, n: usize, m: usize, k: u32) -> Result<u128> {
    if prime_power_decomposition(q).is_none() || k == 0 {
        return Err(Error::Precondition(format!("q = {q} must be a prime power and k positive")));
    }
    if n >= 1 {
        closed_form(q, n, m, k)
    } else {
        model_brute_force(q, 1, 0, m, k)
    }
}

/// Points of `Y_{q,s}(n, m)` over `F_{q^k}`.
pub fn yqs_point_count(q: u64, s: u64, n: usize, m: usize, k: u32) -> Result<u128> {
    let Some((p, _)) = prime_power_decomposition(q) else {
        return Err(Error::Precondition(format!("q = {q} is not a prime power")));
    };
    if s == 0 || s.is_multiple_of(p) {
        return Err(Error::Precondition(format!("s = {s} must be positive and prime to {p}")));
    }
    if n >= 1 {
        closed_form(q, n, m, k)
    } else {
        model_brute_force(q, s, 0, m, k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharacterTag {
    Trivial,
    /// `x ↦ ζ_p^{Tr(c·x)}` for the nonzero multiplier `c ∈ F_{q_α}`.
    Additive { multiplier: u64 },
}

/// A linear character of `U^F`, given orbit by orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularCharacter {
    /// Keyed by orbit representative.
    pub components: BTreeMap<usize, CharacterTag>,
}

impl RegularCharacter {
    /// Multiplier 1 on every orbit.
    pub fn regular_default(od: &OrbitData) -> RegularCharacter {
        let components = od.representatives().into_iter().map(|a| (a, CharacterTag::Additive { multiplier: 1 })).collect();
        RegularCharacter { components }
    }

    /// One multiplier per orbit, in orbit order; zero means trivial.
    pub fn from_multipliers(od: &OrbitData, multipliers: &[u64]) -> Result<RegularCharacter> {
        let reps = od.representatives();
        if multipliers.len() != reps.len() {
            return Err(Error::Precondition(format!("expected {} multipliers, got {}", reps.len(), multipliers.len())));
        }
        let mut components = BTreeMap::new();
        for (&a, &c) in reps.iter().zip(multipliers) {
            if c >= od.q(a) {
                return Err(Error::Precondition(format!("multiplier {c} is not an element of F_{}", od.q(a))));
            }
            let tag = if c == 0 { CharacterTag::Trivial } else { CharacterTag::Additive { multiplier: c } };
            components.insert(a, tag);
        }
        Ok(RegularCharacter { components })
    }

    /// First orbit representative on which the character is trivial.
    pub fn first_trivial(&self, od: &OrbitData) -> Option<usize> {
        od.representatives()
            .into_iter()
            .find(|a| !matches!(self.components.get(a), Some(CharacterTag::Additive { .. })))
    }
}

pub fn is_regular(psi: &RegularCharacter, od: &OrbitData) -> bool {
    psi.first_trivial(od).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotypicPrediction {
    pub vanishes: bool,
    pub shift: usize,
    pub module_description: String,
}

pub const TORUS_MODULE: &str = "regular module of T^wF";

fn require_regular(psi: &RegularCharacter, od: &OrbitData) -> Result<()> {
    match psi.first_trivial(od) {
        Some(orbit) => Err(Error::NotRegular { orbit }),
        None => Ok(()),
    }
}

/// ψ-isotypic part of the cohomology of the piece `Y_γ` for `γ ∈ Γ_1`.
pub fn isotypic_prediction_ygamma(gamma: &Subexpression, psi: &RegularCharacter, od: &OrbitData) -> Result<IsotypicPrediction> {
    require_regular(psi, od)?;
    let inv = cell_invariants(gamma, od)?;
    if !gamma.end().is_identity() {
        return Err(Error::Precondition(format!("{gamma} does not end at the identity")));
    }
    let vanishes = inv.any_n_positive();
    let shift = gamma.len() - gamma.i_set().len();
    let module_description = if vanishes { "zero".to_string() } else { TORUS_MODULE.to_string() };
    Ok(IsotypicPrediction { vanishes, shift, module_description })
}

fn orbit_map(values: &[usize], od: &OrbitData) -> BTreeMap<String, usize> {
    od.representatives().iter().zip(values).map(|(&a, &v)| (LETTERS[a].to_string(), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaRow {
    pub bits: String,
    pub gamma: String,
    pub n_alpha: BTreeMap<String, usize>,
    pub m_alpha: BTreeMap<String, usize>,
    pub vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub w: String,
    pub x: String,
    pub prediction: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_table: Option<Vec<GammaRow>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremTable {
    pub w: String,
    pub word: String,
    pub rows: Vec<TheoremRow>,
    /// Bits of the surviving `γ` and its shift.
    pub survivor: Option<(String, usize)>,
}

/// Predicted `e_ψ`-part of every piece `Y_x(ẇ)`, `x ∈ W`.
pub fn theorem_table(w: &WeylElement, word: &ReducedWord, od: &OrbitData, psi: &RegularCharacter) -> Result<TheoremTable> {
    require_regular(psi, od)?;
    if word.target() != *w {
        return Err(Error::Precondition(format!("word {word} does not multiply to {w}")));
    }
    let rs = od.system;
    let w0 = rs.longest_element();
    let mut rows = Vec::new();
    let mut survivor = None;
    for x in rs.elements() {
        if let Some(root) = vanishing_witness(x) {
            rows.push(TheoremRow {
                w: w.to_string(),
                x: x.to_string(),
                prediction: "vanishes".into(),
                witness_root: Some(root.to_string()),
                gamma_table: None,
            });
            continue;
        }
        debug_assert_eq!(*x, w0);
        let mut table = Vec::new();
        for gamma in enumerate_distinguished(word, &rs.identity()) {
            let inv = cell_invariants(&gamma, od)?;
            let pred = isotypic_prediction_ygamma(&gamma, psi, od)?;
            if !pred.vanishes {
                survivor = Some((gamma.bit_string(), pred.shift));
            }
            table.push(GammaRow {
                bits: gamma.bit_string(),
                gamma: gamma.to_string(),
                n_alpha: orbit_map(&inv.n, od),
                m_alpha: orbit_map(&inv.m, od),
                vanishes: pred.vanishes,
                shift: (!pred.vanishes).then_some(pred.shift),
            });
        }
        let prediction = match &survivor {
            Some((_, shift)) => format!("{TORUS_MODULE} [-{shift}]"),
            None => "vanishes".into(),
        };
        rows.push(TheoremRow { w: w.to_string(), x: x.to_string(), prediction, witness_root: None, gamma_table: Some(table) });
    }
    Ok(TheoremTable { w: w.to_string(), word: word.to_string(), rows, survivor })
}
