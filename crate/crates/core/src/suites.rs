//! Verification sweeps shared by the command line and the test suites.
//!
//! Every sweep returns a [`SuiteReport`] whose rows compare two independently
//! computed values. Rows come out in a fixed order whatever the thread count.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bruteforce::epsi::{e_psi_check, UnipotentGroup, SUPPORTED_GROUPS};
use crate::bruteforce::field::{prime_power, FiniteField};
use crate::bruteforce::flags::{canonicalize, dl_piece_count, double_cell_table, enumerate_flags, gl_system};
use crate::bruteforce::gl3::gl3_example_counts;
use crate::deodhar::{distinguished_by_endpoint, enumerate_distinguished, ReducedWord, Subexpression};
use crate::error::{Error, Result};
use crate::pointcount::{deodhar_polys_by_endpoint, schubert_cell_poly, IntPolynomial, RPolynomials};
use crate::root_weyl::{format_word, CartanType, Family, RootSystem};
use crate::twist::{
    cell_invariants, diagram_automorphisms, model_brute_force, orbit_data, quotient_model, vanishing_witness,
    xq_point_count, yqs_point_count, TwistData,
};

pub const SUITES: [&str; 6] = ["deodhar-vs-rpoly", "flags", "gl3-example", "vanishing", "xq-models", "e-psi"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub test: String,
    pub parameters: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Operations that produced the two sides.
    pub source: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_exceeded: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.budget_exceeded.is_none() && self.rows.iter().all(|r| r.matches)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.matches)
    }

    pub fn rows_for<'a>(&'a self, test: &'a str) -> impl Iterator<Item = &'a CheckRow> {
        self.rows.iter().filter(move |r| r.test == test)
    }

    /// Keeps the rows gathered so far when a brute-force step runs out of budget.
    fn absorb<T>(&mut self, result: Result<T>) -> Result<Option<T>> {
        match result {
            Ok(v) => Ok(Some(v)),
            Err(Error::BudgetExceeded { what, needed, limit }) => {
                self.budget_exceeded = Some(format!("{what}: needs {needed}, limit {limit}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

fn row(test: &str, params: &[(&str, String)], lhs: impl ToString, rhs: impl ToString, source: &str) -> CheckRow {
    let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
    CheckRow {
        test: test.to_string(),
        parameters: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        matches: lhs == rhs,
        lhs,
        rhs,
        source: source.to_string(),
    }
}

fn type_params(rs: RootSystem) -> Vec<(&'static str, String)> {
    let ty = rs.cartan_type();
    vec![("type", ty.family.as_char().to_string()), ("rank", ty.rank.to_string())]
}

/// Deodhar polynomials over every reduced word against the R-polynomial
/// recursion, the partition `Σ_v = q^{l(w)}`, and (for `GL_n`) brute-force
/// double-cell counts at each `q` in `qs`.
pub fn verify_deodhar_vs_rpoly(ty: CartanType, qs: &[u64]) -> Result<SuiteReport> {
    let rs = RootSystem::new(ty)?;
    let mut report = SuiteReport::new("deodhar-vs-rpoly");
    let per_w: Vec<Vec<CheckRow>> = rs
        .elements()
        .par_iter()
        .map(|w| {
            let mut rpolys = RPolynomials::new();
            let words: Vec<ReducedWord> =
                w.reduced_words().into_iter().map(|l| ReducedWord::new(rs, l).expect("reduced")).collect();
            let polys: Vec<BTreeMap<_, IntPolynomial>> = words.iter().map(deodhar_polys_by_endpoint).collect();
            let mut rows = Vec::new();
            let base = {
                let mut p = type_params(rs);
                p.push(("w", w.to_string()));
                p
            };
            for v in rs.elements().iter().filter(|v| v.bruhat_leq(w)) {
                let r = rpolys.get(v, w);
                let mine: Vec<IntPolynomial> = polys.iter().map(|m| m.get(v).cloned().unwrap_or_else(IntPolynomial::zero)).collect();
                let lhs = match mine.iter().find(|p| **p != r) {
                    Some(bad) => bad.to_string(),
                    None => r.to_string(),
                };
                let mut params = base.clone();
                params.push(("v", v.to_string()));
                params.push(("words", words.len().to_string()));
                rows.push(row("deodhar-vs-rpoly", &params, lhs, &r, "deodhar_poly / r_polynomial"));
            }
            for (word, map) in words.iter().zip(&polys) {
                let stray: Vec<String> = map.keys().filter(|v| !v.bruhat_leq(w)).map(|v| v.to_string()).collect();
                let total: IntPolynomial = map.values().cloned().sum();
                let mut params = base.clone();
                params.push(("word", word.to_string()));
                rows.push(row("partition", &params, &total, schubert_cell_poly(w), "deodhar_poly / schubert_cell_poly"));
                rows.push(row("endpoints-below-w", &params, stray.join(","), "", "distinguished_by_endpoint"));
            }
            rows
        })
        .collect();
    report.rows = per_w.into_iter().flatten().collect();

    if ty.family == Family::A {
        let n = ty.rank + 1;
        for &q in qs {
            let Some(table) = report.absorb(double_cell_table(n, q))? else { break };
            let mut rpolys = RPolynomials::new();
            for w in rs.elements() {
                for v in rs.elements() {
                    let count = table.get(&(*w, *v)).copied().unwrap_or(0);
                    let r = rpolys.get(v, w).eval(q as i64);
                    let mut params = type_params(rs);
                    params.extend([("q", q.to_string()), ("w", w.to_string()), ("v", v.to_string())]);
                    report.rows.push(row("double-cell-count", &params, count, r, "double_cell_count / r_polynomial"));
                }
            }
        }
    }
    Ok(report)
}

/// Census of `G/B` over `F_q` for `GL_n`.
pub fn verify_flags(n: usize, q: u64) -> Result<SuiteReport> {
    let rs = gl_system(n)?;
    let mut report = SuiteReport::new("flags");
    let params = vec![("n", n.to_string()), ("q", q.to_string())];
    let Some(flags) = report.absorb(enumerate_flags(n, q))? else { return Ok(report) };
    let expected: IntPolynomial = rs.elements().iter().map(schubert_cell_poly).sum();
    report.rows.push(row("flag-census", &params, flags.len(), expected.eval(q as i64), "enumerate_flags / schubert_cell_poly"));
    let distinct: HashSet<_> = flags.iter().collect();
    report.rows.push(row("distinct-flags", &params, distinct.len(), flags.len(), "enumerate_flags"));
    let f = FiniteField::get(q)?;
    let stable = flags.iter().all(|fl| canonicalize(f, fl.matrix()).as_ref() == Ok(fl));
    report.rows.push(row("canonical-idempotent", &params, stable, true, "canonicalize"));
    let Some(table) = report.absorb(double_cell_table(n, q))? else { return Ok(report) };
    let total: u128 = table.values().sum();
    report.rows.push(row("double-cell-census", &params, total, flags.len(), "double_cell_count / enumerate_flags"));
    let max_len = rs.longest_element().length() as u32;
    for w in rs.elements() {
        let mut p = params.clone();
        p.push(("w", w.to_string()));
        let by_w: u128 = table.iter().filter(|((x, _), _)| x == w).map(|(_, c)| c).sum();
        let by_v: u128 = table.iter().filter(|((_, v), _)| v == w).map(|(_, c)| c).sum();
        report.rows.push(row("schubert-cell", &p, by_w, (q as u128).pow(w.length() as u32), "double_cell_count"));
        report.rows.push(row(
            "opposite-cell",
            &p,
            by_v,
            (q as u128).pow(max_len - w.length() as u32),
            "double_cell_count",
        ));
    }
    Ok(report)
}

/// The explicit `GL_3` varieties against the quotient models and the flag count.
pub fn verify_gl3_example(q: u64, k: u32) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("gl3-example");
    let params = vec![("q", q.to_string()), ("k", k.to_string())];
    let Some(ex) = report.absorb(gl3_example_counts(q, k))? else { return Ok(report) };
    let rs = gl_system(3)?;
    let word = Arc::new(ReducedWord::parse(rs, "sts")?);
    let od = orbit_data(&TwistData::split(rs, q)?);
    let closed = quotient_model(&Subexpression::new(word.clone(), vec![true, false, true])?, &od)?;
    let open = quotient_model(&Subexpression::all_ones(word.clone()), &od)?;
    report.rows.push(row("closed-model", &params, &closed, "Gm x X_q(0,0) x X_q(1,0)", "quotient_model"));
    report.rows.push(row("open-model", &params, &open, "X_q(0,1) x X_q(0,2)", "quotient_model"));
    report.rows.push(row("pieces-partition-quotient", &params, ex.x_closed + ex.x_open, ex.quotient, "gl3_example_counts"));
    report.rows.push(row("closed-count", &params, ex.x_closed, closed.point_count(q, k)?, "gl3_example_counts / quotient_model"));
    report.rows.push(row("open-count", &params, ex.x_open, open.point_count(q, k)?, "gl3_example_counts / quotient_model"));
    let w0 = rs.longest_element();
    if let Some(dl) = report.absorb(dl_piece_count(3, q, &w0, &w0, k))? {
        report.rows.push(row("full-vs-dl-piece", &params, ex.x_full, dl, "gl3_example_counts / dl_piece_count"));
    }
    report.rows.push(row(
        "free-action-on-points",
        &params,
        (ex.orbits_closed + ex.orbits_open) * q as u128,
        ex.x_full,
        "gl3_example_counts",
    ));
    Ok(report)
}

/// Orbit invariants of every distinguished subexpression, over every type of
/// rank at most `max_rank`, every diagram automorphism, every `w` and every
/// reduced word; plus the witness predicate on every Weyl group.
pub fn verify_vanishing(max_rank: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("vanishing");
    for ty in CartanType::all_supported().filter(|t| t.rank <= max_rank) {
        let rs = RootSystem::new(ty)?;
        let w0 = rs.longest_element();
        let witnesses = rs.elements().iter().filter(|x| vanishing_witness(x).is_some()).count();
        let valid = rs.elements().iter().all(|x| match vanishing_witness(x) {
            Some(a) => a.simple_index().is_some() && x.inverse().apply(&a).is_positive(),
            None => *x == w0,
        });
        report.rows.push(row("witness-count", &type_params(rs), witnesses, rs.elements().len() - 1, "vanishing_witness"));
        report.rows.push(row("witness-valid", &type_params(rs), valid, true, "vanishing_witness"));
        for phi in diagram_automorphisms(rs) {
            let od = orbit_data(&TwistData::diagram(rs, phi.clone(), 2)?);
            let rows: Vec<CheckRow> = rs
                .elements()
                .par_iter()
                .map(|w| vanishing_rows(rs, &od, &phi, w))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            report.rows.extend(rows);
        }
    }
    Ok(report)
}

fn vanishing_rows(rs: RootSystem, od: &crate::twist::OrbitData, phi: &[usize], w: &crate::root_weyl::WeylElement) -> Result<Vec<CheckRow>> {
    let mut params = type_params(rs);
    params.push(("twist", format_word(phi)));
    params.push(("w", w.to_string()));
    let (mut checked, mut vanishing, mut dims_ok, mut ones_ok, mut cells) = (0usize, 0usize, true, true, 0usize);
    for letters in w.reduced_words() {
        let word = ReducedWord::new(rs, letters)?;
        for gamma in enumerate_distinguished(&word, &rs.identity()) {
            let inv = cell_invariants(&gamma, od)?;
            if gamma.is_all_ones() {
                ones_ok &= !inv.any_n_positive()
                    && inv.n_bar == 0
                    && inv.m_bar == 0
                    && inv.m.iter().sum::<usize>() == w.length()
                    && gamma.len() - gamma.i_set().len() == w.length();
            } else {
                checked += 1;
                vanishing += inv.any_n_positive() as usize;
            }
        }
        for cells_at in distinguished_by_endpoint(&word).values() {
            for gamma in cells_at {
                cells += 1;
                dims_ok &= cell_invariants(gamma, od)?.dimension() == gamma.cell_shape()?.dimension();
            }
        }
    }
    Ok(vec![
        row("gamma-vanishing", &params, vanishing, checked, "cell_invariants"),
        row("all-ones-survives", &params, ones_ok, true, "cell_invariants"),
        {
            let mut p = params.clone();
            p.push(("cells", cells.to_string()));
            row("dimension-bookkeeping", &p, dims_ok, true, "cell_invariants / cell_shape")
        },
    ])
}

/// Closed forms against exhaustive counts for `X_q(n, m)` and `Y_{q,s}(n, m)`
/// over every `F_{q^k}` of order at most `max_order`, with `n + m <= max_vars`.
pub fn verify_xq_models(max_order: u64, max_vars: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("xq-models");
    for q in 2..=max_order {
        if prime_power(q).is_none() {
            continue;
        }
        let mut k = 1;
        while q.pow(k) <= max_order {
            for n in 0..=max_vars {
                for m in 0..=(max_vars - n) {
                    let params = vec![("q", q.to_string()), ("k", k.to_string()), ("n", n.to_string()), ("m", m.to_string())];
                    let Some(brute) = report.absorb(model_brute_force(q, 1, n, m, k))? else { return Ok(report) };
                    let x = xq_point_count(q, n, m, k)?;
                    if n >= 1 {
                        report.rows.push(row("closed-form", &params, x, brute, "xq_point_count / brute force"));
                    } else {
                        report.rows.push(row("divisible-by-q", &params, brute % q as u128, 0, "brute force"));
                    }
                    report.rows.push(row("y-with-s-one", &params, yqs_point_count(q, 1, n, m, k)?, x, "yqs_point_count / xq_point_count"));
                }
            }
            k += 1;
        }
    }
    Ok(report)
}

/// `e_ψ` for every linear character of every supported unipotent group.
pub fn verify_e_psi() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("e-psi");
    for &(n, p) in &SUPPORTED_GROUPS {
        let g = UnipotentGroup::new(n, p)?;
        for k in g.linear_characters() {
            let r = e_psi_check(&g, &k)?;
            let params = vec![("group", r.group.clone()), ("psi", k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))];
            report.rows.push(row("idempotent", &params, r.idempotent, true, "e_psi_check"));
            report.rows.push(row("central", &params, r.central, true, "e_psi_check"));
            report.rows.push(row("image-rank", &params, r.image_rank, 1, "e_psi_check"));
        }
    }
    Ok(report)
}
