//! Python bindings. Structured results come back as plain dicts and lists.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use deodhar_core::deodhar::{enumerate_distinguished, filtration, ReducedWord, Subexpression};
use deodhar_core::pointcount::{deodhar_poly, r_polynomial};
use deodhar_core::root_weyl::{build_root_system, WeylElement};
use deodhar_core::suites;
use deodhar_core::twist::{self, orbit_data, RegularCharacter, TwistData};
use deodhar_core::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A Weyl group given by its Cartan type; elements are passed around as words.
#[pyclass(name = "RootSystem", frozen)]
struct PyRootSystem {
    inner: deodhar_core::root_weyl::RootSystem,
}

impl PyRootSystem {
    fn element(&self, word: &str) -> PyResult<WeylElement> {
        self.inner.parse_element(word).map_err(err)
    }

    fn word(&self, word: &str) -> PyResult<Arc<ReducedWord>> {
        ReducedWord::parse(self.inner, word).map(Arc::new).map_err(err)
    }

    fn twist(&self, q: u64, twist: Option<&str>) -> PyResult<TwistData> {
        match twist {
            Some(t) => TwistData::diagram(self.inner, self.inner.parse_word(t).map_err(err)?, q),
            None => TwistData::split(self.inner, q),
        }
        .map_err(err)
    }

    fn subexpression(&self, word: &str, bits: &str) -> PyResult<Subexpression> {
        let bits: Vec<bool> = bits.chars().map(|c| c == '1').collect();
        Subexpression::new(self.word(word)?, bits).map_err(err)
    }
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(type_label: char, rank: usize) -> PyResult<Self> {
        Ok(PyRootSystem { inner: build_root_system(type_label, rank).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.cartan_type())
    }

    fn order(&self) -> usize {
        self.inner.elements().len()
    }

    /// Canonical words of all elements, shortest first.
    fn elements(&self) -> Vec<String> {
        let mut els: Vec<&WeylElement> = self.inner.elements().iter().collect();
        els.sort_by_key(|w| (w.length(), w.canonical_word()));
        els.into_iter().map(|w| w.to_string()).collect()
    }

    fn longest_element(&self) -> String {
        self.inner.longest_element().to_string()
    }

    fn length(&self, word: &str) -> PyResult<usize> {
        Ok(self.element(word)?.length())
    }

    fn reduced_words(&self, word: &str) -> PyResult<Vec<String>> {
        Ok(self.element(word)?.reduced_words().iter().map(|l| deodhar_core::root_weyl::format_word(l)).collect())
    }

    fn bruhat_leq(&self, v: &str, w: &str) -> PyResult<bool> {
        Ok(self.element(v)?.bruhat_leq(&self.element(w)?))
    }

    /// Coefficients of `R_{v,w}`, constant term first.
    fn r_polynomial(&self, v: &str, w: &str) -> PyResult<Vec<i64>> {
        Ok(r_polynomial(&self.element(v)?, &self.element(w)?).coeffs().to_vec())
    }

    /// Sum of the Deodhar cell counts over `Γ_v` for the given reduced word.
    fn deodhar_poly(&self, word: &str, v: &str) -> PyResult<Vec<i64>> {
        Ok(deodhar_poly(&*self.word(word)?, &self.element(v)?).coeffs().to_vec())
    }

    /// Distinguished subexpressions ending at `v`, in filtration order.
    fn decompose(&self, py: Python<'_>, word: &str, v: &str) -> PyResult<Py<PyAny>> {
        let word = self.word(word)?;
        let v = self.element(v)?;
        if !v.bruhat_leq(&word.target()) {
            return to_py(py, &Vec::<()>::new());
        }
        let order = filtration(&word, &v).map_err(err)?;
        let records: Vec<_> = order.elements().iter().map(Subexpression::record).collect();
        to_py(py, &records)
    }

    fn distinguished_count(&self, word: &str, v: &str) -> PyResult<usize> {
        Ok(enumerate_distinguished(&*self.word(word)?, &self.element(v)?).len())
    }

    /// Orbit invariants of the subexpression given by a bit string (1 = letter taken).
    #[pyo3(signature = (word, bits, q = 2, twist = None))]
    fn cell_invariants(&self, py: Python<'_>, word: &str, bits: &str, q: u64, twist: Option<&str>) -> PyResult<Py<PyAny>> {
        let gamma = self.subexpression(word, bits)?;
        let od = orbit_data(&self.twist(q, twist)?);
        let inv = twist::cell_invariants(&gamma, &od).map_err(err)?;
        let model = twist::quotient_model(&gamma, &od).map_err(err)?;
        #[derive(Serialize)]
        struct Out {
            n: Vec<usize>,
            m: Vec<usize>,
            n_bar: usize,
            m_bar: usize,
            model: String,
        }
        to_py(py, &Out { n: inv.n, m: inv.m, n_bar: inv.n_bar, m_bar: inv.m_bar, model: model.to_string() })
    }

    /// Theorem table for `w` with the default regular character.
    #[pyo3(signature = (word, q = 2, twist = None))]
    fn predict(&self, py: Python<'_>, word: &str, q: u64, twist: Option<&str>) -> PyResult<Py<PyAny>> {
        let word = self.word(word)?;
        let od = orbit_data(&self.twist(q, twist)?);
        let psi = RegularCharacter::regular_default(&od);
        let table = twist::theorem_table(&word.target(), &word, &od, &psi).map_err(err)?;
        to_py(py, &table)
    }

    fn vanishing_witness(&self, x: &str) -> PyResult<Option<String>> {
        Ok(twist::vanishing_witness(&self.element(x)?).map(|r| r.to_string()))
    }
}

#[pyfunction]
fn xq_point_count(q: u64, n: usize, m: usize, k: u32) -> PyResult<u128> {
    twist::xq_point_count(q, n, m, k).map_err(err)
}

#[pyfunction]
fn yqs_point_count(q: u64, s: u64, n: usize, m: usize, k: u32) -> PyResult<u128> {
    twist::yqs_point_count(q, s, n, m, k).map_err(err)
}

/// Runs a verification suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, type_label = None, rank = None, q = 2, k = 2, n = 3, max_rank = 3))]
#[allow(clippy::too_many_arguments)]
fn verify(
    py: Python<'_>,
    suite: &str,
    type_label: Option<char>,
    rank: Option<usize>,
    q: u64,
    k: u32,
    n: usize,
    max_rank: usize,
) -> PyResult<Py<PyAny>> {
    let report = match suite {
        "deodhar-vs-rpoly" => {
            let (Some(t), Some(r)) = (type_label, rank) else {
                return Err(PyValueError::new_err("deodhar-vs-rpoly needs type_label and rank"));
            };
            let ty = build_root_system(t, r).map_err(err)?.cartan_type();
            suites::verify_deodhar_vs_rpoly(ty, &[]).map_err(err)?
        }
        "flags" => suites::verify_flags(n, q).map_err(err)?,
        "gl3-example" => suites::verify_gl3_example(q, k).map_err(err)?,
        "vanishing" => suites::verify_vanishing(max_rank).map_err(err)?,
        "xq-models" => suites::verify_xq_models(64, 3).map_err(err)?,
        "e-psi" => suites::verify_e_psi().map_err(err)?,
        other => return Err(PyValueError::new_err(format!("unknown suite {other:?}; expected one of {:?}", suites::SUITES))),
    };
    to_py(py, &report)
}

#[pymodule]
fn deodhar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(xq_point_count, m)?)?;
    m.add_function(wrap_pyfunction!(yqs_point_count, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SUITES", suites::SUITES.to_vec())?;
    Ok(())
}
