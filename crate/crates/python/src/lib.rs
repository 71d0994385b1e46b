//! Python bindings. Groups are built from a built-in name (`"FIG1"`,
//! `"W(4,3)"`, ..), a JSON group description, or a path to a JSON file;
//! elements are comma-separated generator names.

use std::path::Path;

use coxsmooth::algebra::palindromic_defect;
use coxsmooth::bruhat::{poincare, relative_poincare};
use coxsmooth::census::{figure3_table, palindromic_census, CensusMode, Phi_series};
use coxsmooth::smoothness::fast_poincare;
use coxsmooth::{fixtures, Bond, CoxError, CoxeterMatrix, CoxeterSystem, Defect, GroupElement, QPolynomial};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: CoxError) -> PyErr {
    match e {
        CoxError::TheoremViolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coeffs(p: &QPolynomial) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn defect_value(d: Defect) -> Option<usize> {
    match d {
        Defect::At(i) => Some(i),
        Defect::Palindromic => None,
    }
}

fn parse_bond(m: &str) -> PyResult<Bond> {
    let t = m.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(Bond::Infinite);
    }
    t.parse()
        .map(Bond::Finite)
        .map_err(|_| PyValueError::new_err(format!("bad bond label `{m}`")))
}

/// A Coxeter system together with its root engine.
#[pyclass(frozen, module = "pycoxsmooth")]
struct Group {
    sys: CoxeterSystem,
}

impl Group {
    fn element(&self, word: &str) -> PyResult<GroupElement> {
        self.sys.parse_element(word).map_err(err)
    }
}

#[pymethods]
impl Group {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let matrix = if spec.trim_start().starts_with('{') {
            CoxeterMatrix::from_json(spec)
        } else if Path::new(spec).is_file() {
            let text = std::fs::read_to_string(spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
            CoxeterMatrix::from_json(&text)
        } else {
            fixtures::builtin(spec)
        }
        .map_err(err)?;
        Ok(Group { sys: CoxeterSystem::new(matrix) })
    }

    #[getter]
    fn name(&self) -> String {
        self.sys.name().to_owned()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.sys.matrix().generators().to_vec()
    }

    fn length(&self, word: &str) -> PyResult<usize> {
        Ok(self.element(word)?.length())
    }

    /// ShortLex-minimal reduced word, comma-separated.
    fn canonical(&self, word: &str) -> PyResult<String> {
        Ok(self.sys.format_element(&self.element(word)?))
    }

    /// Coefficients of the Poincare polynomial of `[e, w]`, constant term
    /// first. With `relative`, the polynomial of the minimal coset
    /// representatives below `w`.
    #[pyo3(signature = (word, relative = None))]
    fn poincare(&self, word: &str, relative: Option<&str>) -> PyResult<Vec<BigInt>> {
        let w = self.element(word)?;
        let p = match relative {
            Some(j) => relative_poincare(&self.sys, &w, self.sys.parse_genset(j).map_err(err)?),
            None => poincare(&self.sys, &w),
        }
        .map_err(err)?;
        Ok(coeffs(&p))
    }

    /// The same polynomial from the Grassmannian factorization; needs a
    /// Tri-avoiding group and a 2-palindromic element.
    fn fast_poincare(&self, word: &str) -> PyResult<Vec<BigInt>> {
        let (p, _) = fast_poincare(&self.sys, &self.element(word)?).map_err(err)?;
        Ok(coeffs(&p))
    }

    /// Smallest `i` with `a_i != a_(l-i)`, or `None` when palindromic.
    fn defect(&self, word: &str) -> PyResult<Option<usize>> {
        let p = poincare(&self.sys, &self.element(word)?).map_err(err)?;
        Ok(defect_value(palindromic_defect(&p).map_err(err)?))
    }

    fn is_two_palindromic(&self, word: &str) -> PyResult<bool> {
        Ok(self.sys.is_two_palindromic(&self.element(word)?))
    }

    fn avoids_tri(&self) -> bool {
        self.sys.triangle_report().avoids_tri
    }

    /// Palindromic (or 2-palindromic) element counts by length.
    #[pyo3(signature = (max_length, two_palindromic = false))]
    fn census(&self, max_length: usize, two_palindromic: bool) -> PyResult<Vec<usize>> {
        let mode = if two_palindromic { CensusMode::TwoPalindromic } else { CensusMode::Palindromic };
        let rep = palindromic_census(&self.sys, max_length, mode, false).map_err(err)?;
        Ok(rep.counts_by_length)
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.sys.name())
    }
}

/// `n! [t^n] Phi_m(q, t)` as a list of `q` coefficients below `q_order`.
#[pyfunction]
#[pyo3(signature = (m, n, q_order = 16))]
fn phi_coefficients(m: &str, n: usize, q_order: usize) -> PyResult<Vec<BigInt>> {
    let s = Phi_series(parse_bond(m)?, q_order, n + 1).map_err(err)?;
    s.egf_coefficient(n)
        .ok_or_else(|| PyRuntimeError::new_err("non-integral coefficient"))
}

/// Totals of palindromic elements of `W(m, n)`, one row per `m`.
#[pyfunction]
fn figure3(m_values: Vec<u32>, n_values: Vec<usize>) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(figure3_table(&m_values, &n_values).map_err(err)?.cells)
}

#[pymodule]
fn pycoxsmooth(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(phi_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(figure3, m)?)?;
    Ok(())
}
