//! Python module `wicklab`: chaos expansions, exponent algebra, ratio checks
//! and the verify run.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use wicklab::harness::{run_verify, RunConfig};
use wicklab::lab::{self, CheckReport, ExponentTuple};
use wicklab::numerics::{gauss_hermite_rule, gaussian_norm};
use wicklab::{chaos, ChaosExpansion, Complex64, Exponent, MultiIndex, WickError};

fn py_err(err: WickError) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn exponent(k: f64) -> Exponent {
    Exponent::from(k)
}

fn tuple(u: f64, v: f64, p: f64, q: f64, r: f64) -> PyResult<ExponentTuple> {
    ExponentTuple::new(exponent(u), exponent(v), exponent(p), exponent(q), exponent(r)).map_err(py_err)
}

/// Result of one check: `(lhs, rhs, ratio, passed)`.
fn summary(report: CheckReport) -> (f64, f64, f64, bool) {
    (report.lhs, report.rhs, report.ratio, report.pass)
}

/// Truncated Hermite chaos expansion with complex coefficients.
#[pyclass(name = "ChaosExpansion", module = "wicklab", frozen, skip_from_py_object)]
struct PyChaos {
    inner: ChaosExpansion,
}

#[pymethods]
impl PyChaos {
    /// `terms` is a list of `(degrees, coefficient)` pairs.
    #[new]
    #[pyo3(signature = (dim, max_degree, terms = Vec::new()))]
    fn new(dim: usize, max_degree: u32, terms: Vec<(Vec<u32>, Complex64)>) -> PyResult<Self> {
        let entries = terms.into_iter().map(|(d, c)| (MultiIndex::new(d), c));
        Ok(PyChaos {
            inner: ChaosExpansion::from_entries(dim, max_degree, entries).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn constant(dim: usize, c: Complex64) -> Self {
        PyChaos {
            inner: ChaosExpansion::constant(dim, c),
        }
    }

    /// `He_α` for the multi-index `degrees`.
    #[staticmethod]
    fn monomial(degrees: Vec<u32>) -> Self {
        PyChaos {
            inner: ChaosExpansion::monomial(MultiIndex::new(degrees)),
        }
    }

    /// Degree-`max_degree` truncation of the exponential vector `E_ξ`.
    #[staticmethod]
    fn exponential(xi: Vec<Complex64>, max_degree: u32) -> Self {
        PyChaos {
            inner: chaos::exponential_chaos(&xi, max_degree),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyChaos {
            inner: ChaosExpansion::from_json(text).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn max_degree(&self) -> u32 {
        self.inner.max_degree()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn terms(&self) -> Vec<(Vec<u32>, Complex64)> {
        self.inner.iter().map(|(a, c)| (a.degrees().to_vec(), *c)).collect()
    }

    fn coeff(&self, degrees: Vec<u32>) -> Complex64 {
        self.inner.coeff(&MultiIndex::new(degrees))
    }

    fn expectation(&self) -> Complex64 {
        self.inner.expectation()
    }

    fn l2_norm(&self) -> f64 {
        self.inner.l2_norm()
    }

    fn eval(&self, x: Vec<f64>) -> PyResult<Complex64> {
        self.inner.eval(&x).map_err(py_err)
    }

    fn wick(&self, other: &PyChaos) -> PyResult<PyChaos> {
        Ok(PyChaos {
            inner: self.inner.wick(&other.inner).map_err(py_err)?,
        })
    }

    /// `Γ(c)`: scales the degree-`n` chaos by `c^n`.
    fn second_quantization(&self, c: Complex64) -> PyChaos {
        PyChaos {
            inner: self.inner.second_quantization(c),
        }
    }

    fn s_transform(&self, xi: Vec<Complex64>) -> PyResult<Complex64> {
        self.inner.s_transform(&xi).map_err(py_err)
    }

    /// Gaussian `L^p` norm; pass `float("inf")` for the sup-norm estimate.
    #[pyo3(signature = (p, order = 64))]
    fn gaussian_norm(&self, p: f64, order: usize) -> PyResult<f64> {
        let rule = gauss_hermite_rule(order).map_err(py_err)?;
        gaussian_norm(&self.inner, exponent(p), &rule).map_err(py_err)
    }

    fn __add__(&self, other: &PyChaos) -> PyResult<PyChaos> {
        Ok(PyChaos {
            inner: self.inner.add(&other.inner).map_err(py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "ChaosExpansion(dim={}, max_degree={}, terms={})",
            self.inner.dim(),
            self.inner.max_degree(),
            self.inner.len()
        )
    }
}

/// The exponent `r` admissible with `(u, v, p, q)`.
#[pyfunction]
fn full_holder_exponent(u: f64, v: f64, p: f64, q: f64) -> PyResult<f64> {
    lab::full_holder_solve(exponent(u), exponent(v), exponent(p), exponent(q))
        .map(|r| r.value())
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (p, q, r, dim = 1))]
fn sharp_young_constant(p: f64, q: f64, r: f64, dim: usize) -> PyResult<f64> {
    lab::sharp_young_constant(exponent(p), exponent(q), exponent(r), dim).map_err(py_err)
}

#[pyfunction]
fn nelson_constant(p: f64, r: f64) -> PyResult<f64> {
    lab::nelson_constant(p, r).map_err(py_err)
}

#[pyfunction]
fn lieb_closed_form(u: f64, v: f64, p: f64, q: f64, r: f64) -> PyResult<f64> {
    lab::lieb_closed_form(&tuple(u, v, p, q, r)?).map_err(py_err)
}

#[pyfunction]
fn lieb_argmax(u: f64, v: f64, p: f64, q: f64, r: f64) -> PyResult<(f64, f64)> {
    lab::lieb_argmax(&tuple(u, v, p, q, r)?).map_err(py_err)
}

/// Numerical supremum of the Gaussian functional: `(s, t, value)`.
#[pyfunction]
fn lieb_sup_search(u: f64, v: f64, p: f64, q: f64, r: f64) -> PyResult<(f64, f64, f64)> {
    let found = lab::lieb_sup_search(&tuple(u, v, p, q, r)?).map_err(py_err)?;
    Ok((found.s, found.t, found.value))
}

/// `(lhs, rhs, ratio, passed)` for the Hölder inequality with `1/u + 1/v = 1`.
#[pyfunction]
#[pyo3(signature = (phi, psi, p, u, order = 64))]
fn holder_ratio(phi: &PyChaos, psi: &PyChaos, p: f64, u: f64, order: usize) -> PyResult<(f64, f64, f64, bool)> {
    let rule = gauss_hermite_rule(order).map_err(py_err)?;
    let v = wicklab::conjugate_exponent(exponent(u)).map_err(py_err)?.value();
    lab::holder_wick_ratio(&phi.inner, &psi.inner, exponent(p), u, v, &rule)
        .map(summary)
        .map_err(py_err)
}

/// `(lhs, rhs, ratio, passed)` for the interpolated inequality at `(u, v, p, q, r)`.
#[pyfunction]
#[pyo3(signature = (phi, psi, u, v, p, q, r, order = 64))]
#[allow(clippy::too_many_arguments)]
fn full_holder_ratio(
    phi: &PyChaos,
    psi: &PyChaos,
    u: f64,
    v: f64,
    p: f64,
    q: f64,
    r: f64,
    order: usize,
) -> PyResult<(f64, f64, f64, bool)> {
    let rule = gauss_hermite_rule(order).map_err(py_err)?;
    lab::full_holder_ratio(&phi.inner, &psi.inner, &tuple(u, v, p, q, r)?, &rule)
        .map(summary)
        .map_err(py_err)
}

/// `(t, ratio)` of the first violating rung, or `None` when there is none.
#[pyfunction]
fn minimality_counterexample(u: f64, v: f64, p: f64) -> PyResult<Option<(f64, f64)>> {
    match lab::minimality_counterexample(u, v, p) {
        Ok(c) => Ok(Some((c.t, c.ratio))),
        Err(WickError::NoCounterexample(_)) => Ok(None),
        Err(err) => Err(py_err(err)),
    }
}

/// Runs every verification section: `(passed, total, csv)`. Without a config
/// the built-in defaults are used.
#[pyfunction]
#[pyo3(signature = (config_json = None))]
fn verify(py: Python<'_>, config_json: Option<&str>) -> PyResult<(usize, usize, String)> {
    let config = match config_json {
        Some(text) => RunConfig::from_json(text).map_err(py_err)?,
        None => RunConfig::default(),
    };
    let result = py.detach(|| run_verify(&config)).map_err(py_err)?;
    let passed = result.reports.iter().filter(|r| r.pass).count();
    Ok((passed, result.reports.len(), result.to_csv()))
}

#[pymodule(name = "wicklab")]
fn wicklab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChaos>()?;
    m.add_function(wrap_pyfunction!(full_holder_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(sharp_young_constant, m)?)?;
    m.add_function(wrap_pyfunction!(nelson_constant, m)?)?;
    m.add_function(wrap_pyfunction!(lieb_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(lieb_argmax, m)?)?;
    m.add_function(wrap_pyfunction!(lieb_sup_search, m)?)?;
    m.add_function(wrap_pyfunction!(holder_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(full_holder_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(minimality_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
