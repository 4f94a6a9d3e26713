//! Python bindings for `qcat-core`.
//!
//! Sign words are plain lists of `-1`/`1`, pair partitions are lists of
//! `(left, right)` tuples, test vectors are lists of `int`/`Fraction`
//! coordinates, and polynomials in `q` come back as [`Polynomial`].

use std::collections::BTreeMap;

use num::{BigInt, BigRational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qcat_core::fock::{self, TestVector};
use qcat_core::moments;
use qcat_core::pairings::{self, EpsilonSequence, PairPartition};
use qcat_core::sequences;
use qcat_core::verify::{Suite, VerifyParams};
use qcat_core::QPolynomial;

fn value_error(e: qcat_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn eps_from(values: Vec<i64>) -> PyResult<EpsilonSequence> {
    EpsilonSequence::new(values).map_err(value_error)
}

fn pairs_of(theta: &PairPartition) -> Vec<(i64, i64)> {
    theta.pairs().to_vec()
}

fn tests_from(tests: Option<Vec<Vec<BigRational>>>, len: usize) -> PyResult<Vec<TestVector>> {
    match tests {
        None => Ok(vec![TestVector::e1(); len]),
        Some(vs) => vs
            .into_iter()
            .map(|v| TestVector::new(v).map_err(value_error))
            .collect(),
    }
}

/// A Laurent polynomial in `q` with exact rational coefficients.
#[pyclass(
    name = "Polynomial",
    module = "qcat",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPolynomial {
    inner: QPolynomial,
}

impl From<QPolynomial> for PyPolynomial {
    fn from(inner: QPolynomial) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyPolynomial {
    /// `Polynomial([c0, c1, ...])` or `Polynomial({exponent: coeff})`.
    #[new]
    #[pyo3(signature = (coeffs = None))]
    fn new(coeffs: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let Some(coeffs) = coeffs else {
            return Ok(QPolynomial::zero().into());
        };
        if let Ok(map) = coeffs.extract::<BTreeMap<i64, BigRational>>() {
            return Ok(QPolynomial::from_terms(map).into());
        }
        let list: Vec<BigRational> = coeffs.extract()?;
        Ok(
            QPolynomial::from_terms(list.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
                .into(),
        )
    }

    #[staticmethod]
    fn q() -> Self {
        QPolynomial::q().into()
    }

    /// `{exponent: Fraction}` for the nonzero terms.
    fn coefficients(&self) -> BTreeMap<i64, BigRational> {
        self.inner.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    fn coeff(&self, exponent: i64) -> BigRational {
        self.inner.coeff(exponent)
    }

    fn degree(&self) -> Option<i64> {
        self.inner.degree()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn eval(&self, q: BigRational) -> PyResult<BigRational> {
        self.inner.eval(&q).map_err(value_error)
    }

    fn __call__(&self, q: BigRational) -> PyResult<BigRational> {
        self.eval(q)
    }

    fn __add__(&self, other: &Self) -> Self {
        (&self.inner + &other.inner).into()
    }

    fn __sub__(&self, other: &Self) -> Self {
        (&self.inner - &other.inner).into()
    }

    fn __mul__(&self, other: &Self) -> Self {
        (&self.inner * &other.inner).into()
    }

    fn __neg__(&self) -> Self {
        (-&self.inner).into()
    }

    fn __pow__(&self, exponent: u32, _modulo: Option<Py<PyAny>>) -> Self {
        self.inner.pow(exponent).into()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("polynomials serialize")
    }
}

#[pyfunction]
fn catalan(k: usize) -> BigInt {
    sequences::catalan(k)
}

#[pyfunction]
fn catalan_convolution(n: usize, m: usize) -> PyResult<BigInt> {
    sequences::catalan_convolution(n, m).map_err(value_error)
}

#[pyfunction]
fn w_direct(n: usize) -> PyPolynomial {
    sequences::w_direct(n).into()
}

#[pyfunction]
fn w_closed(n: usize) -> PyResult<PyPolynomial> {
    sequences::w_closed(n).map(Into::into).map_err(value_error)
}

/// `[u_0, ..., u_max]` from the recurrence.
#[pyfunction]
fn u_recurrence(max_n: usize) -> Vec<BigInt> {
    sequences::u_recurrence_values(max_n)
}

#[pyfunction]
fn u_closed(n: usize) -> BigInt {
    sequences::u_closed(n)
}

#[pyfunction]
fn verify_w_generating_function(order: usize, q: BigRational) -> bool {
    sequences::verify_w_generating_function(order, &q)
}

#[pyfunction]
fn verify_u_generating_function(order: usize) -> bool {
    sequences::verify_u_generating_function(order)
}

/// `"plus"`, `"plus-star"` or `"minus"`.
#[pyfunction]
fn classify(eps: Vec<i64>) -> PyResult<String> {
    Ok(eps_from(eps)?.classify().map_err(value_error)?.to_string())
}

#[pyfunction]
fn counterpart(eps: Vec<i64>) -> PyResult<Vec<(i64, i64)>> {
    let theta = pairings::counterpart(&eps_from(eps)?).map_err(value_error)?;
    Ok(pairs_of(&theta))
}

#[pyfunction]
fn plus_sequences(n: usize) -> Vec<Vec<i8>> {
    pairings::plus_sequences(n)
        .iter()
        .map(|e| e.values().to_vec())
        .collect()
}

#[pyfunction]
fn enumerate_pp(n: usize) -> Vec<Vec<(i64, i64)>> {
    pairings::enumerate_pp(n).map(|t| pairs_of(&t)).collect()
}

#[pyfunction]
fn enumerate_ncpp(n: usize) -> Vec<Vec<(i64, i64)>> {
    pairings::enumerate_ncpp(n).map(|t| pairs_of(&t)).collect()
}

#[pyfunction]
fn crossing_number(pairs: Vec<(i64, i64)>) -> PyResult<usize> {
    Ok(PairPartition::from_pairs(pairs)
        .map_err(value_error)?
        .crossing_number())
}

/// Members of `P_n(eps)` as pair lists.
#[pyfunction]
fn pset(eps: Vec<i64>) -> PyResult<Vec<Vec<(i64, i64)>>> {
    let p = moments::build_pset(&eps_from(eps)?).map_err(value_error)?;
    Ok(p.members().map(|t| pairs_of(&t)).collect())
}

#[pyfunction]
fn total_cardinality(n: usize) -> usize {
    moments::total_cardinality(n)
}

#[pyfunction]
#[pyo3(signature = (eps, tests = None))]
fn vacuum_expectation(
    eps: Vec<i64>,
    tests: Option<Vec<Vec<BigRational>>>,
) -> PyResult<PyPolynomial> {
    let eps = eps_from(eps)?;
    let tests = tests_from(tests, eps.len())?;
    fock::vacuum_expectation(&eps, &tests)
        .map(Into::into)
        .map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (eps, tests = None))]
fn moment_combinatorial(
    eps: Vec<i64>,
    tests: Option<Vec<Vec<BigRational>>>,
) -> PyResult<PyPolynomial> {
    let eps = eps_from(eps)?;
    let tests = tests_from(tests, eps.len())?;
    moments::moment_combinatorial(&eps, &tests)
        .map(Into::into)
        .map_err(value_error)
}

/// `{"operator": Polynomial, "combinatorial": Polynomial, "agree": bool}`.
#[pyfunction]
#[pyo3(signature = (eps, tests = None))]
fn cross_check<'py>(
    py: Python<'py>,
    eps: Vec<i64>,
    tests: Option<Vec<Vec<BigRational>>>,
) -> PyResult<Bound<'py, PyDict>> {
    let eps = eps_from(eps)?;
    let tests = tests_from(tests, eps.len())?;
    let r = moments::cross_check(&eps, &tests).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("operator", PyPolynomial::from(r.operator_value))?;
    d.set_item("combinatorial", PyPolynomial::from(r.combinatorial_value))?;
    d.set_item("agree", r.agree)?;
    Ok(d)
}

/// `<Φ, (A(e_1) + A^+(e_1))^{2n} Φ>`.
#[pyfunction]
fn total_moment(n: usize) -> PyPolynomial {
    moments::total_moment(n).into()
}

/// Runs a self-check suite (or `"all"`); returns `(passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (suite = "all", max = 5, seed = 42, trials = 20))]
fn verify(suite: &str, max: usize, seed: u64, trials: usize) -> PyResult<(bool, String)> {
    let suites = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(value_error)?]
    };
    let params = VerifyParams { max, seed, trials };
    let reports: Vec<_> = suites.iter().map(|s| s.run(&params)).collect();
    let passed = reports.iter().all(|r| r.passed());
    Ok((passed, reports.iter().map(ToString::to_string).collect()))
}

#[pymodule]
fn qcat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(catalan_convolution, m)?)?;
    m.add_function(wrap_pyfunction!(w_direct, m)?)?;
    m.add_function(wrap_pyfunction!(w_closed, m)?)?;
    m.add_function(wrap_pyfunction!(u_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(u_closed, m)?)?;
    m.add_function(wrap_pyfunction!(verify_w_generating_function, m)?)?;
    m.add_function(wrap_pyfunction!(verify_u_generating_function, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(counterpart, m)?)?;
    m.add_function(wrap_pyfunction!(plus_sequences, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_pp, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_ncpp, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_number, m)?)?;
    m.add_function(wrap_pyfunction!(pset, m)?)?;
    m.add_function(wrap_pyfunction!(total_cardinality, m)?)?;
    m.add_function(wrap_pyfunction!(vacuum_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(moment_combinatorial, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    m.add_function(wrap_pyfunction!(total_moment, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
