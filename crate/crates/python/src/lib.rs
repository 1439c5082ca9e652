//! Python bindings: presentations, Betti and Bass tables, verification
//! reports, the bound formulas, generic examples, matroid queries and
//! Alexander duality. Structured results come back as plain dicts.

use multibetti::json as mj;
use multibetti::koszul::{self, PrimeSelection};
use multibetti::{DegreeVector, ExactMatrix, Field, GenexSpec, Matroid, MonomialIdeal, SubsetMask};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

create_exception!(pymultibetti, MultibettiError, PyValueError, "Invalid input or failed computation.");

fn fail(e: multibetti::Error) -> PyErr {
    MultibettiError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn serialize<T: serde::Serialize>(v: &T) -> PyResult<Value> {
    serde_json::to_value(v).map_err(|e| MultibettiError::new_err(e.to_string()))
}

/// `"q"`, a prime `p`, or `"fp:p"`.
fn field_of(field: &Bound<'_, PyAny>) -> PyResult<Field> {
    if let Ok(p) = field.extract::<u64>() {
        return Field::prime(p).map_err(|e| fail(e.into()));
    }
    let s: String = field.extract()?;
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p: u64 = s
        .trim_start_matches("fp:")
        .parse()
        .map_err(|_| MultibettiError::new_err(format!("unknown field {s:?}")))?;
    Field::prime(p).map_err(|e| fail(e.into()))
}

fn degrees(gens: Vec<Vec<i64>>) -> Vec<DegreeVector> {
    gens.into_iter().map(DegreeVector).collect()
}

fn subsets(sets: Vec<SubsetMask>) -> Vec<Vec<usize>> {
    sets.into_iter().map(SubsetMask::indices).collect()
}

/// A finitely presented multigraded module, the cokernel of a homogeneous
/// matrix between free modules.
#[pyclass(frozen, name = "Presentation", module = "pymultibetti")]
struct PyPresentation {
    inner: multibetti::Presentation,
}

impl PyPresentation {
    fn valid(&self) -> PyResult<&multibetti::Presentation> {
        self.inner.ensure_valid().map_err(fail)?;
        Ok(&self.inner)
    }
}

#[pymethods]
impl PyPresentation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: mj::presentation_from_str(text).map_err(fail)? })
    }

    /// `R / I` for the monomial ideal generated by the exponent vectors `gens`.
    #[staticmethod]
    #[pyo3(signature = (vars, gens, field = None))]
    fn monomial_ideal(vars: usize, gens: Vec<Vec<i64>>, field: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let field = field.map(field_of).transpose()?.unwrap_or(Field::Rational);
        let inner = multibetti::Presentation::from_monomial_ideal(field, vars, &degrees(gens)).map_err(fail)?;
        Ok(PyPresentation { inner })
    }

    /// The residue field `k` placed in degree `degree`.
    #[staticmethod]
    #[pyo3(signature = (degree, field = None))]
    fn residue_field(degree: Vec<i64>, field: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let field = field.map(field_of).transpose()?.unwrap_or(Field::Rational);
        Ok(PyPresentation { inner: multibetti::Presentation::residue_field(field, DegreeVector(degree)) })
    }

    fn to_json(&self) -> String {
        mj::presentation_to_value(&self.inner).to_string()
    }

    #[getter]
    fn vars(&self) -> usize {
        self.inner.vars()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    /// Violated invariants, empty when the presentation is valid.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(|v| v.to_string()).collect()
    }

    fn module_rank(&self) -> PyResult<usize> {
        self.inner.module_rank().map_err(fail)
    }

    fn shift(&self, degree: Vec<i64>) -> PyResult<Self> {
        Ok(PyPresentation { inner: self.inner.shift(&DegreeVector(degree)).map_err(fail)? })
    }

    fn betti_totals(&self) -> PyResult<Vec<u64>> {
        Ok(koszul::betti_table(self.valid()?).map_err(fail)?.totals())
    }

    /// `{"vars", "by_index": [{"b1,b2": count}], "totals"}`.
    fn betti_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let t = koszul::betti_table(self.valid()?).map_err(fail)?;
        to_py(py, &mj::graded_table_to_value(&t))
    }

    /// Bass table at the prime generated by the variables in `prime`
    /// (0-based indices).
    fn bass_table<'py>(&self, py: Python<'py>, prime: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
        let p = self.valid()?;
        if let Some(&j) = prime.iter().find(|&&j| j >= p.vars()) {
            return Err(MultibettiError::new_err(format!("variable index {j} out of range for {} variables", p.vars())));
        }
        let t = koszul::bass_at_prime(p, SubsetMask::from_indices(prime)).map_err(fail)?;
        to_py(py, &mj::bass_table_to_value(&t))
    }

    /// Total Bass numbers, summed over all multigraded primes (or only the
    /// nonzero ones with `positive=True`).
    #[pyo3(signature = (positive = false))]
    fn total_bass(&self, positive: bool) -> PyResult<Vec<u64>> {
        let sel = if positive { PrimeSelection::Positive } else { PrimeSelection::All };
        koszul::total_bass_with(self.valid()?, sel).map_err(fail)
    }

    fn verify_betti<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = multibetti::verify_betti(self.valid()?).map_err(fail)?;
        to_py(py, &serialize(&report)?)
    }

    #[pyo3(signature = (positive = false))]
    fn verify_bass<'py>(&self, py: Python<'py>, positive: bool) -> PyResult<Bound<'py, PyAny>> {
        let sel = if positive { PrimeSelection::Positive } else { PrimeSelection::All };
        let v = multibetti::verify_bass_with(self.valid()?, sel).map_err(fail)?;
        to_py(py, &serialize(&v)?)
    }

    fn verify_sharpness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = multibetti::verify_sharpness(self.valid()?).map_err(fail)?;
        to_py(py, &serialize(&report)?)
    }

    fn circuits(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(subsets(self.inner.coefficient_matroid().map_err(fail)?.circuits().map_err(fail)?))
    }

    fn tflats(&self, level: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(subsets(self.inner.coefficient_matroid().map_err(fail)?.tflats_of_level(level).map_err(fail)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation({} x {} over {} in {} variables)",
            self.inner.rows(),
            self.inner.cols(),
            self.inner.field(),
            self.inner.vars()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
fn betti_bound(beta0: u64, beta1: u64, rank: u64, i: u64) -> PyResult<BigUint> {
    multibetti::betti_bound(beta0, beta1, rank, i).map_err(fail)
}

#[pyfunction]
fn brt_rank(n: u64, r: u64, i: u64) -> PyResult<BigUint> {
    multibetti::brt_rank(n, r, i).map_err(fail)
}

#[pyfunction]
#[pyo3(signature = (mu0, mu1, i, d = 0))]
fn bass_bound(mu0: u64, mu1: u64, i: u64, d: u64) -> PyResult<BigUint> {
    multibetti::bass_bound(mu0, mu1, i, d).map_err(fail)
}

#[pyfunction]
fn binomial(a: i64, b: i64) -> BigUint {
    multibetti::binomial(a, b)
}

/// Generic `rank x cols` presentation of uniform rank.
#[pyfunction]
#[pyo3(signature = (rank, cols, spike = 1, field = None, seed = None))]
fn genex(
    rank: usize,
    cols: usize,
    spike: i64,
    field: Option<&Bound<'_, PyAny>>,
    seed: Option<u64>,
) -> PyResult<PyPresentation> {
    let field = field.map(field_of).transpose()?.unwrap_or(Field::Rational);
    let mut spec = GenexSpec::new(rank, cols).over(field).with_spike(spike);
    if let Some(seed) = seed {
        spec = spec.with_seed(seed);
    }
    Ok(PyPresentation { inner: multibetti::generic_presentation(&spec).map_err(fail)? })
}

/// Minimal generators of the Alexander dual of `(x^g : g in gens)` with
/// respect to `a`.
#[pyfunction]
fn alexander_dual(vars: usize, gens: Vec<Vec<i64>>, a: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
    let ideal = MonomialIdeal::new(vars, degrees(gens)).map_err(fail)?;
    let dual = multibetti::alexander_dual(&ideal, &DegreeVector(a)).map_err(fail)?;
    Ok(dual.gens.into_iter().map(|g| g.0).collect())
}

#[pyfunction]
fn probe_duality<'py>(
    py: Python<'py>,
    module: &PyPresentation,
    candidate: &PyPresentation,
    a: Vec<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    let report = multibetti::miller_relation_probe(&module.inner, &candidate.inner, &DegreeVector(a)).map_err(fail)?;
    to_py(py, &serialize(&report)?)
}

fn matroid_of(rows: Vec<Vec<i64>>, field: Option<&Bound<'_, PyAny>>) -> PyResult<Matroid> {
    let field = field.map(field_of).transpose()?.unwrap_or(Field::Rational);
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(MultibettiError::new_err("matrix rows must have equal length"));
    }
    Ok(Matroid::from_matrix(&ExactMatrix::from_i64(field, &rows)))
}

/// Circuits of the column matroid of an integer matrix.
#[pyfunction]
#[pyo3(signature = (rows, field = None))]
fn matroid_circuits(rows: Vec<Vec<i64>>, field: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Vec<usize>>> {
    Ok(subsets(matroid_of(rows, field)?.circuits().map_err(fail)?))
}

/// T-flats of the given level of the column matroid of an integer matrix.
#[pyfunction]
#[pyo3(signature = (rows, level, field = None))]
fn matroid_tflats(rows: Vec<Vec<i64>>, level: usize, field: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Vec<usize>>> {
    Ok(subsets(matroid_of(rows, field)?.tflats_of_level(level).map_err(fail)?))
}

#[pyfunction]
#[pyo3(signature = (rows, rank, field = None))]
fn matroid_flats(rows: Vec<Vec<i64>>, rank: usize, field: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Vec<usize>>> {
    Ok(subsets(matroid_of(rows, field)?.flats_of_rank(rank).map_err(fail)?))
}

#[pymodule]
pub fn pymultibetti(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add("MultibettiError", m.py().get_type::<MultibettiError>())?;
    m.add("__version__", mj::VERSION)?;
    m.add_function(wrap_pyfunction!(betti_bound, m)?)?;
    m.add_function(wrap_pyfunction!(brt_rank, m)?)?;
    m.add_function(wrap_pyfunction!(bass_bound, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(genex, m)?)?;
    m.add_function(wrap_pyfunction!(alexander_dual, m)?)?;
    m.add_function(wrap_pyfunction!(probe_duality, m)?)?;
    m.add_function(wrap_pyfunction!(matroid_circuits, m)?)?;
    m.add_function(wrap_pyfunction!(matroid_tflats, m)?)?;
    m.add_function(wrap_pyfunction!(matroid_flats, m)?)?;
    Ok(())
}
