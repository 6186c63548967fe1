//! Python bindings. Structured results are returned as plain dicts and lists
//! built from the same JSON the command-line tool prints; exact integers in
//! those dicts are decimal strings, scalar getters return Python ints.

use std::path::PathBuf;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use tracelattice::bhargava::{self, BinaryCubicForm, GroupElement, TernaryPair};
use tracelattice::casimir;
use tracelattice::exact::{IntMatrix, RatMatrix};
use tracelattice::fixtures::{Fixture, FixtureStore as CoreStore};
use tracelattice::isometry::{self, SearchMode, DEFAULT_BUDGET};
use tracelattice::lifting;
use tracelattice::sublattice::{self, LatticeKind};
use tracelattice::Error;

create_exception!(tracelattice_py, TraceLatticeError, PyException);
create_exception!(tracelattice_py, BudgetExceededError, TraceLatticeError);

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded(_) => BudgetExceededError::new_err(e.to_string()),
        _ => TraceLatticeError::new_err(e.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn kind(s: &str) -> PyResult<LatticeKind> {
    s.parse().map_err(|_| PyValueError::new_err(format!("lattice kind must be full, zero or perp, got {s:?}")))
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn int_matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(rows).map_err(err)
}

/// Entries may be ints, `fractions.Fraction` or strings such as `"3/2"`.
fn rat_matrix(rows: &Bound<'_, PyAny>) -> PyResult<RatMatrix> {
    let rows: Vec<Vec<Bound<'_, PyAny>>> = rows.extract()?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let s = x.str()?.to_string();
                    s.trim().parse().map_err(|_| PyValueError::new_err(format!("not a rational: {s}")))
                })
                .collect::<PyResult<Vec<_>>>()
        })
        .collect::<PyResult<Vec<_>>>()?;
    RatMatrix::from_rows(parsed).map_err(err)
}

fn pair(a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<TernaryPair> {
    let p = TernaryPair { a, b };
    p.validate().map_err(err)?;
    Ok(p)
}

fn cubic(coeffs: Vec<BigInt>) -> PyResult<BinaryCubicForm> {
    if coeffs.len() != 4 {
        return Err(PyValueError::new_err("a binary cubic form has 4 coefficients"));
    }
    Ok(BinaryCubicForm { coeffs })
}

/// A number field with its fixture metadata.
#[pyclass(frozen, skip_from_py_object, module = "tracelattice_py")]
#[derive(Clone)]
struct Field {
    fx: Fixture,
}

#[pymethods]
impl Field {
    /// Parse a fixture record.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Field { fx: Fixture::from_json(text, "<python>").map_err(err)? })
    }

    #[getter]
    fn label(&self) -> String {
        self.fx.field.label().to_string()
    }
    #[getter]
    fn degree(&self) -> usize {
        self.fx.field.degree()
    }
    /// Defining polynomial, constant term first.
    #[getter]
    fn poly(&self) -> Vec<BigInt> {
        self.fx.field.poly().to_vec()
    }
    #[getter]
    fn disc(&self) -> BigInt {
        self.fx.field.disc().clone()
    }
    #[getter]
    fn trace_image(&self) -> BigInt {
        self.fx.field.trace_image()
    }
    #[getter]
    fn totally_real(&self) -> bool {
        self.fx.field.is_totally_real()
    }
    #[getter]
    fn galois(&self) -> Option<String> {
        self.fx.galois.clone()
    }

    /// Integral basis in power-basis coordinates, as strings.
    fn basis(&self) -> Vec<Vec<String>> {
        let b = self.fx.field.basis();
        (0..b.rows()).map(|i| b.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }

    #[pyo3(signature = (kind = "full"))]
    fn gram(&self, kind: &str) -> PyResult<Vec<Vec<BigInt>>> {
        let l = sublattice::lattice(&self.fx.field, self::kind(kind)?).map_err(err)?;
        Ok(int_rows(&l.gram))
    }

    /// Basis and Gram matrix of the chosen lattice.
    fn lattice(&self, py: Python<'_>, kind: &str) -> PyResult<Py<PyAny>> {
        to_py(py, &sublattice::lattice(&self.fx.field, self::kind(kind)?).map_err(err)?)
    }

    fn disc_relations(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &sublattice::disc_relations_check(&self.fx.field).map_err(err)?)
    }

    /// Approximate real embeddings of the power-basis generator.
    #[pyo3(signature = (precision = casimir::DEFAULT_PRECISION))]
    fn embeddings(&self, precision: u32) -> PyResult<Vec<f64>> {
        Ok(casimir::real_embeddings(&self.fx.field, precision).map_err(err)?.approx.clone())
    }

    fn __repr__(&self) -> String {
        format!("Field({:?}, degree={}, disc={})", self.fx.field.label(), self.fx.field.degree(), self.fx.field.disc())
    }
}

/// All fixtures of a directory, by label.
#[pyclass(frozen, module = "tracelattice_py")]
struct FixtureStore {
    store: CoreStore,
}

#[pymethods]
impl FixtureStore {
    #[new]
    fn new(dir: PathBuf) -> PyResult<Self> {
        Ok(FixtureStore { store: CoreStore::load_dir(&dir).map_err(err)? })
    }

    fn labels(&self) -> Vec<String> {
        self.store.iter().map(|f| f.label().to_string()).collect()
    }

    fn field(&self, label: &str) -> PyResult<Field> {
        Ok(Field { fx: self.store.get(label).map_err(err)?.clone() })
    }

    fn __len__(&self) -> usize {
        self.store.len()
    }

    fn __contains__(&self, label: &str) -> bool {
        self.store.get(label).is_ok()
    }
}

#[pyfunction]
#[pyo3(signature = (field, kind, budget = DEFAULT_BUDGET))]
fn aut_group(py: Python<'_>, field: &Field, kind: &str, budget: u64) -> PyResult<Py<PyAny>> {
    let l = sublattice::lattice(&field.fx.field, self::kind(kind)?).map_err(err)?;
    let r = py.detach(|| isometry::automorphism_group(&l.gram, budget)).map_err(err)?;
    to_py(py, &r)
}

/// Matrices `U` with `Uᵀ·G₁·U = G₂`; at most one unless `all` is set.
#[pyfunction]
#[pyo3(signature = (k, l, kind, all = false, budget = DEFAULT_BUDGET))]
fn find_isometries(py: Python<'_>, k: &Field, l: &Field, kind: &str, all: bool, budget: u64) -> PyResult<Vec<Vec<Vec<BigInt>>>> {
    let kind = self::kind(kind)?;
    let g1 = sublattice::lattice(&k.fx.field, kind).map_err(err)?.gram;
    let g2 = sublattice::lattice(&l.fx.field, kind).map_err(err)?.gram;
    let mode = if all { SearchMode::All } else { SearchMode::First };
    let maps = py.detach(|| isometry::find_isometry(&g1, &g2, mode, budget)).map_err(err)?;
    Ok(maps.iter().map(|m| int_rows(&m.u)).collect())
}

#[pyfunction]
#[pyo3(signature = (g1, g2, all = false, budget = DEFAULT_BUDGET))]
fn gram_isometries(py: Python<'_>, g1: Vec<Vec<BigInt>>, g2: Vec<Vec<BigInt>>, all: bool, budget: u64) -> PyResult<Vec<Vec<Vec<BigInt>>>> {
    let (g1, g2) = (int_matrix(g1)?, int_matrix(g2)?);
    let mode = if all { SearchMode::All } else { SearchMode::First };
    let maps = py.detach(|| isometry::find_isometry(&g1, &g2, mode, budget)).map_err(err)?;
    Ok(maps.iter().map(|m| int_rows(&m.u)).collect())
}

#[pyfunction]
#[pyo3(signature = (k, l, budget = DEFAULT_BUDGET))]
fn shape_compare(py: Python<'_>, k: &Field, l: &Field, budget: u64) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| isometry::shape_compare(&k.fx.field, &l.fx.field, budget)).map_err(err)?;
    to_py(py, &r)
}

/// Lift every zero or perp isometry `k → l`; returns `(summary, reports)`.
#[pyfunction]
#[pyo3(signature = (k, l, kind, budget = DEFAULT_BUDGET))]
fn lift_all(py: Python<'_>, k: &Field, l: &Field, kind: &str, budget: u64) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
    let kind = self::kind(kind)?;
    let (s, r) = py.detach(|| lifting::lift_all(&k.fx.field, &l.fx.field, kind, budget)).map_err(err)?;
    Ok((to_py(py, &s)?, to_py(py, &r)?))
}

#[pyfunction]
#[pyo3(signature = (k, l, budget = DEFAULT_BUDGET))]
fn theorem_report(py: Python<'_>, k: &Field, l: &Field, budget: u64) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| lifting::theorem_report(&k.fx, &l.fx, budget)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (field, budget = DEFAULT_BUDGET))]
fn restriction_check(py: Python<'_>, field: &Field, budget: u64) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| lifting::restriction_injectivity_check(&field.fx.field, budget)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (store, budget = DEFAULT_BUDGET))]
fn survey(py: Python<'_>, store: &FixtureStore, budget: u64) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| lifting::survey_pairs(&store.store, budget)).map_err(err)?;
    to_py(py, &r)
}

/// Casimir matrix of a map `k → l` given in integral-basis coordinates.
#[pyfunction]
#[pyo3(signature = (k, l, phi, precision = casimir::DEFAULT_PRECISION))]
fn casimir_matrix(py: Python<'_>, k: &Field, l: &Field, phi: &Bound<'_, PyAny>, precision: u32) -> PyResult<Py<PyAny>> {
    let phi = rat_matrix(phi)?;
    let r = py.detach(|| casimir::casimir_matrix(&k.fx.field, &l.fx.field, &phi, precision)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn cubic_disc(coeffs: Vec<BigInt>) -> PyResult<BigInt> {
    Ok(bhargava::cubic_disc(&cubic(coeffs)?))
}

#[pyfunction]
fn df_ring(py: Python<'_>, coeffs: Vec<BigInt>) -> PyResult<Py<PyAny>> {
    to_py(py, &bhargava::df_cubic_ring(&cubic(coeffs)?).map_err(err)?)
}

/// Coefficients of `4·det(Ax − By)`.
#[pyfunction]
fn resolvent(a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    Ok(bhargava::resolvent_form(&pair(a, b)?).map_err(err)?.coeffs)
}

#[pyfunction]
fn structure_constants(a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(int_rows(&bhargava::structure_constants_c(&pair(a, b)?).map_err(err)?))
}

#[pyfunction]
fn covariant_gram(a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(int_rows(&bhargava::covariant_gram(&pair(a, b)?).map_err(err)?))
}

#[pyfunction]
fn is_associative(a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<bool> {
    bhargava::associativity_check(&pair(a, b)?).map_err(err)
}

/// Action of `(g2, g3)` on the pair; returns the new `(a, b)`.
#[pyfunction]
fn gz_act(g2: Vec<Vec<BigInt>>, g3: Vec<Vec<BigInt>>, a: Vec<BigInt>, b: Vec<BigInt>) -> PyResult<(Vec<BigInt>, Vec<BigInt>)> {
    let g = GroupElement::new(int_matrix(g2)?, int_matrix(g3)?).map_err(err)?;
    let q = bhargava::gz_act(&g, &pair(a, b)?).map_err(err)?;
    Ok((q.a, q.b))
}

#[pymodule]
pub fn tracelattice_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TraceLatticeError", m.py().get_type::<TraceLatticeError>())?;
    m.add("BudgetExceededError", m.py().get_type::<BudgetExceededError>())?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    m.add_class::<Field>()?;
    m.add_class::<FixtureStore>()?;
    m.add_function(wrap_pyfunction!(aut_group, m)?)?;
    m.add_function(wrap_pyfunction!(find_isometries, m)?)?;
    m.add_function(wrap_pyfunction!(gram_isometries, m)?)?;
    m.add_function(wrap_pyfunction!(shape_compare, m)?)?;
    m.add_function(wrap_pyfunction!(lift_all, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_report, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_check, m)?)?;
    m.add_function(wrap_pyfunction!(survey, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(cubic_disc, m)?)?;
    m.add_function(wrap_pyfunction!(df_ring, m)?)?;
    m.add_function(wrap_pyfunction!(resolvent, m)?)?;
    m.add_function(wrap_pyfunction!(structure_constants, m)?)?;
    m.add_function(wrap_pyfunction!(covariant_gram, m)?)?;
    m.add_function(wrap_pyfunction!(is_associative, m)?)?;
    m.add_function(wrap_pyfunction!(gz_act, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_checks() {
        assert_eq!(kind("perp").unwrap(), LatticeKind::Perp);
        assert!(kind("half").is_err());
        assert!(cubic(vec![BigInt::from(1); 3]).is_err());
        assert!(pair(vec![BigInt::from(1); 6], vec![BigInt::from(0); 5]).is_err());
        assert_eq!(int_rows(&IntMatrix::identity(2)), vec![vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(1)]]);
    }
}
