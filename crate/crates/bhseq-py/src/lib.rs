//! Python bindings: the sequence generator, the closed forms, the witness
//! search, and the support table, with errors mapped onto the matching
//! Python exception types.

use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use bhseq::error::Error;
use bhseq::formulas;
use bhseq::greedy;
use bhseq::set;
use bhseq::table;
use bhseq::witness;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        Error::InvalidInput(_) | Error::Range(_) => PyValueError::new_err(e.to_string()),
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Greedy B_h prefix a_0..a_terms as a list of ints.
#[pyfunction]
#[pyo3(signature = (h, terms = 4))]
fn greedy_sequence(h: u32, terms: u32) -> PyResult<Vec<u64>> {
    Ok(greedy::greedy_sequence(h, terms).map_err(to_py)?.terms)
}

/// True when every integer has at most one h-fold representation.
#[pyfunction]
fn is_bh_set(elements: Vec<u64>, h: u32) -> PyResult<bool> {
    set::is_bh_set_bruteforce(&elements, h).map_err(to_py)
}

/// First pair of distinct h-multisets with equal sums, or None.
#[pyfunction]
fn find_collision(elements: Vec<u64>, h: u32) -> PyResult<Option<(Vec<u64>, Vec<u64>)>> {
    set::find_collision(&elements, h).map_err(to_py)
}

/// Number of h-multisets of the set summing to n.
#[pyfunction]
fn count_representations(elements: Vec<u64>, h: u32, n: u64) -> PyResult<u64> {
    set::count_representations(&elements, h, n).map_err(to_py)
}

/// Closed form for greedy term k (k <= 4).
#[pyfunction]
fn closed_form_term(h: u32, k: u32) -> PyResult<u64> {
    formulas::closed_form_term(h, k).map_err(to_py)
}

/// Fourth term via the single floor expression.
#[pyfunction]
fn a4_floor_form(h: u32) -> PyResult<u64> {
    formulas::a4_floor_form(h).map_err(to_py)
}

/// The factor H with a_4 = (h+1) * H.
#[pyfunction]
fn a4_cofactor(h: u32) -> PyResult<u64> {
    Ok(formulas::a4_cofactor(h).map_err(to_py)?.value)
}

/// Geometric-sum bound on term k: sum of h^i for i < k.
#[pyfunction]
fn upper_bound_sum(h: u32, k: u32) -> PyResult<u64> {
    formulas::upper_bound_sum(h, k).map_err(to_py)
}

/// Least candidate beyond the third term carrying no collision witness.
#[pyfunction]
fn min_unblocked(h: u32) -> PyResult<u64> {
    witness::min_unblocked(h).map_err(to_py)
}

type WitnessTuple = (u32, u32, u32, u32, u32, u32, u32);

/// Witness coefficients (x0, x1, x2, x3, y1, y2, y3) blocking candidate
/// c against the four-term prefix, or None when c is admissible.
#[pyfunction]
fn collision_witness(h: u32, c: u64) -> PyResult<Option<WitnessTuple>> {
    Ok(witness::collision_witness(h, c)
        .map_err(to_py)?
        .map(|w| (w.x0, w.x1, w.x2, w.x3, w.y1, w.y2, w.y3)))
}

/// The blocked candidates beyond the third term, as merged closed
/// intervals (lo, hi).
#[pyfunction]
fn blocked_intervals(h: u32) -> PyResult<Vec<(i64, i64)>> {
    Ok(witness::blocked_candidates(h)
        .map_err(to_py)?
        .into_iter()
        .map(|iv| (iv.lo, iv.hi))
        .collect())
}

/// Layered sumset membership table over a fixed ground set.
#[pyclass]
struct SupportTable {
    inner: table::SumSupportTable,
}

#[pymethods]
impl SupportTable {
    #[new]
    fn new(elements: Vec<u64>, h: u32) -> PyResult<Self> {
        let elements = set::normalize(&elements).map_err(to_py)?;
        Ok(Self {
            inner: table::build_support_table(&elements, h).map_err(to_py)?,
        })
    }

    /// Whether b (beyond the current maximum) can join the set without
    /// creating a second representation.
    fn admissible(&self, b: u64) -> PyResult<bool> {
        table::admissible(&self.inner, b).map_err(to_py)
    }

    /// Grow the table by an admissible element.
    fn insert(&mut self, b: u64) -> PyResult<()> {
        self.inner = table::insert_element(&self.inner, b).map_err(to_py)?;
        Ok(())
    }

    /// The cardinality route: |D_h| equals the full multiset count
    /// exactly when the ground set has the B_h property.
    fn passes_cardinality_check(&self) -> PyResult<bool> {
        table::verify_by_cardinality(&self.inner).map_err(to_py)
    }

    /// Size of the level-j support D_j.
    fn support_size(&self, j: u32) -> PyResult<usize> {
        if j > self.inner.h() {
            return Err(PyValueError::new_err(format!(
                "level {j} exceeds h = {}",
                self.inner.h()
            )));
        }
        Ok(self.inner.support(j).len())
    }

    fn memory_bytes(&self) -> usize {
        self.inner.memory_bytes()
    }

    #[getter]
    fn h(&self) -> u32 {
        self.inner.h()
    }

    #[getter]
    fn max_element(&self) -> u64 {
        self.inner.max_element()
    }

    fn __len__(&self) -> usize {
        self.inner.support(self.inner.h()).len()
    }

    fn __repr__(&self) -> String {
        format!(
            "SupportTable(h={}, elements={}, |D_h|={})",
            self.inner.h(),
            self.inner.ground_size(),
            self.inner.support(self.inner.h()).len()
        )
    }
}

#[pymodule]
fn bhseq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(greedy_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(is_bh_set, m)?)?;
    m.add_function(wrap_pyfunction!(find_collision, m)?)?;
    m.add_function(wrap_pyfunction!(count_representations, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_term, m)?)?;
    m.add_function(wrap_pyfunction!(a4_floor_form, m)?)?;
    m.add_function(wrap_pyfunction!(a4_cofactor, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound_sum, m)?)?;
    m.add_function(wrap_pyfunction!(min_unblocked, m)?)?;
    m.add_function(wrap_pyfunction!(collision_witness, m)?)?;
    m.add_function(wrap_pyfunction!(blocked_intervals, m)?)?;
    m.add_class::<SupportTable>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
