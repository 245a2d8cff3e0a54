//! Python bindings. Structured results (reports, scorecards) cross the
//! boundary as JSON and arrive in Python as plain dicts and lists.

use std::path::PathBuf;
use std::sync::Arc;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use linset::blockingset;
use linset::harness::{self, LemmaId};
use linset::linearset::{self, FamilySpec, Linearity, Strategy};
use linset::reconstruct::PointPolicy;
use linset::{io, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(m) => PyIOError::new_err(m),
        e => PyValueError::new_err(format!("{}: {e}", linset::cli::error_kind(&e))),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// GF(p^t) with elements encoded as integers 0..q-1 (base-p digits).
#[pyclass(frozen, module = "linset")]
struct Field {
    inner: Arc<linset::Field>,
}

#[pymethods]
impl Field {
    #[new]
    fn new(p: u32, t: u32) -> PyResult<Self> {
        Ok(Field { inner: linset::Field::conway(p, t).map_err(py_err)? })
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn check(&self, a: u32) -> PyResult<u32> {
        self.inner.element(a).map(|e| e.value()).map_err(py_err)
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.add(self.check(a)?, self.check(b)?))
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.mul(self.check(a)?, self.check(b)?))
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        self.inner.inv(self.check(a)?).map_err(py_err)
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.check(a)?, e))
    }

    fn __repr__(&self) -> String {
        format!("Field({}, {})", self.inner.characteristic(), self.inner.degree())
    }
}

/// PG(n, p^t) with points ranked lexicographically on normalized coordinates.
#[pyclass(frozen, module = "linset")]
struct ProjSpace {
    inner: linset::ProjSpace,
}

#[pymethods]
impl ProjSpace {
    #[new]
    fn new(n: usize, p: u32, t: u32) -> PyResult<Self> {
        let f = linset::Field::conway(p, t).map_err(py_err)?;
        Ok(ProjSpace { inner: linset::ProjSpace::new(n, f).map_err(py_err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn num_points(&self) -> u32 {
        self.inner.num_points()
    }

    fn rank(&self, coords: Vec<u32>) -> PyResult<u32> {
        let p = self.inner.point(&coords).map_err(py_err)?;
        Ok(self.inner.rank(&p))
    }

    fn unrank(&self, r: u32) -> PyResult<Vec<u32>> {
        if r >= self.inner.num_points() {
            return Err(PyValueError::new_err(format!("range: rank {r} out of range")));
        }
        Ok(self.inner.unrank(r))
    }

    fn point_set(&self, ranks: Vec<u32>) -> PyResult<PointSet> {
        if let Some(r) = ranks.iter().find(|&&r| r >= self.inner.num_points()) {
            return Err(PyValueError::new_err(format!("range: rank {r} out of range")));
        }
        Ok(PointSet { inner: linset::PointSet::from_ranks(self.inner.clone(), ranks) })
    }

    fn __repr__(&self) -> String {
        format!("ProjSpace(PG({}, {}))", self.inner.dim(), self.inner.q())
    }
}

/// A set of points of PG(n, q).
#[pyclass(frozen, module = "linset")]
struct PointSet {
    inner: linset::PointSet,
}

#[pymethods]
impl PointSet {
    #[staticmethod]
    fn read(path: PathBuf) -> PyResult<Self> {
        Ok(PointSet { inner: io::read_points(&path).map_err(py_err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PointSet { inner: io::parse_points(text).map_err(py_err)? })
    }

    fn format(&self) -> String {
        io::format_points(&self.inner)
    }

    fn write(&self, path: PathBuf) -> PyResult<()> {
        io::write_points(&path, &self.inner).map_err(py_err)
    }

    #[getter]
    fn ranks(&self) -> Vec<u32> {
        self.inner.ranks().to_vec()
    }

    #[getter]
    fn space(&self) -> ProjSpace {
        ProjSpace { inner: self.inner.space().clone() }
    }

    fn points(&self) -> Vec<Vec<u32>> {
        self.inner.ranks().iter().map(|&r| self.inner.space().unrank(r)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, rank: u32) -> bool {
        self.inner.contains_rank(rank)
    }

    fn __eq__(&self, other: &PointSet) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("PointSet({} points in PG({}, {}))", self.inner.len(), self.inner.space().dim(), self.inner.space().q())
    }
}

/// Field reduction from PG(n, p^t) to PG(h(n+1)-1, p^e), h = t/e.
#[pyclass(frozen, module = "linset")]
struct SpreadContext {
    inner: linset::SpreadContext,
}

#[pymethods]
impl SpreadContext {
    #[new]
    #[pyo3(signature = (n, p, t, e=1))]
    fn new(n: usize, p: u32, t: u32, e: u32) -> PyResult<Self> {
        let f = linset::Field::conway(p, t).map_err(py_err)?;
        let big = linset::ProjSpace::new(n, f).map_err(py_err)?;
        Ok(SpreadContext { inner: linset::SpreadContext::new(big, e).map_err(py_err)? })
    }

    #[getter]
    fn p0(&self) -> u32 {
        self.inner.p0()
    }

    #[getter]
    fn h(&self) -> usize {
        self.inner.h()
    }

    /// Sorted small-side ranks of the spread element of a big point.
    fn element(&self, big_rank: u32) -> PyResult<Vec<u32>> {
        if big_rank >= self.inner.big().num_points() {
            return Err(PyValueError::new_err(format!("range: rank {big_rank} out of range")));
        }
        Ok(self.inner.element_ranks(big_rank).to_vec())
    }

    /// Linear set of a construction family, e.g. `{"family": "subgeometry", "m": 2}`.
    /// Returns the point set and the small-side basis.
    fn family(&self, py: Python<'_>, spec: Bound<'_, PyAny>) -> PyResult<(PointSet, Vec<Vec<u32>>)> {
        let text: String = py.import("json")?.call_method1("dumps", (spec,))?.extract()?;
        let spec: FamilySpec = serde_json::from_str(&text).map_err(|e| PyValueError::new_err(format!("bad_params: {e}")))?;
        let w = linearset::build_family(&self.inner, spec).map_err(py_err)?;
        Ok((PointSet { inner: w.points }, w.pi.basis().to_vec()))
    }

    /// Linear set B(U) of the span of the given small-side rows.
    fn linear_set(&self, rows: Vec<Vec<u32>>) -> PyResult<PointSet> {
        let pi = self.inner.small().subspace_from_rows(rows).map_err(py_err)?;
        Ok(PointSet { inner: self.inner.linear_set_of(&pi) })
    }

    /// Small-side basis of a linear structure of the set, or None.
    #[pyo3(signature = (points, k=None, exhaustive=false))]
    fn is_linear(&self, points: &PointSet, k: Option<i64>, exhaustive: bool) -> PyResult<Option<Vec<Vec<u32>>>> {
        let s = if exhaustive { Strategy::Exhaustive } else { Strategy::ReconstructFirst };
        Ok(match linearset::is_linear(&self.inner, &points.inner, s, k).map_err(py_err)? {
            Linearity::Linear(w) => Some(w.pi.basis().to_vec()),
            Linearity::NotLinear(_) => None,
        })
    }
}

/// Blocking-set report: blocking, small, minimal, exponent, trivial, Redei.
#[pyfunction]
fn analyze<'py>(py: Python<'py>, points: &PointSet, k: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &blockingset::analyze(&points.inner, k).map_err(py_err)?)
}

/// Per-point secant counts for the given p0.
#[pyfunction]
#[pyo3(signature = (points, p0, k=1))]
fn secants<'py>(py: Python<'py>, points: &PointSet, p0: u32, k: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &blockingset::secant_analysis(&points.inner, k, p0).map_err(py_err)?)
}

/// Transversal reconstruction; one record per base point.
#[pyfunction]
#[pyo3(signature = (points, k, p0, all_points=false))]
fn reconstruct<'py>(py: Python<'py>, points: &PointSet, k: i64, p0: u32, all_points: bool) -> PyResult<Bound<'py, PyAny>> {
    let policy = if all_points { PointPolicy::All } else { PointPolicy::First };
    let r = py.detach(|| linset::reconstruct::reconstruct(&points.inner, k, p0, policy)).map_err(py_err)?;
    to_py(py, &r)
}

/// Runs the lemma harness over a catalogue directory and returns the scorecard.
#[pyfunction]
#[pyo3(signature = (catalogue, slow=false, lemmas=None))]
fn run_harness<'py>(py: Python<'py>, catalogue: PathBuf, slow: bool, lemmas: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let ids: Vec<LemmaId> = match lemmas {
        None => LemmaId::ALL.to_vec(),
        Some(v) => v
            .iter()
            .map(|s| LemmaId::parse(s).ok_or_else(|| PyValueError::new_err(format!("bad_params: unknown lemma {s:?}"))))
            .collect::<PyResult<_>>()?,
    };
    let instances = harness::load_catalogue(&catalogue, slow).map_err(py_err)?;
    let card = py.detach(|| harness::scorecard(&instances, &ids));
    to_py(py, &card)
}

#[pyfunction]
fn conway_table_version() -> &'static str {
    linset::field::conway_table_version()
}

#[pymodule]
#[pyo3(name = "linset")]
fn linset_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<ProjSpace>()?;
    m.add_class::<PointSet>()?;
    m.add_class::<SpreadContext>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(secants, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(run_harness, m)?)?;
    m.add_function(wrap_pyfunction!(conway_table_version, m)?)?;
    Ok(())
}
