//! Python bindings. Structured results are returned as plain dicts and lists.

use coxtwist::{
    angle, canonical_form, chordality, decide_isomorphic, enumerate_twist_moves, expand, export, georep,
    minimal_separators_between, parse_auto, twist_orbit, DecideOptions, Error, Format, MoveRecord, OrbitOptions,
    PDiagram,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::InvariantViolation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A Coxeter system given by its P-diagram.
#[pyclass(name = "Diagram", module = "coxtwist", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDiagram {
    inner: PDiagram,
}

impl From<PDiagram> for PyDiagram {
    fn from(inner: PDiagram) -> Self {
        PyDiagram { inner }
    }
}

#[pymethods]
impl PyDiagram {
    #[new]
    #[pyo3(signature = (generators, edges = Vec::new()))]
    fn new(generators: Vec<String>, edges: Vec<(String, String, u32)>) -> PyResult<Self> {
        PDiagram::new(&generators, &edges).map(Into::into).map_err(to_py_err)
    }

    /// Parses `.cox` or JSON text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_auto(text.as_bytes()).map(Into::into).map_err(to_py_err)
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    /// The label of a pair, or `None` when it is infinite.
    fn label(&self, s: &str, t: &str) -> PyResult<Option<u32>> {
        self.inner.label(s, t).map(|l| l.finite()).map_err(to_py_err)
    }

    fn edges(&self) -> Vec<(String, String, u32)> {
        self.inner.named_edges()
    }

    #[pyo3(signature = (format = "json"))]
    fn export(&self, format: &str) -> PyResult<String> {
        let f: Format = format.parse().map_err(to_py_err)?;
        Ok(export(&self.inner, f))
    }

    fn canonical_form(&self) -> String {
        canonical_form(&self.inner).to_hex()
    }

    fn is_isomorphic_diagram(&self, other: &PyDiagram) -> bool {
        canonical_form(&self.inner) == canonical_form(&other.inner)
    }

    fn chordality(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &chordality(&self.inner))
    }

    fn is_chordal(&self) -> bool {
        chordality(&self.inner).chordal
    }

    fn bases(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &coxtwist::bases(&self.inner))
    }

    fn minimal_separators(&self, c: &str, f: &str) -> PyResult<Vec<Vec<String>>> {
        minimal_separators_between(&self.inner, c, f).map_err(to_py_err)
    }

    fn candidate_bad_edges(&self) -> Vec<(String, String)> {
        angle::candidate_bad_edges(&self.inner)
    }

    /// True when two distinct qualifying 5-edges have heads sharing a vertex.
    fn has_shared_head_vertex(&self) -> bool {
        angle::has_shared_head_vertex(&self.inner)
    }

    fn bad_separators(&self, py: Python<'_>, x: &str, y: &str) -> PyResult<Py<PyAny>> {
        to_py(py, &angle::bad_separators(&self.inner, x, y).map_err(to_py_err)?)
    }

    fn gross_separators(&self, py: Python<'_>, x: &str, y: &str) -> PyResult<Py<PyAny>> {
        to_py(py, &angle::gross_separators(&self.inner, x, y).map_err(to_py_err)?)
    }

    fn star_decomposition(&self, py: Python<'_>, x: &str, y: &str) -> PyResult<Py<PyAny>> {
        to_py(py, &angle::star_decomposition(&self.inner, x, y).map_err(to_py_err)?)
    }

    fn cross_eyed_twist(&self, x: &str, y: &str) -> PyResult<PyDiagram> {
        angle::cross_eyed_twist(&self.inner, x, y).map(Into::into).map_err(to_py_err)
    }

    /// Elementary moves as JSON-compatible dicts accepted by `apply_move`.
    fn twist_moves(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let records: Vec<MoveRecord> = enumerate_twist_moves(&self.inner).iter().map(|m| m.record(&self.inner)).collect();
        to_py(py, &records)
    }

    /// Applies a move given as a JSON string.
    fn apply_move(&self, move_json: &str) -> PyResult<PyDiagram> {
        let record: MoveRecord = serde_json::from_str(move_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
        record.apply(&self.inner).map(Into::into).map_err(to_py_err)
    }

    /// The expanded diagram and its blow-up log.
    fn expand(&self, py: Python<'_>) -> PyResult<(PyDiagram, Py<PyAny>)> {
        let (e, log) = expand(&self.inner);
        Ok((e.into(), to_py(py, &log)?))
    }

    /// One diagram per canonical form in the twist orbit.
    #[pyo3(signature = (cross_eyed = true, max_size = 1_000_000))]
    fn orbit(&self, py: Python<'_>, cross_eyed: bool, max_size: usize) -> PyResult<Vec<PyDiagram>> {
        let d = self.inner.clone();
        let orbit = py
            .detach(move || twist_orbit(&d, OrbitOptions { use_cross_eyed: cross_eyed, max_size }))
            .map_err(to_py_err)?
            .complete(max_size)
            .map_err(to_py_err)?;
        Ok(orbit.entries.into_iter().map(|e| e.diagram.into()).collect())
    }

    /// Order of `w1·w2` in the reflection representation; `None` above the bound.
    fn word_order(&self, w1: Vec<String>, w2: Vec<String>) -> PyResult<Option<u32>> {
        let rep = georep::build_rep(&self.inner);
        match georep::word_order(&rep, &w1, &w2).map_err(to_py_err)? {
            georep::MeasuredOrder::Finite(k) => Ok(Some(k)),
            georep::MeasuredOrder::ExceedsBound(_) => Ok(None),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyDiagram) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Diagram(generators={:?}, edges={:?})", self.inner.names(), self.inner.named_edges())
    }
}

/// Decides whether two diagrams define isomorphic groups; returns the verdict
/// with its certificate as a dict.
#[pyfunction]
fn decide(py: Python<'_>, d1: &PyDiagram, d2: &PyDiagram) -> PyResult<Py<PyAny>> {
    let (a, b) = (d1.inner.clone(), d2.inner.clone());
    let verdict = py.detach(move || decide_isomorphic(&a, &b, DecideOptions::default()));
    to_py(py, &verdict)
}

#[pymodule]
#[pyo3(name = "coxtwist")]
fn coxtwist_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    Ok(())
}
