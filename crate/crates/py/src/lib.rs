//! Python bindings: `import saw_py`.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use saw_core::bounds::{self, auto_bounds, LowerBoundSequence, Provenance};
use saw_core::certificate::{self, RatioCertificate};
use saw_core::engine::{self, build_cycle_family, EngineConfig, EventQuery};
use saw_core::graph::{self, GraphHandle, VertexKey};
use saw_core::quotient::{QuotientGraph, SubgroupAction};
use saw_core::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidVertex { .. }
        | Error::Catalog(_)
        | Error::InvalidSpec(_)
        | Error::Loop(_)
        | Error::InvalidAction(_)
        | Error::InvalidLabel { .. }
        | Error::Parameter(_)
        | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn key(text: &str) -> PyResult<VertexKey> {
    text.parse().map_err(err)
}

fn config(workers: Option<usize>) -> EngineConfig {
    workers.map_or_else(EngineConfig::default, EngineConfig::with_workers)
}

/// A vertex-transitive graph; vertices are strings like `0@1,2` or `w:0.2`.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(GraphHandle);

#[pymethods]
impl PyGraph {
    /// Catalog graph: `zd:2`, `ladder`, `square-octagon`, `tree:4`, `tree-with-end:3`.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        graph::catalog(name).map(PyGraph).map_err(err)
    }

    /// Graph from the text of a spec file.
    #[staticmethod]
    #[pyo3(signature = (text, id = "graph"))]
    fn from_spec(text: &str, id: &str) -> PyResult<Self> {
        graph::parse_graph_spec(text)
            .and_then(|s| s.build(id))
            .map(PyGraph)
            .map_err(err)
    }

    #[getter]
    fn id(&self) -> String {
        self.0.id().to_string()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    #[getter]
    fn origin(&self) -> String {
        self.0.origin().to_string()
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple()
    }

    fn is_forest(&self) -> bool {
        self.0.is_forest()
    }

    /// `(neighbor, multiplicity)` pairs.
    fn neighbors(&self, v: &str) -> PyResult<Vec<(String, u32)>> {
        Ok(self
            .0
            .neighbors(&key(v)?)
            .map_err(err)?
            .into_iter()
            .map(|nb| (nb.target.to_string(), nb.multiplicity))
            .collect())
    }

    fn ball(&self, v: &str, radius: usize) -> PyResult<Vec<String>> {
        Ok(self
            .0
            .ball(&key(v)?, radius)
            .map_err(err)?
            .iter()
            .map(|k| k.to_string())
            .collect())
    }

    /// Graph with the chord `u -- w` and its translates added.
    fn augment(&self, u: &str, w: &str) -> PyResult<Self> {
        self.0.augment((&key(u)?, &key(w)?)).map(PyGraph).map_err(err)
    }

    /// `[σ_0, …, σ_n]` from `start` (the origin by default).
    #[pyo3(signature = (n, start = None, workers = None))]
    fn count_saws(&self, py: Python<'_>, n: usize, start: Option<&str>, workers: Option<usize>) -> PyResult<Vec<BigUint>> {
        let v0 = match start {
            Some(s) => key(s)?,
            None => self.0.origin(),
        };
        let g = self.0.clone();
        let counts = py
            .detach(move || engine::count_saws(&g, &v0, n, &config(workers)))
            .map_err(err)?;
        Ok(counts.counts)
    }

    fn __repr__(&self) -> String {
        format!("Graph({:?}, degree={})", self.0.id(), self.0.degree())
    }
}

/// Quotient multigraph by a sublattice (`"2 0; 0 2"`) or a named action.
#[pyclass(name = "Quotient", frozen)]
struct PyQuotient(QuotientGraph);

#[pymethods]
impl PyQuotient {
    #[new]
    #[pyo3(signature = (graph, sublattice = None, action = None))]
    fn new(graph: &PyGraph, sublattice: Option<&str>, action: Option<&str>) -> PyResult<Self> {
        let a = match (sublattice, action) {
            (Some(rows), None) => SubgroupAction::parse_rows(rows).and_then(|r| SubgroupAction::sublattice(&r)),
            (None, Some(name)) => SubgroupAction::catalog(name),
            _ => return Err(PyValueError::new_err("give exactly one of sublattice and action")),
        }
        .map_err(err)?;
        QuotientGraph::new(&graph.0, &a).map(PyQuotient).map_err(err)
    }

    #[getter]
    fn id(&self) -> String {
        self.0.id()
    }

    #[getter]
    fn base(&self) -> String {
        self.0.base().to_string()
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    /// Number of orbits, `None` when infinite.
    fn orbit_count(&self) -> Option<usize> {
        self.0.orbit_count()
    }

    fn orbits(&self) -> Vec<String> {
        self.0.orbits().iter().map(|k| k.to_string()).collect()
    }

    fn orbit_of(&self, v: &str) -> PyResult<String> {
        self.0.orbit_of(&key(v)?).map(|k| k.to_string()).map_err(err)
    }

    /// `(target orbit, multiplicity)` pairs, loops included.
    fn out_edges(&self, orbit: &str) -> PyResult<Vec<(String, u32)>> {
        Ok(self
            .0
            .out_edges(&key(orbit)?)
            .map_err(err)?
            .into_iter()
            .map(|e| (e.target.to_string(), e.multiplicity))
            .collect())
    }

    fn is_symmetric(&self) -> bool {
        self.0.check_symmetry()
    }

    fn check_representative_independence(&self, radius: usize) -> PyResult<bool> {
        self.0.check_representative_independence(radius).map_err(err)
    }

    /// `(type, ℓ̄)`; type 1 has `ℓ̄ = 1` (a loop).
    fn classify_type(&self) -> PyResult<(u8, usize)> {
        let r = self.0.classify_type().map_err(err)?;
        Ok((r.kind, r.length))
    }

    /// The quotient report as JSON.
    fn summary_json(&self) -> PyResult<String> {
        let s = self.0.summary().map_err(err)?;
        serde_json::to_string(&s).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// Undirected graph on the orbits (simple, or keeping multiplicities).
    #[pyo3(signature = (keep_multiplicity = false))]
    fn derive_undirected(&self, keep_multiplicity: bool) -> PyResult<PyGraph> {
        self.0.derive_undirected(keep_multiplicity).map(PyGraph).map_err(err)
    }

    /// `[σ⃗_0, …, σ⃗_n]` from the base orbit.
    #[pyo3(signature = (n, workers = None))]
    fn count_directed_saws(&self, py: Python<'_>, n: usize, workers: Option<usize>) -> PyResult<Vec<BigUint>> {
        let q = &self.0;
        let c = py.detach(|| engine::count_directed_saws(q, n, &config(workers))).map_err(err)?;
        Ok(c.counts)
    }

    /// `counts[n][r] = σ⃗_n(r, E_k^m)`; `k` defaults to `ℓ̄`.
    #[pyo3(signature = (n, k = None, m = None, r_max = 0, workers = None))]
    fn event_counts(
        &self,
        py: Python<'_>,
        n: usize,
        k: Option<usize>,
        m: Option<usize>,
        r_max: usize,
        workers: Option<usize>,
    ) -> PyResult<Vec<Vec<BigUint>>> {
        let q = &self.0;
        let profile = py
            .detach(|| {
                let report = q.classify_type()?;
                let family = build_cycle_family(q, &report, n)?;
                let query = EventQuery {
                    k: k.unwrap_or(report.length),
                    m,
                    r_max,
                };
                engine::event_profile(q, &family, query, n, &config(workers))
            })
            .map_err(err)?;
        Ok(profile.counts)
    }

    fn __repr__(&self) -> String {
        format!("Quotient({:?})", self.0.id())
    }
}

/// A ratio certificate.
#[pyclass(name = "Certificate", frozen)]
struct PyCertificate(RatioCertificate);

#[pymethods]
impl PyCertificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyCertificate)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.0).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    #[getter]
    fn status(&self) -> String {
        match self.0.status {
            certificate::Status::Certified => "certified",
            certificate::Status::InconclusiveBudget => "inconclusive-budget",
        }
        .to_string()
    }

    #[getter]
    fn r_final(&self) -> Option<f64> {
        self.0.constants.as_ref().map(|k| k.r_final)
    }

    /// `(r, s, m)` from the parameter search.
    #[getter]
    fn params(&self) -> Option<(usize, usize, usize)> {
        self.0.params.map(|p| (p.r, p.s, p.m))
    }

    /// Replays the certificate; returns the list of problems (empty when valid).
    fn verify(&self) -> Vec<String> {
        certificate::verify(&self.0).problems
    }

    fn __repr__(&self) -> String {
        format!("Certificate({:?}, status={:?})", self.0.quotient, self.status())
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    graph::CATALOG_NAMES.to_vec()
}

/// `[β_0, …, β_n]`, bridges on Z^d.
#[pyfunction]
#[pyo3(signature = (d, n, workers = None))]
fn bridge_counts(py: Python<'_>, d: usize, n: usize, workers: Option<usize>) -> PyResult<Vec<BigUint>> {
    py.detach(|| bounds::bridge_counts(d, n, &config(workers))).map_err(err)
}

/// `b_1, …, b_n`, or `b_n ≡ mu_exact` when given.
#[pyfunction]
#[pyo3(signature = (graph, n, mu_exact = None, workers = None))]
fn lower_bounds(graph: &PyGraph, n: usize, mu_exact: Option<f64>, workers: Option<usize>) -> PyResult<Vec<f64>> {
    bound_sequence(&graph.0, n, mu_exact, workers).map(|b| b.values())
}

fn bound_sequence(g: &GraphHandle, n: usize, mu_exact: Option<f64>, workers: Option<usize>) -> PyResult<LowerBoundSequence> {
    match mu_exact {
        Some(mu) if mu.is_finite() && mu > 0.0 => Ok(LowerBoundSequence::constant(g.id(), mu, n, Provenance::Constant)),
        Some(mu) => Err(PyValueError::new_err(format!("mu_exact must be positive, got {mu}"))),
        None => auto_bounds(g, n, &config(workers)).map_err(err),
    }
}

/// Runs the ratio certificate search on `quotient` with walks up to `budget`.
#[pyfunction]
#[pyo3(signature = (quotient, budget, mu_exact = None, workers = None))]
fn certify_ratio(
    py: Python<'_>,
    quotient: &PyQuotient,
    budget: usize,
    mu_exact: Option<f64>,
    workers: Option<usize>,
) -> PyResult<PyCertificate> {
    let q = &quotient.0;
    let b = bound_sequence(q.graph(), budget, mu_exact, workers)?;
    py.detach(|| {
        let report = q.classify_type()?;
        let family = build_cycle_family(q, &report, budget)?;
        certificate::certify_ratio(q.graph(), q, &family, &b, budget, &config(workers))
    })
    .map(PyCertificate)
    .map_err(err)
}

#[pymodule]
pub fn saw_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyQuotient>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(bridge_counts, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(certify_ratio, m)?)?;
    Ok(())
}
