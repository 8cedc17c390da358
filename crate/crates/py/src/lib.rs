use std::time::Duration;

use gooddecomp_core as core;
use gooddecomp_core::error::{ClawFreeError, PreconditionError};
use gooddecomp_core::generators::{self, Filter, RandomSpec};
use gooddecomp_core::predicates::{self, DEFAULT_CYCLE_BUDGET};
use gooddecomp_core::{Outcome, Part, SearchLimits};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(gooddecomp, GoodDecompError, PyValueError);
create_exception!(gooddecomp, PreconditionFailed, GoodDecompError);
create_exception!(gooddecomp, BudgetExceeded, GoodDecompError);
create_exception!(gooddecomp, TheoremViolation, PyRuntimeError);

fn value_err(e: impl ToString) -> PyErr {
    GoodDecompError::new_err(e.to_string())
}

fn precondition(e: PreconditionError) -> PyErr {
    PreconditionFailed::new_err((e.code(), e.to_string()))
}

fn clawfree_err(e: ClawFreeError) -> PyErr {
    match e {
        ClawFreeError::Precondition(p) => precondition(p),
        ClawFreeError::TheoremViolation(v) => {
            TheoremViolation::new_err((v.reason.clone(), v.graph6.clone()))
        }
    }
}

type Pair = (usize, usize);

/// Simple undirected graph on vertices 0..n.
#[pyclass(name = "Graph", frozen, eq, skip_from_py_object, module = "gooddecomp")]
#[derive(Clone, PartialEq)]
struct PyGraph(core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<Pair>) -> PyResult<Self> {
        core::Graph::from_edge_list(n, edges)
            .map(PyGraph)
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        core::parse_graph6(text).map(PyGraph).map_err(value_err)
    }

    fn to_graph6(&self) -> PyResult<String> {
        core::write_graph6(&self.0).map_err(value_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<Pair> {
        self.0.edges().map(|e| e.endpoints()).collect()
    }

    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.0.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.0.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.has_edge(u, v)
    }

    /// Returns the smaller graph and the old-to-new vertex map (None = removed).
    fn remove_vertices(&self, vertices: Vec<usize>) -> PyResult<(PyGraph, Vec<Option<usize>>)> {
        for &v in &vertices {
            self.check(v)?;
        }
        let (g, map) = self.0.remove_vertices(&vertices);
        Ok((PyGraph(g), map.as_slice().to_vec()))
    }

    fn identify_vertices(&self, vertices: Vec<usize>) -> PyResult<(PyGraph, Vec<Option<usize>>)> {
        if vertices.is_empty() {
            return Err(value_err("identify_vertices needs at least one vertex"));
        }
        for &v in &vertices {
            self.check(v)?;
        }
        let (g, map, _) = self.0.identify_vertices(&vertices);
        Ok((PyGraph(g), map.as_slice().to_vec()))
    }

    #[pyo3(signature = (decomposition = None))]
    fn to_dot(&self, decomposition: Option<&PyDecomposition>) -> PyResult<String> {
        core::dot::to_dot(&self.0, decomposition.map(|d| &d.0)).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.edge_count())
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v < self.0.n() {
            Ok(())
        } else {
            Err(value_err(format!(
                "vertex {v} out of range 0..{}",
                self.0.n()
            )))
        }
    }
}

/// Edge partition into tree, matching and 2-regular parts.
#[pyclass(
    name = "Decomposition",
    frozen,
    eq,
    skip_from_py_object,
    module = "gooddecomp"
)]
#[derive(Clone, PartialEq)]
struct PyDecomposition(core::Decomposition);

fn part_pairs(d: &core::Decomposition, part: Part) -> Vec<Pair> {
    d.part(part).iter().map(|e| e.endpoints()).collect()
}

#[pymethods]
impl PyDecomposition {
    #[new]
    #[pyo3(signature = (tree, matching = Vec::new(), two_regular = Vec::new()))]
    fn new(tree: Vec<Pair>, matching: Vec<Pair>, two_regular: Vec<Pair>) -> PyResult<Self> {
        core::Decomposition::from_pairs(&tree, &matching, &two_regular)
            .map(PyDecomposition)
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        core::Decomposition::from_json(text)
            .map(PyDecomposition)
            .map_err(value_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn tree(&self) -> Vec<Pair> {
        part_pairs(&self.0, Part::Tree)
    }

    #[getter]
    fn matching(&self) -> Vec<Pair> {
        part_pairs(&self.0, Part::Matching)
    }

    #[getter]
    fn two_regular(&self) -> Vec<Pair> {
        part_pairs(&self.0, Part::TwoRegular)
    }

    fn __repr__(&self) -> String {
        format!("Decomposition({})", self.0.to_json())
    }
}

/// Returns {"ok": bool, "violations": [(code, detail), ...]}.
#[pyfunction]
fn verify<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    decomposition: &PyDecomposition,
) -> PyResult<Bound<'py, PyDict>> {
    let report = core::verify(&graph.0, &decomposition.0);
    let out = PyDict::new(py);
    out.set_item("ok", report.ok)?;
    let violations: Vec<(&str, String)> = report
        .violations
        .iter()
        .map(|v| (v.code.as_str(), v.detail.clone()))
        .collect();
    out.set_item("violations", violations)?;
    Ok(out)
}

/// Returns (decomposition, trace) with trace a list of (tag, vertices, edges).
#[pyfunction]
#[allow(clippy::type_complexity)]
fn decompose_clawfree(
    graph: &PyGraph,
) -> PyResult<(PyDecomposition, Vec<(&'static str, Vec<usize>, Vec<Pair>)>)> {
    let (d, trace) = core::decompose_clawfree(&graph.0).map_err(clawfree_err)?;
    let trace = trace
        .entries
        .iter()
        .map(|t| {
            (
                t.tag.as_str(),
                t.vertices.clone(),
                t.edges.iter().map(|e| e.endpoints()).collect(),
            )
        })
        .collect();
    Ok((PyDecomposition(d), trace))
}

fn limits(max_nodes: u64, timeout_ms: Option<u64>) -> SearchLimits {
    SearchLimits {
        max_nodes,
        time_limit: timeout_ms.map(Duration::from_millis),
    }
}

/// Returns (outcome, decomposition or None, nodes) with outcome one of
/// "good", "not_good", "budget_exceeded".
#[pyfunction]
#[pyo3(signature = (graph, max_nodes = core::exact::DEFAULT_MAX_NODES, timeout_ms = None))]
fn find_good_decomposition(
    graph: &PyGraph,
    max_nodes: u64,
    timeout_ms: Option<u64>,
) -> PyResult<(&'static str, Option<PyDecomposition>, u64)> {
    let res = core::find_good_decomposition(&graph.0, limits(max_nodes, timeout_ms))
        .map_err(precondition)?;
    let tag = res.outcome.tag();
    let d = match res.outcome {
        Outcome::Good(d) => Some(PyDecomposition(d)),
        _ => None,
    };
    Ok((tag, d, res.stats.nodes))
}

#[pyfunction]
#[pyo3(signature = (graph, max_nodes = core::exact::DEFAULT_MAX_NODES))]
fn count_good_decompositions(graph: &PyGraph, max_nodes: u64) -> PyResult<u64> {
    core::count_good_decompositions(&graph.0, SearchLimits::nodes(max_nodes)).map_err(|e| match e {
        core::exact::CountError::Precondition(p) => precondition(p),
        core::exact::CountError::Budget(b) => BudgetExceeded::new_err(b.to_string()),
    })
}

/// Returns (decomposition, method) with method "clawfree" or "exact".
#[pyfunction]
#[pyo3(signature = (graph, max_nodes = core::exact::DEFAULT_MAX_NODES, timeout_ms = None))]
fn decompose_auto(
    graph: &PyGraph,
    max_nodes: u64,
    timeout_ms: Option<u64>,
) -> PyResult<(PyDecomposition, &'static str)> {
    use core::clawfree::AutoError;
    match core::decompose_auto(&graph.0, limits(max_nodes, timeout_ms)) {
        Ok(a) => Ok((PyDecomposition(a.decomposition), a.method.as_str())),
        Err(AutoError::ClawFree(e)) => Err(clawfree_err(e)),
        Err(AutoError::Precondition(p)) => Err(precondition(p)),
        Err(AutoError::NotGood(_)) => Err(value_err("graph has no good decomposition")),
        Err(e @ AutoError::BudgetExceeded(_)) => Err(BudgetExceeded::new_err(e.to_string())),
    }
}

#[pyfunction]
fn is_connected(graph: &PyGraph) -> bool {
    predicates::is_connected(&graph.0)
}

/// "cubic", "subcubic_not_cubic" or "exceeds_three".
#[pyfunction]
fn degree_class(graph: &PyGraph) -> &'static str {
    match predicates::degree_class(&graph.0) {
        predicates::DegreeClass::Cubic => "cubic",
        predicates::DegreeClass::SubcubicNotCubic => "subcubic_not_cubic",
        predicates::DegreeClass::ExceedsThree => "exceeds_three",
    }
}

#[pyfunction]
fn bridges(graph: &PyGraph) -> Vec<Pair> {
    predicates::bridges(&graph.0)
        .into_iter()
        .map(|e| e.endpoints())
        .collect()
}

/// (center, [leaf, leaf, leaf]) or None.
#[pyfunction]
fn find_claw(graph: &PyGraph) -> Option<(usize, [usize; 3])> {
    predicates::find_claw(&graph.0).map(|w| (w.center, w.leaves))
}

#[pyfunction]
fn is_claw_free(graph: &PyGraph) -> bool {
    predicates::is_claw_free(&graph.0)
}

#[pyfunction]
fn triangles(graph: &PyGraph) -> Vec<[usize; 3]> {
    predicates::triangles(&graph.0)
        .iter()
        .map(|t| t.vertices())
        .collect()
}

/// Vertex sequence of an induced cycle longer than k, or None.
#[pyfunction]
#[pyo3(signature = (graph, k, budget = DEFAULT_CYCLE_BUDGET))]
fn find_induced_cycle_longer_than(
    graph: &PyGraph,
    k: usize,
    budget: u64,
) -> PyResult<Option<Vec<usize>>> {
    predicates::find_induced_cycle_longer_than(&graph.0, k, budget)
        .map(|w| w.map(|w| w.cycle))
        .map_err(|e| BudgetExceeded::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (graph, budget = DEFAULT_CYCLE_BUDGET))]
fn is_four_chordal(graph: &PyGraph, budget: u64) -> PyResult<bool> {
    predicates::is_four_chordal(&graph.0, budget)
        .map_err(|e| BudgetExceeded::new_err(e.to_string()))
}

fn gen(r: Result<core::Graph, core::error::GenError>) -> PyResult<PyGraph> {
    r.map(PyGraph).map_err(value_err)
}

#[pyfunction]
fn cycle(n: usize) -> PyResult<PyGraph> {
    gen(generators::cycle(n))
}

#[pyfunction]
fn path(n: usize) -> PyResult<PyGraph> {
    gen(generators::path(n))
}

#[pyfunction]
fn complete(n: usize) -> PyResult<PyGraph> {
    gen(generators::complete(n))
}

#[pyfunction]
fn k4_minus_edge() -> PyGraph {
    PyGraph(generators::k4_minus_edge())
}

#[pyfunction]
#[pyo3(signature = (a = 3, b = 3))]
fn complete_bipartite(a: usize, b: usize) -> PyResult<PyGraph> {
    gen(generators::complete_bipartite(a, b))
}

#[pyfunction]
fn petersen() -> PyGraph {
    PyGraph(generators::petersen())
}

#[pyfunction]
fn prism(n: usize) -> PyResult<PyGraph> {
    gen(generators::prism(n))
}

#[pyfunction]
fn triangle_inflation(graph: &PyGraph) -> PyResult<PyGraph> {
    gen(generators::triangle_inflation(&graph.0))
}

/// filter is "none", "claw_free" or "four_chordal".
#[pyfunction]
#[pyo3(signature = (n, seed, filter = "none", retry_cap = 10_000))]
fn random_connected_subcubic(
    n: usize,
    seed: u64,
    filter: &str,
    retry_cap: usize,
) -> PyResult<PyGraph> {
    let filter = match filter {
        "none" => Filter::None,
        "claw_free" => Filter::ClawFree,
        "four_chordal" => Filter::FourChordal,
        other => return Err(value_err(format!("unknown filter {other:?}"))),
    };
    let spec = RandomSpec {
        retry_cap,
        ..RandomSpec::new(n, seed, filter)
    };
    gen(generators::random_connected_subcubic(&spec))
}

#[pymodule]
fn gooddecomp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDecomposition>()?;
    m.add("GoodDecompError", py.get_type::<GoodDecompError>())?;
    m.add("PreconditionFailed", py.get_type::<PreconditionFailed>())?;
    m.add("BudgetExceeded", py.get_type::<BudgetExceeded>())?;
    m.add("TheoremViolation", py.get_type::<TheoremViolation>())?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_clawfree, m)?)?;
    m.add_function(wrap_pyfunction!(find_good_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(count_good_decompositions, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_auto, m)?)?;
    m.add_function(wrap_pyfunction!(is_connected, m)?)?;
    m.add_function(wrap_pyfunction!(degree_class, m)?)?;
    m.add_function(wrap_pyfunction!(bridges, m)?)?;
    m.add_function(wrap_pyfunction!(find_claw, m)?)?;
    m.add_function(wrap_pyfunction!(is_claw_free, m)?)?;
    m.add_function(wrap_pyfunction!(triangles, m)?)?;
    m.add_function(wrap_pyfunction!(find_induced_cycle_longer_than, m)?)?;
    m.add_function(wrap_pyfunction!(is_four_chordal, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(k4_minus_edge, m)?)?;
    m.add_function(wrap_pyfunction!(complete_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(petersen, m)?)?;
    m.add_function(wrap_pyfunction!(prism, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_inflation, m)?)?;
    m.add_function(wrap_pyfunction!(random_connected_subcubic, m)?)?;
    Ok(())
}
