//! Python bindings. Nodes cross the boundary as `(re, im)` tuples.

use std::collections::BTreeMap;

use gaussnet::export::{to_dot, to_json, Subject};
use gaussnet::protocols::{secure_split_send, FaultSpec, Packet, TreePair};
use gaussnet::suite::run_suite;
use gaussnet::trees::{rebase, rooted};
use gaussnet::verifier::{depth, tree_path};
use gaussnet::{Node, RouteTables, Router, SpanningTree, TreeKind};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Pair = (i64, i64);

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn node(p: Pair) -> Node {
    Node::new(p.0, p.1)
}

fn pair(v: Node) -> Pair {
    (v.re, v.im)
}

fn kind(name: &str) -> PyResult<TreeKind> {
    name.parse().map_err(err)
}

fn subject(what: &str) -> PyResult<Subject> {
    Ok(match what {
        "network" => Subject::Network,
        "both" => Subject::Both,
        other => Subject::Tree(kind(other)?),
    })
}

/// The dense Gaussian network `G_k`.
#[pyclass(frozen, module = "pygaussnet")]
struct Network {
    inner: gaussnet::Network,
}

#[pymethods]
impl Network {
    #[new]
    fn new(k: u32) -> PyResult<Self> {
        Ok(Network {
            inner: gaussnet::Network::build(k).map_err(err)?,
        })
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __repr__(&self) -> String {
        format!("Network(k={})", self.inner.k())
    }

    /// Nodes in layout order.
    fn nodes(&self) -> Vec<Pair> {
        self.inner.nodes().iter().map(|&v| pair(v)).collect()
    }

    fn edges(&self) -> Vec<(Pair, Pair)> {
        self.inner.edges().iter().map(|e| (pair(e.u()), pair(e.v()))).collect()
    }

    /// Neighbours along +1, -1, +i, -i.
    fn neighbors(&self, v: Pair) -> PyResult<Vec<Pair>> {
        Ok(self.inner.neighbors(node(v)).map_err(err)?.iter().map(|&n| pair(n)).collect())
    }

    fn has_edge(&self, u: Pair, v: Pair) -> bool {
        self.inner.has_edge(node(u), node(v))
    }

    fn distance(&self, u: Pair, v: Pair) -> PyResult<u32> {
        self.inner.bfs_distance(node(u), node(v)).map_err(err)
    }

    fn diameter(&self) -> u32 {
        self.inner.diameter()
    }

    fn distance_histogram(&self) -> BTreeMap<u32, usize> {
        self.inner.distance_histogram()
    }

    #[pyo3(signature = (what = "network"))]
    fn to_json(&self, what: &str) -> PyResult<String> {
        to_json(&self.inner, subject(what)?).map_err(err)
    }

    #[pyo3(signature = (what = "network"))]
    fn to_dot(&self, what: &str) -> PyResult<String> {
        to_dot(&self.inner, subject(what)?).map_err(err)
    }
}

/// A rooted spanning tree: `black`, `red` or `redprime`.
#[pyclass(frozen, module = "pygaussnet")]
struct Tree {
    inner: SpanningTree,
}

#[pymethods]
impl Tree {
    #[new]
    #[pyo3(signature = (kind_name, k, root = (0, 0)))]
    fn new(kind_name: &str, k: u32, root: Pair) -> PyResult<Self> {
        let base = rooted(kind(kind_name)?, k).map_err(err)?;
        if !base.contains(node(root)) {
            return Err(err(format!("{} is not a node of G_{k}", node(root))));
        }
        Ok(Tree {
            inner: rebase(&base, node(root)),
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn root(&self) -> Pair {
        pair(self.inner.root())
    }

    fn edges(&self) -> Vec<(Pair, Pair)> {
        self.inner.edges().iter().map(|e| (pair(e.u()), pair(e.v()))).collect()
    }

    fn parent(&self, v: Pair) -> Option<Pair> {
        self.inner.parent(node(v)).map(pair)
    }

    /// Root-to-`v` path.
    fn path(&self, v: Pair) -> PyResult<Vec<Pair>> {
        tree_path(&self.inner, node(v))
            .map(|p| p.into_iter().map(pair).collect())
            .ok_or_else(|| err(format!("{} is not in the tree", node(v))))
    }

    fn depth(&self) -> usize {
        depth(&self.inner)
    }
}

fn router(k: u32, tree: &str, printed_tables: bool) -> PyResult<Router> {
    let tables = if printed_tables { RouteTables::Printed } else { RouteTables::Amended };
    Ok(Router::new(k, kind(tree)?).map_err(err)?.with_tables(tables))
}

/// Node sequence of the routed path from `src` to `dst`.
#[pyfunction]
#[pyo3(signature = (k, src, dst, tree = "black", printed_tables = false))]
fn route(k: u32, src: Pair, dst: Pair, tree: &str, printed_tables: bool) -> PyResult<Vec<Pair>> {
    let path = router(k, tree, printed_tables)?.simulate(node(src), node(dst)).map_err(err)?;
    Ok(path.into_iter().map(pair).collect())
}

/// `(node, header bytes)` at every hop.
#[pyfunction]
#[pyo3(signature = (k, src, dst, tree = "black"))]
fn trace(k: u32, src: Pair, dst: Pair, tree: &str) -> PyResult<Vec<(Pair, Vec<u8>)>> {
    let hops = router(k, tree, false)?.trace(node(src), node(dst)).map_err(err)?;
    hops.into_iter()
        .map(|(v, h)| Ok((pair(v), h.to_wire().map_err(err)?.to_vec())))
        .collect()
}

fn packet_names(p: &std::collections::BTreeSet<Packet>) -> Vec<&'static str> {
    p.iter()
        .map(|p| match p {
            Packet::Black => "black",
            Packet::Red => "red",
        })
        .collect()
}

#[pyfunction]
#[pyo3(signature = (k, root = (0, 0), fault_node = None, fault_edge = None))]
fn broadcast<'py>(
    py: Python<'py>,
    k: u32,
    root: Pair,
    fault_node: Option<Pair>,
    fault_edge: Option<(Pair, Pair)>,
) -> PyResult<Bound<'py, PyDict>> {
    let net = gaussnet::Network::build(k).map_err(err)?;
    let fault = match (fault_node, fault_edge) {
        (Some(_), Some(_)) => return Err(err("give at most one fault")),
        (Some(v), None) => FaultSpec::Node(node(v)),
        (None, Some((u, v))) => FaultSpec::Edge(net.edge(node(u), node(v)).map_err(err)?),
        (None, None) => FaultSpec::None,
    };
    if let FaultSpec::Node(v) = fault {
        net.check_node(v).map_err(err)?;
    }
    let rep = TreePair::new(k)
        .map_err(err)?
        .broadcast(&net, node(root), &[fault])
        .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("delivered", rep.delivered.iter().map(|&v| pair(v)).collect::<Vec<_>>())?;
    out.set_item("blocked", rep.blocked.iter().map(|&v| pair(v)).collect::<Vec<_>>())?;
    let exposure: BTreeMap<Pair, Vec<&str>> = rep.exposure.iter().map(|(&v, p)| (pair(v), packet_names(p))).collect();
    out.set_item("exposure", exposure)?;
    Ok(out)
}

#[pyfunction]
fn split<'py>(py: Python<'py>, k: u32, src: Pair, dst: Pair) -> PyResult<Bound<'py, PyDict>> {
    let net = gaussnet::Network::build(k).map_err(err)?;
    let rep = secure_split_send(&net, node(src), node(dst)).map_err(err)?;
    let out = PyDict::new(py);
    for (p, path) in &rep.routes {
        let name = if *p == Packet::Black { "black" } else { "red" };
        out.set_item(name, path.iter().map(|&v| pair(v)).collect::<Vec<_>>())?;
    }
    let exposure: BTreeMap<Pair, Vec<&str>> = rep.exposure.iter().map(|(&v, p)| (pair(v), packet_names(p))).collect();
    out.set_item("exposure", exposure)?;
    out.set_item("delivered", !rep.delivered.is_empty())?;
    Ok(out)
}

/// Runs the property suite for one `k`; returns `{name: passed}`.
#[pyfunction]
#[pyo3(signature = (k, mutate = false))]
fn verify(k: u32, mutate: bool) -> PyResult<BTreeMap<&'static str, bool>> {
    let checks = run_suite(k, mutate).map_err(err)?;
    Ok(checks.into_iter().map(|c| (c.name, c.pass)).collect())
}

#[pymodule]
fn pygaussnet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Network>()?;
    m.add_class::<Tree>()?;
    m.add_function(wrap_pyfunction!(route, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(broadcast, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
