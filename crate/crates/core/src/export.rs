//! JSON and Graphviz DOT renderings of networks and trees.
//!
//! Output is a pure function of `k`: nodes follow layout order, edges follow
//! `Edge` order, so repeated exports are byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussian::Node;
use crate::network::{Edge, Network, NetworkError};
use crate::trees::{build, rooted, SpanningTree, TreeError, TreeKind};
use crate::verifier::edge_disjointness;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document does not describe G_{k}: {reason}")]
    Mismatch { k: u32, reason: String },
}

/// What to render.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subject {
    Network,
    Tree(TreeKind),
    /// `B_k` and `R'_k` together with the two leftover edges.
    Both,
}

impl Subject {
    pub fn name(self) -> &'static str {
        match self {
            Subject::Network => "network",
            Subject::Tree(kind) => kind.name(),
            Subject::Both => "both",
        }
    }
}

fn pair(e: &Edge) -> [Node; 2] {
    [e.u(), e.v()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub k: u32,
    pub n: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<[Node; 2]>,
}

impl NetworkDoc {
    pub fn new(net: &Network) -> NetworkDoc {
        NetworkDoc {
            k: net.k(),
            n: net.node_count(),
            nodes: net.nodes().to_vec(),
            edges: net.edges().iter().map(pair).collect(),
        }
    }

    /// Rebuilds `G_k` and checks the document against it.
    pub fn to_network(&self) -> Result<Network, ExportError> {
        let net = Network::build(self.k)?;
        let mismatch = |reason: &str| ExportError::Mismatch { k: self.k, reason: reason.to_string() };
        if self.n != net.node_count() || self.nodes.as_slice() != net.nodes() {
            return Err(mismatch("node list differs"));
        }
        let mut edges = BTreeSet::new();
        for [u, v] in &self.edges {
            edges.insert(net.edge(*u, *v)?);
        }
        if edges.len() != self.edges.len() || &edges != net.edges() {
            return Err(mismatch("edge list differs"));
        }
        Ok(net)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDoc {
    pub k: u32,
    pub kind: TreeKind,
    pub root: Node,
    pub edges: Vec<[Node; 2]>,
    /// `[child, parent]` pairs in node order.
    pub parent: Vec<[Node; 2]>,
}

impl TreeDoc {
    pub fn new(tree: &SpanningTree) -> TreeDoc {
        TreeDoc {
            k: tree.k(),
            kind: tree.kind(),
            root: tree.root(),
            edges: tree.edges().iter().map(pair).collect(),
            parent: tree.parents().iter().map(|(&c, &p)| [c, p]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDoc {
    pub k: u32,
    pub black: Vec<[Node; 2]>,
    pub redprime: Vec<[Node; 2]>,
    pub leftover: Vec<[Node; 2]>,
}

struct Layers {
    black: BTreeSet<Edge>,
    red: BTreeSet<Edge>,
    leftover: BTreeSet<Edge>,
    plain: BTreeSet<Edge>,
}

fn layers(net: &Network, subject: Subject) -> Result<Layers, ExportError> {
    let k = net.k();
    let mut out = Layers {
        black: BTreeSet::new(),
        red: BTreeSet::new(),
        leftover: BTreeSet::new(),
        plain: BTreeSet::new(),
    };
    match subject {
        Subject::Network => out.plain = net.edges().clone(),
        Subject::Tree(TreeKind::Black) => out.black = build(TreeKind::Black, k)?.edges().clone(),
        Subject::Tree(kind) => out.red = build(kind, k)?.edges().clone(),
        Subject::Both => {
            out.black = build(TreeKind::Black, k)?.edges().clone();
            out.red = build(TreeKind::RedPrime, k)?.edges().clone();
            out.leftover = edge_disjointness(net, &out.black, &out.red).leftover_edges;
        }
    }
    Ok(out)
}

pub fn to_json(net: &Network, subject: Subject) -> Result<String, ExportError> {
    let k = net.k();
    let text = match subject {
        Subject::Network => serde_json::to_string_pretty(&NetworkDoc::new(net))?,
        Subject::Tree(kind) => serde_json::to_string_pretty(&TreeDoc::new(&rooted(kind, k)?))?,
        Subject::Both => {
            let l = layers(net, subject)?;
            serde_json::to_string_pretty(&PairDoc {
                k,
                black: l.black.iter().map(pair).collect(),
                redprime: l.red.iter().map(pair).collect(),
                leftover: l.leftover.iter().map(pair).collect(),
            })?
        }
    };
    Ok(text + "\n")
}

fn id(v: Node) -> String {
    format!("\"{},{}\"", v.re, v.im)
}

/// Undirected DOT with every node pinned at its lattice position.
pub fn to_dot(net: &Network, subject: Subject) -> Result<String, ExportError> {
    let l = layers(net, subject)?;
    let mut s = String::new();
    let _ = writeln!(s, "graph G{}_{} {{", net.k(), subject.name());
    s.push_str("  layout=neato;\n  node [shape=circle, fontsize=10];\n");
    for &v in net.nodes() {
        let _ = writeln!(s, "  {} [label=\"{}\", pos=\"{},{}!\"];", id(v), v, v.re, v.im);
    }
    let groups: [(&BTreeSet<Edge>, &str); 4] = [
        (&l.plain, ""),
        (&l.black, " [color=black]"),
        (&l.red, " [color=red]"),
        (&l.leftover, " [color=gray, style=dashed]"),
    ];
    for (edges, attrs) in groups {
        for e in edges {
            let _ = writeln!(s, "  {} -- {}{};", id(e.u()), id(e.v()), attrs);
        }
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn network_json_roundtrip() {
        for k in 1..=5u32 {
            let g = Network::build(k).unwrap();
            let text = to_json(&g, Subject::Network).unwrap();
            let doc: NetworkDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(doc.n, g.node_count());
            assert_eq!(doc.edges.len(), g.edge_count());
            let back = doc.to_network().unwrap();
            assert_eq!(back.edges(), g.edges());
        }
    }

    #[test]
    fn network_json_shape() {
        let g = Network::build(1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&g, Subject::Network).unwrap()).unwrap();
        assert_eq!(v["k"], 1);
        assert_eq!(v["n"], 5);
        assert_eq!(v["nodes"][0], serde_json::json!([0, 1]));
        assert_eq!(v["edges"].as_array().unwrap().len(), 10);
    }

    #[test]
    fn tampered_document_is_rejected() {
        let g = Network::build(2).unwrap();
        let mut doc = NetworkDoc::new(&g);
        doc.edges.pop();
        assert!(matches!(doc.to_network(), Err(ExportError::Mismatch { .. })));
        let mut doc = NetworkDoc::new(&g);
        doc.edges[0] = [Node::new(0, 0), Node::new(1, 1)];
        assert!(doc.to_network().is_err());
    }

    #[test]
    fn dot_both_k4() {
        let g = Network::build(4).unwrap();
        let dot = to_dot(&g, Subject::Both).unwrap();
        let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -- ")).collect();
        assert_eq!(edges.iter().filter(|l| !l.contains("dashed")).count(), 80);
        assert_eq!(edges.iter().filter(|l| l.contains("dashed")).count(), 2);
        assert!(dot.contains("\"4,0\" [label=\"4\", pos=\"4,0!\"]"));
        assert_eq!(dot, to_dot(&g, Subject::Both).unwrap());
    }

    #[test]
    fn tree_json() {
        let g = Network::build(2).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&to_json(&g, Subject::Tree(TreeKind::RedPrime)).unwrap()).unwrap();
        assert_eq!(v["kind"], "redprime");
        assert_eq!(v["edges"].as_array().unwrap().len(), 12);
        assert_eq!(v["parent"].as_array().unwrap().len(), 12);
    }
}
