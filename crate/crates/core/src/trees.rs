//! Construction of the black tree `B_k`, the red tree `R_k`, and its variant
//! `R'_k`, as unions of rotated and reflected copies of four small component
//! graphs.
//!
//! The components, for `G_k` drawn on the integer lattice:
//!
//! * `A`: horizontal edges `a+bi — (a+1)+bi` with `0 <= a <= k-2`,
//!   `1 <= b <= k-1`, `a+b <= k-1`, over the vertex triangle
//!   `0 <= a <= k-1`, `1 <= b <= k`, `a+b <= k`.
//! * `B`: the baseline `0 — 1 — … — k` on the real axis.
//! * `W^B`: wrap edges `a+bi — -(b-1)+(-1-a)i` for `a+b = k`, `a >= 0`, `b >= 1`.
//! * `W^R`: wrap edges `a+bi — b+ai` for `a-b = k`, `a >= 1`, `b <= 0`.
//!
//! Then
//!
//! ```text
//! B_k = A ∪ ρA ∪ ρ²A ∪ ρ³A ∪ B ∪ ρB ∪ W^B ∪ ρW^B
//! R_k = σA ∪ ρσA ∪ ρ²σA ∪ ρ³σA ∪ σB ∪ σρB ∪ W^R ∪ ρW^R
//! ```
//!
//! and `R'_k` moves the leaf `k` of `R_k` from `ki` to `-ki`.
//!
//! Vertex sets of the wrap components are the endpoints of their edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussian::{DenseModulus, Node};
use crate::network::{Edge, NetworkError};
use crate::symmetry::{translate, Symmetry, SymmetryWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("component {component} repeats edge {edge} already contributed by {previous}")]
    DuplicateEdge {
        edge: Edge,
        component: String,
        previous: String,
    },
    #[error("expected edge {0} is missing")]
    MissingEdge(Edge),
    #[error("root {0} is not a vertex of the subgraph")]
    RootNotInGraph(Node),
    #[error("subgraph is not a spanning tree: {0}")]
    NotATree(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeKind {
    Black,
    Red,
    RedPrime,
}

impl TreeKind {
    pub fn name(self) -> &'static str {
        match self {
            TreeKind::Black => "black",
            TreeKind::Red => "red",
            TreeKind::RedPrime => "redprime",
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "black" | "b" => Ok(TreeKind::Black),
            "red" | "r" => Ok(TreeKind::Red),
            "redprime" | "red-prime" | "red'" | "r'" => Ok(TreeKind::RedPrime),
            _ => Err(format!("unknown tree kind {s:?} (expected black, red or redprime)")),
        }
    }
}

/// A subgraph of `G_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    modulus: DenseModulus,
    vertices: BTreeSet<Node>,
    edges: BTreeSet<Edge>,
}

impl Subgraph {
    pub fn empty(modulus: DenseModulus) -> Self {
        Subgraph {
            modulus,
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
        }
    }

    /// Subgraph whose vertex set is exactly the endpoints of `edges`.
    pub fn from_edges(modulus: DenseModulus, edges: impl IntoIterator<Item = Edge>) -> Self {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let vertices = edges.iter().flat_map(|e| [e.u(), e.v()]).collect();
        Subgraph {
            modulus,
            vertices,
            edges,
        }
    }

    /// Fails if an edge endpoint is outside `vertices`.
    pub fn new(
        modulus: DenseModulus,
        vertices: impl IntoIterator<Item = Node>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, TreeError> {
        let vertices: BTreeSet<Node> = vertices.into_iter().collect();
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(v) = vertices.iter().find(|v| !modulus.contains(**v)) {
            return Err(NetworkError::NotANode { node: *v, k: modulus.k() }.into());
        }
        if let Some(e) = edges
            .iter()
            .find(|e| !vertices.contains(&e.u()) || !vertices.contains(&e.v()))
        {
            return Err(TreeError::NotATree(format!("edge {e} has an endpoint outside the vertex set")));
        }
        Ok(Subgraph {
            modulus,
            vertices,
            edges,
        })
    }

    pub fn modulus(&self) -> &DenseModulus {
        &self.modulus
    }

    pub fn k(&self) -> u32 {
        self.modulus.k()
    }

    pub fn vertices(&self) -> &BTreeSet<Node> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn degree(&self, v: Node) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn image(&self, word: &SymmetryWord) -> Result<Subgraph, TreeError> {
        let m = self.modulus;
        let edges = self
            .edges
            .iter()
            .map(|e| word.apply_edge(e, &m))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Subgraph {
            modulus: m,
            vertices: self.vertices.iter().map(|&v| word.apply(v, &m)).collect(),
            edges,
        })
    }

    /// Union that deduplicates both vertices and edges.
    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            modulus: self.modulus,
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    /// Returns a copy with `remove` replaced by `add`.
    pub fn swap_edge(&self, remove: Edge, add: Edge) -> Result<Subgraph, TreeError> {
        if !self.edges.contains(&remove) {
            return Err(TreeError::MissingEdge(remove));
        }
        let mut out = self.clone();
        out.edges.remove(&remove);
        out.edges.insert(add);
        out.vertices.insert(add.u());
        out.vertices.insert(add.v());
        Ok(out)
    }
}

/// A named piece of `B_k` or `R_k`, e.g. `rho^2(A)`.
#[derive(Debug, Clone)]
pub struct Component {
    pub name: String,
    pub word: SymmetryWord,
    pub subgraph: Subgraph,
}

fn modulus(k: u32) -> Result<DenseModulus, TreeError> {
    DenseModulus::new(k).map_err(|e| TreeError::Network(e.into()))
}

fn edge(m: &DenseModulus, a: (i64, i64), b: (i64, i64)) -> Result<Edge, TreeError> {
    let u = m.reduce_parts(a.0, a.1);
    let v = m.reduce_parts(b.0, b.1);
    Ok(Edge::new(u, v, m)?)
}

/// The array graph `A`.
pub fn component_a(k: u32) -> Result<Subgraph, TreeError> {
    let m = modulus(k)?;
    let k = k as i64;
    let mut vertices = Vec::new();
    for a in 0..=k - 1 {
        for b in 1..=k - a {
            vertices.push(Node::new(a, b));
        }
    }
    let mut edges = Vec::new();
    for a in 0..=k - 2 {
        for b in 1..=(k - 1 - a) {
            edges.push(edge(&m, (a, b), (a + 1, b))?);
        }
    }
    Subgraph::new(m, vertices, edges)
}

/// The baseline graph `B`.
pub fn component_b(k: u32) -> Result<Subgraph, TreeError> {
    let m = modulus(k)?;
    let k = k as i64;
    let vertices = (0..=k).map(|a| Node::new(a, 0));
    let edges = (0..k).map(|a| edge(&m, (a, 0), (a + 1, 0))).collect::<Result<Vec<_>, _>>()?;
    Subgraph::new(m, vertices, edges)
}

/// The black wrap-around graph `W^B`.
pub fn component_wb(k: u32) -> Result<Subgraph, TreeError> {
    let m = modulus(k)?;
    let k = k as i64;
    let edges = (0..k)
        .map(|a| {
            let b = k - a;
            edge(&m, (a, b), (-(b - 1), -1 - a))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subgraph::from_edges(m, edges))
}

/// The red wrap-around graph `W^R`.
pub fn component_wr(k: u32) -> Result<Subgraph, TreeError> {
    let m = modulus(k)?;
    let k = k as i64;
    let edges = (1..=k)
        .map(|a| {
            let b = a - k;
            edge(&m, (a, b), (b, a))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subgraph::from_edges(m, edges))
}

fn word(rho: usize, sigma: usize) -> SymmetryWord {
    SymmetryWord::rho_pow_sigma(rho, sigma)
}

fn named(name: &str, w: &SymmetryWord, base: &Subgraph) -> Result<Component, TreeError> {
    let name = if w.atoms().is_empty() {
        name.to_string()
    } else {
        format!("{w}({name})")
    };
    Ok(Component {
        name,
        word: w.clone(),
        subgraph: base.image(w)?,
    })
}

/// The eight components of `B_k`, in definition order.
pub fn black_components(k: u32) -> Result<Vec<Component>, TreeError> {
    let (a, b, wb) = (component_a(k)?, component_b(k)?, component_wb(k)?);
    vec![
        named("A", &word(0, 0), &a),
        named("A", &word(1, 0), &a),
        named("A", &word(2, 0), &a),
        named("A", &word(3, 0), &a),
        named("B", &word(0, 0), &b),
        named("B", &word(1, 0), &b),
        named("W^B", &word(0, 0), &wb),
        named("W^B", &word(1, 0), &wb),
    ]
    .into_iter()
    .collect()
}

/// The eight components of `R_k`, in definition order.
pub fn red_components(k: u32) -> Result<Vec<Component>, TreeError> {
    let (a, b, wr) = (component_a(k)?, component_b(k)?, component_wr(k)?);
    let sigma_rho = SymmetryWord::new([Symmetry::Sigma, Symmetry::Rho]);
    vec![
        named("A", &word(0, 1), &a),
        named("A", &word(1, 1), &a),
        named("A", &word(2, 1), &a),
        named("A", &word(3, 1), &a),
        named("B", &word(0, 1), &b),
        named("B", &sigma_rho, &b),
        named("W^R", &word(0, 0), &wr),
        named("W^R", &word(1, 0), &wr),
    ]
    .into_iter()
    .collect()
}

/// Unions components, aborting if two of them share an edge.
fn assemble(k: u32, parts: &[Component]) -> Result<Subgraph, TreeError> {
    let mut owner: BTreeMap<Edge, &str> = BTreeMap::new();
    let mut out = Subgraph::empty(modulus(k)?);
    for part in parts {
        for e in part.subgraph.edges() {
            if let Some(prev) = owner.insert(*e, &part.name) {
                return Err(TreeError::DuplicateEdge {
                    edge: *e,
                    component: part.name.clone(),
                    previous: prev.to_string(),
                });
            }
        }
        out = out.union(&part.subgraph);
    }
    Ok(out)
}

pub fn build_black(k: u32) -> Result<Subgraph, TreeError> {
    assemble(k, &black_components(k)?)
}

pub fn build_red(k: u32) -> Result<Subgraph, TreeError> {
    assemble(k, &red_components(k)?)
}

/// `R_k` with the edge `(k, ki)` replaced by `(k, -ki)`.
pub fn build_red_prime(k: u32) -> Result<Subgraph, TreeError> {
    let red = build_red(k)?;
    let m = *red.modulus();
    let kk = k as i64;
    let remove = Edge::new(Node::new(kk, 0), Node::new(0, kk), &m)?;
    let add = Edge::new(Node::new(kk, 0), Node::new(0, -kk), &m)?;
    red.swap_edge(remove, add)
}

pub fn build(kind: TreeKind, k: u32) -> Result<Subgraph, TreeError> {
    match kind {
        TreeKind::Black => build_black(k),
        TreeKind::Red => build_red(k),
        TreeKind::RedPrime => build_red_prime(k),
    }
}

/// `H^B = A ∪ W^B ∪ ρ²A` and `H^R = ρσA ∪ W^R ∪ ρ³σA`.
pub fn h_subgraphs(k: u32) -> Result<(Subgraph, Subgraph), TreeError> {
    let a = component_a(k)?;
    let hb = a.union(&component_wb(k)?).union(&a.image(&word(2, 0))?);
    let hr = a
        .image(&word(1, 1))?
        .union(&component_wr(k)?)
        .union(&a.image(&word(3, 1))?);
    Ok((hb, hr))
}

/// A rooted spanning tree of `G_k`, stored as a parent map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    kind: TreeKind,
    root: Node,
    parent: BTreeMap<Node, Node>,
    modulus: DenseModulus,
}

impl SpanningTree {
    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn root(&self) -> Node {
        self.root
    }

    pub fn k(&self) -> u32 {
        self.modulus.k()
    }

    pub fn modulus(&self) -> &DenseModulus {
        &self.modulus
    }

    pub fn parent(&self, v: Node) -> Option<Node> {
        self.parent.get(&v).copied()
    }

    pub fn parents(&self) -> &BTreeMap<Node, Node> {
        &self.parent
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        std::iter::once(self.root).chain(self.parent.keys().copied())
    }

    pub fn contains(&self, v: Node) -> bool {
        v == self.root || self.parent.contains_key(&v)
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.parent
            .iter()
            .map(|(&c, &p)| Edge::new(c, p, &self.modulus).expect("tree edges are validated on construction"))
            .collect()
    }

    pub fn to_subgraph(&self) -> Subgraph {
        let mut sub = Subgraph::from_edges(self.modulus, self.edges());
        sub.vertices.insert(self.root);
        sub
    }

    /// Children lists, each sorted.
    pub fn children(&self) -> BTreeMap<Node, Vec<Node>> {
        let mut out: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
        for (&c, &p) in &self.parent {
            out.entry(p).or_default().push(c);
        }
        out
    }
}

/// Orients a spanning tree of `G_k` toward `root`.
pub fn to_rooted(sub: &Subgraph, root: Node, kind: TreeKind) -> Result<SpanningTree, TreeError> {
    let m = *sub.modulus();
    if !sub.vertices().contains(&root) {
        return Err(TreeError::RootNotInGraph(root));
    }
    let expected = m.n() as usize;
    if sub.vertices().len() != expected {
        return Err(TreeError::NotATree(format!(
            "covers {} of {} nodes",
            sub.vertices().len(),
            expected
        )));
    }
    if sub.edges().len() != expected - 1 {
        return Err(TreeError::NotATree(format!(
            "has {} edges, a spanning tree needs {}",
            sub.edges().len(),
            expected - 1
        )));
    }
    let mut adj: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for e in sub.edges() {
        adj.entry(e.u()).or_default().push(e.v());
        adj.entry(e.v()).or_default().push(e.u());
    }
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(y) {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    if seen.len() != expected {
        return Err(TreeError::NotATree(format!(
            "disconnected: {} of {} nodes reachable from {root}",
            seen.len(),
            expected
        )));
    }
    Ok(SpanningTree {
        kind,
        root,
        parent,
        modulus: m,
    })
}

/// Builds the tree of the given kind and roots it at 0.
pub fn rooted(kind: TreeKind, k: u32) -> Result<SpanningTree, TreeError> {
    to_rooted(&build(kind, k)?, Node::ORIGIN, kind)
}

/// Translates `tree` so that it is rooted at `new_root`. Translation is an
/// automorphism, so the result is a spanning tree with the same shape.
pub fn rebase(tree: &SpanningTree, new_root: Node) -> SpanningTree {
    let m = tree.modulus;
    let shift = m.sub(new_root, tree.root);
    SpanningTree {
        kind: tree.kind,
        root: new_root,
        parent: tree
            .parent
            .iter()
            .map(|(&c, &p)| (translate(c, shift, &m), translate(p, shift, &m)))
            .collect(),
        modulus: m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Axis, Network};

    fn n(re: i64, im: i64) -> Node {
        Node::new(re, im)
    }

    fn edge_set(k: u32, pairs: &[((i64, i64), (i64, i64))]) -> BTreeSet<Edge> {
        let m = DenseModulus::new(k).unwrap();
        pairs.iter().map(|&(a, b)| edge(&m, a, b).unwrap()).collect()
    }

    #[test]
    fn component_sizes() {
        for k in 1..=8u32 {
            let ku = k as usize;
            assert_eq!(component_a(k).unwrap().edges().len(), ku * (ku - 1) / 2);
            assert_eq!(component_b(k).unwrap().edges().len(), ku);
            assert_eq!(component_wb(k).unwrap().edges().len(), ku);
            assert_eq!(component_wr(k).unwrap().edges().len(), ku);
        }
        assert_eq!(component_a(4).unwrap().edges().len(), 6);
    }

    #[test]
    fn component_examples_k2() {
        assert_eq!(
            component_wb(2).unwrap().edges(),
            &edge_set(2, &[((0, 2), (-1, -1)), ((1, 1), (0, -2))])
        );
        assert_eq!(
            component_wr(2).unwrap().edges(),
            &edge_set(2, &[((2, 0), (0, 2)), ((1, -1), (-1, 1))])
        );
        assert_eq!(component_a(2).unwrap().edges(), &edge_set(2, &[((0, 1), (1, 1))]));
    }

    #[test]
    fn component_axes() {
        for k in 1..=8u32 {
            for (sub, wrap) in [
                (component_a(k).unwrap(), false),
                (component_b(k).unwrap(), false),
                (component_wb(k).unwrap(), true),
                (component_wr(k).unwrap(), true),
            ] {
                for e in sub.edges() {
                    assert_eq!(e.axis(), Axis::Horizontal);
                    assert_eq!(e.is_wrap(), wrap, "k={k} {e}");
                }
            }
            for comp in black_components(k).unwrap().into_iter().chain(red_components(k).unwrap()) {
                let expected = if comp.word.flips_axis() { Axis::Vertical } else { Axis::Horizontal };
                for e in comp.subgraph.edges() {
                    assert_eq!(e.axis(), expected, "k={k} component {}", comp.name);
                }
            }
        }
    }

    #[test]
    fn black_k2() {
        let b2 = build_black(2).unwrap();
        let expected = edge_set(
            2,
            &[
                ((0, 1), (1, 1)),
                ((-1, 0), (-1, 1)),
                ((0, -1), (-1, -1)),
                ((1, 0), (1, -1)),
                ((0, 0), (1, 0)),
                ((1, 0), (2, 0)),
                ((0, 0), (0, 1)),
                ((0, 1), (0, 2)),
                ((0, 2), (-1, -1)),
                ((1, 1), (0, -2)),
                ((-2, 0), (1, -1)),
                ((-1, 1), (2, 0)),
            ],
        );
        assert_eq!(b2.edges(), &expected);
    }

    #[test]
    fn red_k2_and_prime() {
        let r2 = build_red(2).unwrap();
        assert_eq!(r2.edges().len(), 12);
        let m = *r2.modulus();
        let wr = Edge::new(n(2, 0), n(0, 2), &m).unwrap();
        let rho_wr = Edge::new(n(0, 2), n(-2, 0), &m).unwrap();
        assert!(r2.contains_edge(&wr) && r2.contains_edge(&rho_wr));
        let rp = build_red_prime(2).unwrap();
        let mut expected = r2.edges().clone();
        expected.remove(&wr);
        expected.insert(Edge::new(n(2, 0), n(0, -2), &m).unwrap());
        assert_eq!(rp.edges(), &expected);
    }

    #[test]
    fn edge_counts_and_cover() {
        let cover = |comps: Vec<Component>| -> BTreeSet<Node> {
            comps.iter().flat_map(|c| c.subgraph.vertices().iter().copied()).collect()
        };
        for k in 1..=8u32 {
            let g = Network::build(k).unwrap();
            let all: BTreeSet<Node> = g.nodes().iter().copied().collect();
            let size = 2 * (k as usize).pow(2) + 2 * k as usize;
            for kind in [TreeKind::Black, TreeKind::Red, TreeKind::RedPrime] {
                let t = build(kind, k).unwrap();
                assert_eq!(t.edges().len(), size);
                assert_eq!(t.vertices(), &all);
                assert!(t.edges().iter().all(|e| g.edges().contains(e)));
            }
            assert_eq!(cover(black_components(k).unwrap()), all);
            assert_eq!(cover(red_components(k).unwrap()), all);
        }
    }

    #[test]
    fn leaf_degrees() {
        for k in 1..=8u32 {
            let kk = k as i64;
            assert_eq!(build_black(k).unwrap().degree(n(0, -kk)), 1, "k={k}");
        }
        for k in 2..=8u32 {
            let kk = k as i64;
            let r = build_red(k).unwrap();
            assert_eq!(r.degree(n(kk, 0)), 1);
            let m = *r.modulus();
            assert!(r.contains_edge(&Edge::new(n(kk, 0), n(0, kk), &m).unwrap()));
        }
    }

    #[test]
    fn duplicate_edges_abort_assembly() {
        let a = component_a(3).unwrap();
        let parts = vec![
            Component { name: "A".into(), word: SymmetryWord::identity(), subgraph: a.clone() },
            Component { name: "again".into(), word: SymmetryWord::identity(), subgraph: a },
        ];
        assert!(matches!(assemble(3, &parts), Err(TreeError::DuplicateEdge { .. })));
    }

    #[test]
    fn h_subgraphs_k2() {
        let (hb, _) = h_subgraphs(2).unwrap();
        let expected = edge_set(
            2,
            &[((0, 1), (1, 1)), ((0, -1), (-1, -1)), ((0, 2), (-1, -1)), ((1, 1), (0, -2))],
        );
        assert_eq!(hb.edges(), &expected);
    }

    #[test]
    fn rooting() {
        let b2 = rooted(TreeKind::Black, 2).unwrap();
        assert_eq!(b2.parent(n(1, 1)), Some(n(0, 1)));
        assert_eq!(b2.parent(n(0, 1)), Some(Node::ORIGIN));
        assert_eq!(b2.parent(Node::ORIGIN), None);
        assert_eq!(b2.parents().len(), 12);
        let rp2 = rooted(TreeKind::RedPrime, 2).unwrap();
        assert_eq!(rp2.parent(n(2, 0)), Some(n(0, -2)));
    }

    #[test]
    fn rooting_rejects_non_trees() {
        let g = Network::build(2).unwrap();
        let full = Subgraph::from_edges(*g.modulus(), g.edges().iter().copied());
        assert!(matches!(to_rooted(&full, Node::ORIGIN, TreeKind::Black), Err(TreeError::NotATree(_))));
        let b = build_black(2).unwrap();
        // cut off the leaf -2i and close a cycle elsewhere: edge count unchanged
        let leaf = g.edge(n(1, 1), n(0, -2)).unwrap();
        let chord = g.edge(n(0, 0), n(-1, 0)).unwrap();
        let broken = b.swap_edge(leaf, chord).unwrap();
        assert_eq!(broken.edges().len(), 12);
        assert!(matches!(to_rooted(&broken, Node::ORIGIN, TreeKind::Black), Err(TreeError::NotATree(_))));
        assert!(matches!(
            to_rooted(&b, n(5, 5), TreeKind::Black),
            Err(TreeError::RootNotInGraph(_))
        ));
    }

    #[test]
    fn rebasing() {
        let b2 = rooted(TreeKind::Black, 2).unwrap();
        assert_eq!(rebase(&b2, Node::ORIGIN), b2);
        let m = *b2.modulus();
        let moved = rebase(&b2, n(1, 0));
        assert_eq!(moved.root(), n(1, 0));
        assert_eq!(
            moved.parent(translate(n(1, 1), n(1, 0), &m)),
            Some(translate(n(0, 1), n(1, 0), &m))
        );
        let g = Network::build(2).unwrap();
        for &v in g.nodes() {
            let t = rebase(&b2, v);
            assert_eq!(t.parents().len(), 12);
            assert!(t.edges().iter().all(|e| g.edges().contains(e)));
            // round trip
            assert_eq!(rebase(&t, Node::ORIGIN), b2);
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("RedPrime".parse::<TreeKind>().unwrap(), TreeKind::RedPrime);
        assert_eq!("black".parse::<TreeKind>().unwrap(), TreeKind::Black);
        assert!("green".parse::<TreeKind>().is_err());
    }
}
