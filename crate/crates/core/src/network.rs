//! The dense Gaussian network `G_k`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussian::{ArithmeticError, DenseModulus, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error("{node} is not a node of G_{k} (|re|+|im| must be <= {k})")]
    NotANode { node: Node, k: u32 },
    #[error("{u} and {v} are not adjacent in G_{k}")]
    NotAdjacent { u: Node, v: Node, k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn flipped(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

/// Unit steps in neighbour order: `+1, -1, +i, -i`.
pub const UNIT_STEPS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// An undirected edge of `G_k`. Endpoints are stored sorted (`u < v` in
/// `(im, re)` order), so equality ignores the order they were given in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: Node,
    v: Node,
    axis: Axis,
    wrap: bool,
}

impl Edge {
    /// Classifies `(u, v)` as an edge of `G_k`, or fails if the nodes are not
    /// canonical or not adjacent.
    pub fn new(u: Node, v: Node, m: &DenseModulus) -> Result<Edge, NetworkError> {
        for node in [u, v] {
            if !m.contains(node) {
                return Err(NetworkError::NotANode { node, k: m.k() });
            }
        }
        let diff = m.sub(u, v);
        let axis = match (diff.re, diff.im) {
            (1, 0) | (-1, 0) if u != v => Axis::Horizontal,
            (0, 1) | (0, -1) if u != v => Axis::Vertical,
            _ => return Err(NetworkError::NotAdjacent { u, v, k: m.k() }),
        };
        let raw = (u.re - v.re).abs() + (u.im - v.im).abs();
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        Ok(Edge {
            u,
            v,
            axis,
            wrap: raw != 1,
        })
    }

    pub fn u(&self) -> Node {
        self.u
    }

    pub fn v(&self) -> Node {
        self.v
    }

    pub fn endpoints(&self) -> (Node, Node) {
        (self.u, self.v)
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn is_wrap(&self) -> bool {
        self.wrap
    }

    pub fn touches(&self, n: Node) -> bool {
        self.u == n || self.v == n
    }

    pub fn other(&self, n: Node) -> Option<Node> {
        if n == self.u {
            Some(self.v)
        } else if n == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// `G_k`: nodes are the canonical residues mod `α_k`, and two nodes are
/// adjacent iff their difference reduces to a unit.
#[derive(Debug, Clone)]
pub struct Network {
    modulus: DenseModulus,
    nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    adjacency: Vec<[usize; 4]>,
    edges: BTreeSet<Edge>,
}

impl Network {
    pub fn build(k: u32) -> Result<Network, NetworkError> {
        let modulus = DenseModulus::new(k)?;
        let nodes = modulus.diamond();
        let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adjacency = Vec::with_capacity(nodes.len());
        let mut edges = BTreeSet::new();
        for &v in &nodes {
            let mut row = [0usize; 4];
            for (slot, (dr, di)) in row.iter_mut().zip(UNIT_STEPS) {
                let w = modulus.reduce_parts(v.re + dr, v.im + di);
                *slot = index[&w];
                edges.insert(Edge::new(v, w, &modulus)?);
            }
            adjacency.push(row);
        }
        Ok(Network {
            modulus,
            nodes,
            index,
            adjacency,
            edges,
        })
    }

    pub fn k(&self) -> u32 {
        self.modulus.k()
    }

    pub fn modulus(&self) -> &DenseModulus {
        &self.modulus
    }

    /// Nodes in layout order (`im` descending, then `re` ascending).
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Edges in `(u, v)` order with endpoints sorted by `(im, re)`.
    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: Node) -> bool {
        self.index.contains_key(&v)
    }

    pub fn check_node(&self, v: Node) -> Result<(), NetworkError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(NetworkError::NotANode { node: v, k: self.k() })
        }
    }

    pub fn index_of(&self, v: Node) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Neighbours of `v` in the fixed order `+1, -1, +i, -i`.
    pub fn neighbors(&self, v: Node) -> Result<[Node; 4], NetworkError> {
        let i = self
            .index_of(v)
            .ok_or(NetworkError::NotANode { node: v, k: self.k() })?;
        Ok(self.adjacency[i].map(|j| self.nodes[j]))
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        Edge::new(u, v, &self.modulus).is_ok()
    }

    pub fn classify_edge(&self, u: Node, v: Node) -> Result<(Axis, bool), NetworkError> {
        let e = Edge::new(u, v, &self.modulus)?;
        Ok((e.axis(), e.is_wrap()))
    }

    pub fn edge(&self, u: Node, v: Node) -> Result<Edge, NetworkError> {
        Edge::new(u, v, &self.modulus)
    }

    fn bfs_from(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn bfs_distance(&self, u: Node, v: Node) -> Result<u32, NetworkError> {
        self.check_node(v)?;
        let src = self
            .index_of(u)
            .ok_or(NetworkError::NotANode { node: u, k: self.k() })?;
        Ok(self.bfs_from(src)[self.index[&v]])
    }

    /// Eccentricity of node 0, which equals the diameter by vertex-transitivity.
    pub fn diameter(&self) -> u32 {
        let dist = self.bfs_from(self.index[&Node::ORIGIN]);
        dist.into_iter().max().unwrap_or(0)
    }

    /// Maximum eccentricity over all sources. Quadratic; for verification.
    pub fn diameter_all_pairs(&self) -> u32 {
        (0..self.nodes.len())
            .map(|s| self.bfs_from(s).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Number of nodes at each distance from node 0.
    pub fn distance_histogram(&self) -> BTreeMap<u32, usize> {
        let mut hist = BTreeMap::new();
        for d in self.bfs_from(self.index[&Node::ORIGIN]) {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }

    /// Label of `v` in the circulant graph `C_N(k, k+1)`: `(k·re + (k+1)·im) mod N`.
    pub fn to_circulant_label(&self, v: Node) -> u64 {
        let k = self.k() as i128;
        let n = self.modulus.n() as i128;
        (k * v.re as i128 + (k + 1) * v.im as i128).rem_euclid(n) as u64
    }

    /// Checks that the labelling is a bijection onto `0..N` and maps the edge
    /// set exactly onto the edges of `C_N(k, k+1)`.
    pub fn verify_circulant_iso(&self) -> bool {
        let n = self.modulus.n();
        let k = self.k() as u64;
        let labels: BTreeSet<u64> = self.nodes.iter().map(|&v| self.to_circulant_label(v)).collect();
        if labels.len() as u64 != n || labels.iter().any(|&l| l >= n) {
            return false;
        }
        let image: BTreeSet<(u64, u64)> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (self.to_circulant_label(e.u()), self.to_circulant_label(e.v()));
                (a.min(b), a.max(b))
            })
            .collect();
        let mut circulant = BTreeSet::new();
        for x in 0..n {
            for jump in [k, k + 1] {
                let y = (x + jump) % n;
                circulant.insert((x.min(y), x.max(y)));
            }
        }
        image.len() == self.edges.len() && image == circulant
    }
}
