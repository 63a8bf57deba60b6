//! Brute-force checks of every structural claim about `B_k`, `R_k` and
//! `R'_k`.
//!
//! Everything here works from raw edge sets: connectivity, root paths and
//! intersections are recomputed by plain traversal and never read back from
//! the builder's bookkeeping.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::gaussian::{DenseModulus, Node};
use crate::network::{Axis, Edge, Network, UNIT_STEPS};
use crate::symmetry::SymmetryWord;
use crate::trees::{h_subgraphs, SpanningTree, Subgraph, TreeError};

type Adjacency = BTreeMap<Node, Vec<Node>>;

fn adjacency<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> Adjacency {
    let mut adj: Adjacency = BTreeMap::new();
    for e in edges {
        adj.entry(e.u()).or_default().push(e.v());
        adj.entry(e.v()).or_default().push(e.u());
    }
    adj
}

/// BFS from `root`, returning the predecessor of every reached node.
fn bfs_predecessors(adj: &Adjacency, root: Node) -> BTreeMap<Node, Option<Node>> {
    let mut pred = BTreeMap::from([(root, None)]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if let std::collections::btree_map::Entry::Vacant(e) = pred.entry(y) {
                e.insert(Some(x));
                queue.push_back(y);
            }
        }
    }
    pred
}

/// Root-to-node paths of the tree spanned by `edges`, recomputed from scratch.
fn root_paths(edges: &BTreeSet<Edge>, root: Node) -> BTreeMap<Node, Vec<Node>> {
    let pred = bfs_predecessors(&adjacency(edges), root);
    pred.keys()
        .map(|&v| {
            let mut path = vec![v];
            let mut cur = v;
            while let Some(Some(p)) = pred.get(&cur) {
                path.push(*p);
                cur = *p;
            }
            path.reverse();
            (v, path)
        })
        .collect()
}

/// True iff `sub` covers every node of `net`, uses only edges of `net`, is
/// connected, and has exactly `|V| - 1` edges.
pub fn is_spanning_tree(net: &Network, sub: &Subgraph) -> bool {
    let all: BTreeSet<Node> = net.nodes().iter().copied().collect();
    if sub.vertices() != &all || !sub.edges().iter().all(|e| net.edges().contains(e)) {
        return false;
    }
    if sub.edges().len() + 1 != all.len() {
        return false;
    }
    bfs_predecessors(&adjacency(sub.edges()), Node::ORIGIN).len() == all.len()
}

/// The unique root-to-`v` path, obtained by reversing the parent chain.
pub fn tree_path(tree: &SpanningTree, v: Node) -> Option<Vec<Node>> {
    if !tree.contains(v) {
        return None;
    }
    let mut path = vec![v];
    let mut cur = v;
    while let Some(p) = tree.parent(cur) {
        path.push(p);
        cur = p;
        if path.len() > tree.parents().len() + 1 {
            return None;
        }
    }
    path.reverse();
    Some(path)
}

/// Longest root path, in edges.
pub fn depth(tree: &SpanningTree) -> usize {
    root_paths(&tree.edges(), tree.root())
        .values()
        .map(|p| p.len() - 1)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceWitness {
    /// The destination whose two root paths meet.
    pub target: Node,
    /// A node other than the root and `target` that lies on both paths.
    pub shared: Node,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub ok: bool,
    pub checked: usize,
    pub witnesses: Vec<IndependenceWitness>,
}

/// Checks that for every node `v` the two root paths share only the root and
/// `v`. Trees with different roots are reported as violating at the roots.
pub fn check_node_independence(t1: &SpanningTree, t2: &SpanningTree) -> IndependenceReport {
    let root = t1.root();
    if t2.root() != root {
        return IndependenceReport {
            ok: false,
            checked: 0,
            witnesses: vec![IndependenceWitness {
                target: t2.root(),
                shared: root,
            }],
        };
    }
    let p1 = root_paths(&t1.edges(), root);
    let p2 = root_paths(&t2.edges(), root);
    let mut witnesses = Vec::new();
    for (v, path1) in &p1 {
        let Some(path2) = p2.get(v) else {
            witnesses.push(IndependenceWitness { target: *v, shared: *v });
            continue;
        };
        let on2: BTreeSet<Node> = path2.iter().copied().collect();
        for &u in path1 {
            if u != root && u != *v && on2.contains(&u) {
                witnesses.push(IndependenceWitness { target: *v, shared: u });
            }
        }
    }
    witnesses.sort_by_key(|a| (a.target, a.shared));
    IndependenceReport {
        ok: witnesses.is_empty() && p1.len() == p2.len(),
        checked: p1.len(),
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointnessReport {
    pub shared_edges: BTreeSet<Edge>,
    /// Edges of `G_k` used by neither tree.
    pub leftover_edges: BTreeSet<Edge>,
}

impl DisjointnessReport {
    pub fn is_disjoint(&self) -> bool {
        self.shared_edges.is_empty()
    }
}

pub fn edge_disjointness(net: &Network, t1: &BTreeSet<Edge>, t2: &BTreeSet<Edge>) -> DisjointnessReport {
    DisjointnessReport {
        shared_edges: t1.intersection(t2).copied().collect(),
        leftover_edges: net
            .edges()
            .iter()
            .filter(|e| !t1.contains(e) && !t2.contains(e))
            .copied()
            .collect(),
    }
}

/// Structure of a graph that should be a disjoint union of paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathForest {
    pub acyclic: bool,
    /// Longest path length in edges (longest over all components).
    pub longest: usize,
    pub axes: BTreeSet<Axis>,
}

pub fn path_forest(edges: &BTreeSet<Edge>) -> PathForest {
    let adj = adjacency(edges);
    let mut seen = BTreeSet::new();
    let mut acyclic = true;
    let mut longest = 0;
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let comp = bfs_predecessors(&adj, start);
        let comp_edges: usize = comp.keys().map(|v| adj[v].len()).sum::<usize>() / 2;
        if comp_edges + 1 != comp.len() {
            acyclic = false;
        }
        // double sweep gives the diameter of a tree
        let far = eccentric(&adj, start).0;
        longest = longest.max(eccentric(&adj, far).1);
        seen.extend(comp.into_keys());
    }
    PathForest {
        acyclic,
        longest,
        axes: edges.iter().map(Edge::axis).collect(),
    }
}

fn eccentric(adj: &Adjacency, from: Node) -> (Node, usize) {
    let mut dist = BTreeMap::from([(from, 0usize)]);
    let mut queue = VecDeque::from([from]);
    let mut best = (from, 0);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d > best.1 {
            best = (x, d);
        }
        for &y in &adj[&x] {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HorVertViolation {
    pub horizontal: Vec<Node>,
    pub vertical: Vec<Node>,
    pub common: Vec<Node>,
}

/// All straight paths of length `0..=max_len` along `step` (a unit).
fn straight_paths(m: &DenseModulus, step: (i64, i64), max_len: usize) -> Vec<Vec<Node>> {
    let mut out = Vec::new();
    for v in m.diamond() {
        let mut path = vec![v];
        out.push(path.clone());
        for _ in 0..max_len {
            let last = *path.last().unwrap();
            path.push(m.reduce_parts(last.re + step.0, last.im + step.1));
            out.push(path.clone());
        }
    }
    out
}

/// Checks that a horizontal and a vertical path of length at most `k+1`
/// share at most two nodes, and two only when one of them has length `k+1`
/// and the common nodes are its endpoints. Returns `(pairs checked, violations)`.
pub fn check_horizontal_vertical(m: &DenseModulus) -> (usize, Vec<HorVertViolation>) {
    horizontal_vertical_up_to(m, m.k() as usize + 1)
}

fn horizontal_vertical_up_to(m: &DenseModulus, max_len: usize) -> (usize, Vec<HorVertViolation>) {
    let k = m.k() as usize;
    let horizontal = straight_paths(m, UNIT_STEPS[0], max_len);
    let vertical = straight_paths(m, UNIT_STEPS[2], max_len);
    let mut through: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    for (i, p) in vertical.iter().enumerate() {
        for &v in p {
            through.entry(v).or_default().push(i);
        }
    }
    let is_long_with_ends = |p: &[Node], common: &[Node]| {
        p.len() == k + 2 && common.len() == 2 && common.contains(&p[0]) && common.contains(&p[p.len() - 1])
    };
    let mut violations = Vec::new();
    // straight paths never revisit a node, so counting per path is exact
    for h in &horizontal {
        let mut shared: BTreeMap<usize, Vec<Node>> = BTreeMap::new();
        for x in h {
            for &i in through.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                shared.entry(i).or_default().push(*x);
            }
        }
        for (i, mut common) in shared {
            let v = &vertical[i];
            let bad = match common.len() {
                0 | 1 => false,
                2 => !(is_long_with_ends(h, &common) || is_long_with_ends(v, &common)),
                _ => true,
            };
            if bad {
                common.sort();
                violations.push(HorVertViolation {
                    horizontal: h.clone(),
                    vertical: v.clone(),
                    common,
                });
            }
        }
    }
    let pairs = horizontal.len() * vertical.len();
    (pairs, violations)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub k: u32,
    pub h_black: PathForest,
    pub h_red: PathForest,
    pub rho_h_black: PathForest,
    pub rho_h_red: PathForest,
    pub horvert_pairs: usize,
    pub horvert_violations: Vec<HorVertViolation>,
    pub edges: usize,
    pub nodes: usize,
}

impl LemmaReport {
    /// Paths in `H^B` (resp. `H^R`) are horizontal, of length at most `k`
    /// (resp. `k+1`), and vertical under ρ.
    pub fn path_bounds_hold(&self) -> bool {
        let k = self.k as usize;
        let only = |f: &PathForest, axis: Axis| f.axes.iter().all(|&a| a == axis);
        self.h_black.acyclic
            && self.h_red.acyclic
            && self.h_black.longest <= k
            && self.h_red.longest <= k + 1
            && self.rho_h_black.longest <= k
            && self.rho_h_red.longest <= k + 1
            && only(&self.h_black, Axis::Horizontal)
            && only(&self.h_red, Axis::Horizontal)
            && only(&self.rho_h_black, Axis::Vertical)
            && only(&self.rho_h_red, Axis::Vertical)
    }

    /// `|E| < 3(|V| - 1)`: no third edge-disjoint spanning tree fits.
    pub fn at_most_two_trees(&self) -> bool {
        self.edges < 3 * (self.nodes - 1)
    }

    pub fn ok(&self) -> bool {
        self.path_bounds_hold() && self.horvert_violations.is_empty() && self.at_most_two_trees()
    }
}

pub fn check_lemmas(k: u32) -> Result<LemmaReport, TreeError> {
    let net = Network::build(k)?;
    let (hb, hr) = h_subgraphs(k)?;
    let rho = SymmetryWord::rho_pow_sigma(1, 0);
    let (pairs, violations) = check_horizontal_vertical(net.modulus());
    Ok(LemmaReport {
        k,
        h_black: path_forest(hb.edges()),
        h_red: path_forest(hr.edges()),
        rho_h_black: path_forest(hb.image(&rho)?.edges()),
        rho_h_red: path_forest(hr.image(&rho)?.edges()),
        horvert_pairs: pairs,
        horvert_violations: violations,
        edges: net.edge_count(),
        nodes: net.node_count(),
    })
}
