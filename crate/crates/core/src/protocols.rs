//! Fault-tolerant broadcast and unicast, and two-packet secure splitting,
//! over the pair `(B_k, R'_k)` rebased to the communicating node.
//!
//! Broadcast runs structurally on the rebased parent maps in synchronous
//! rounds (depth order); unicast and splitting use the routed paths.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::gaussian::Node;
use crate::network::{Edge, Network};
use crate::router::{RouteError, Router};
use crate::trees::{rebase, rooted, SpanningTree, TreeError, TreeKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("faulty node {0} is an endpoint of the communication")]
    FaultAtEndpoint(Node),
    #[error("{node} is not a node of G_{k}")]
    NotANode { node: Node, k: u32 },
}

/// A static fault, fixed before the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FaultSpec {
    #[default]
    None,
    Node(Node),
    Edge(Edge),
}

impl FaultSpec {
    fn blocks_node(&self, v: Node) -> bool {
        matches!(self, FaultSpec::Node(f) if *f == v)
    }

    fn blocks_link(&self, a: Node, b: Node) -> bool {
        match self {
            FaultSpec::Node(f) => *f == a || *f == b,
            FaultSpec::Edge(e) => e.touches(a) && e.other(a) == Some(b),
            FaultSpec::None => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Packet {
    Black,
    Red,
}

impl Packet {
    pub fn tree(self) -> TreeKind {
        match self {
            Packet::Black => TreeKind::Black,
            Packet::Red => TreeKind::RedPrime,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeliveryReport {
    pub delivered: BTreeSet<Node>,
    /// Intended recipients that received nothing.
    pub blocked: BTreeSet<Node>,
    /// Which packets (or broadcast copies) each node held.
    pub exposure: BTreeMap<Node, BTreeSet<Packet>>,
    /// Successful link transmissions per tree.
    pub transmissions: BTreeMap<Packet, usize>,
    /// Routed paths, for unicast-style protocols.
    pub routes: BTreeMap<Packet, Vec<Node>>,
}

/// `B_k` and `R'_k` rooted at 0, rebased on demand.
#[derive(Debug, Clone)]
pub struct TreePair {
    pub black: SpanningTree,
    pub red_prime: SpanningTree,
}

impl TreePair {
    pub fn new(k: u32) -> Result<TreePair, TreeError> {
        Ok(TreePair {
            black: rooted(TreeKind::Black, k)?,
            red_prime: rooted(TreeKind::RedPrime, k)?,
        })
    }

    pub fn rooted_at(&self, root: Node) -> [(Packet, SpanningTree); 2] {
        [
            (Packet::Black, rebase(&self.black, root)),
            (Packet::Red, rebase(&self.red_prime, root)),
        ]
    }

    /// Broadcast from `root` down both trees with any number of static faults
    /// (only a single fault is guaranteed to be tolerated).
    pub fn broadcast(&self, net: &Network, root: Node, faults: &[FaultSpec]) -> Result<DeliveryReport, ProtocolError> {
        check(net, root)?;
        if faults.iter().any(|f| f.blocks_node(root)) {
            return Err(ProtocolError::FaultAtEndpoint(root));
        }
        let mut report = DeliveryReport::default();
        for (packet, tree) in self.rooted_at(root) {
            let children = tree.children();
            let mut sent = 0;
            let mut frontier = vec![root];
            report.exposure.entry(root).or_default().insert(packet);
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &x in &frontier {
                    for &c in children.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                        if faults.iter().any(|f| f.blocks_link(x, c)) {
                            continue;
                        }
                        sent += 1;
                        report.exposure.entry(c).or_default().insert(packet);
                        next.push(c);
                    }
                }
                frontier = next;
            }
            report.transmissions.insert(packet, sent);
        }
        for &v in net.nodes() {
            if faults.iter().any(|f| f.blocks_node(v)) {
                continue;
            }
            if report.exposure.contains_key(&v) {
                report.delivered.insert(v);
            } else {
                report.blocked.insert(v);
            }
        }
        Ok(report)
    }
}

fn check(net: &Network, v: Node) -> Result<(), ProtocolError> {
    if net.contains(v) {
        Ok(())
    } else {
        Err(ProtocolError::NotANode { node: v, k: net.k() })
    }
}

pub fn ft_broadcast(net: &Network, root: Node, fault: FaultSpec) -> Result<DeliveryReport, ProtocolError> {
    TreePair::new(net.k())?.broadcast(net, root, &[fault])
}

/// Both routed paths from `s` to `d`, black first.
pub fn routes(net: &Network, s: Node, d: Node) -> Result<[(Packet, Vec<Node>); 2], ProtocolError> {
    let black = Router::new(net.k(), TreeKind::Black)?.simulate(s, d)?;
    let red = Router::new(net.k(), TreeKind::RedPrime)?.simulate(s, d)?;
    Ok([(Packet::Black, black), (Packet::Red, red)])
}

/// Whether a routed path avoids `fault`.
pub fn path_survives(path: &[Node], fault: &FaultSpec) -> bool {
    path.iter().all(|&v| !fault.blocks_node(v)) && path.windows(2).all(|w| !fault.blocks_link(w[0], w[1]))
}

/// Splits a message into a black and a red packet and routes each along its
/// own tree.
pub fn secure_split_send(net: &Network, s: Node, d: Node) -> Result<DeliveryReport, ProtocolError> {
    let mut report = DeliveryReport::default();
    for (packet, path) in routes(net, s, d)? {
        for &v in &path {
            report.exposure.entry(v).or_default().insert(packet);
        }
        report.transmissions.insert(packet, path.len() - 1);
        report.routes.insert(packet, path);
    }
    if report.exposure.get(&d).map_or(0, BTreeSet::len) == 2 {
        report.delivered.insert(d);
    } else {
        report.blocked.insert(d);
    }
    Ok(report)
}

/// True iff at least one of the two routes from `s` to `d` avoids `fault`.
pub fn ft_unicast(net: &Network, s: Node, d: Node, fault: FaultSpec) -> Result<bool, ProtocolError> {
    for v in [s, d] {
        if fault.blocks_node(v) {
            return Err(ProtocolError::FaultAtEndpoint(v));
        }
    }
    Ok(routes(net, s, d)?.iter().any(|(_, p)| path_survives(p, &fault)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(re: i64, im: i64) -> Node {
        Node::new(re, im)
    }

    #[test]
    fn broadcast_without_faults() {
        let g = Network::build(4).unwrap();
        let rep = ft_broadcast(&g, Node::ORIGIN, FaultSpec::None).unwrap();
        assert_eq!(rep.delivered.len(), 41);
        assert!(rep.blocked.is_empty());
        assert_eq!(rep.transmissions[&Packet::Black], 40);
        assert_eq!(rep.transmissions[&Packet::Red], 40);
        assert!(rep.exposure.values().all(|p| p.len() == 2));
    }

    #[test]
    fn broadcast_around_a_node_fault() {
        let g = Network::build(2).unwrap();
        let rep = ft_broadcast(&g, Node::ORIGIN, FaultSpec::Node(n(0, 1))).unwrap();
        assert_eq!(rep.delivered.len(), 12);
        assert!(!rep.delivered.contains(&n(0, 1)));
        assert!(rep.blocked.is_empty());
        assert_eq!(rep.exposure[&n(1, 1)], BTreeSet::from([Packet::Red]));
        assert_eq!(rep.exposure[&n(0, 2)], BTreeSet::from([Packet::Red]));
        assert!(matches!(
            ft_broadcast(&g, Node::ORIGIN, FaultSpec::Node(Node::ORIGIN)),
            Err(ProtocolError::FaultAtEndpoint(_))
        ));
    }

    #[test]
    fn double_faults_are_best_effort() {
        let g = Network::build(2).unwrap();
        let pair = TreePair::new(2).unwrap();
        let rep = pair
            .broadcast(&g, Node::ORIGIN, &[FaultSpec::Node(n(0, 1)), FaultSpec::Node(n(-1, 0))])
            .unwrap();
        // 1+i hangs below i in B_2 and below -1 in R'_2
        assert!(rep.blocked.contains(&n(1, 1)));
        assert_eq!(rep.delivered.len() + rep.blocked.len(), 11);
    }

    #[test]
    fn split_exposure() {
        let g = Network::build(2).unwrap();
        let rep = secure_split_send(&g, Node::ORIGIN, n(1, 1)).unwrap();
        let black = BTreeSet::from([Packet::Black]);
        let red = BTreeSet::from([Packet::Red]);
        let both = BTreeSet::from([Packet::Black, Packet::Red]);
        assert_eq!(rep.exposure[&n(0, 1)], black);
        assert_eq!(rep.exposure[&n(-1, 0)], red);
        assert_eq!(rep.exposure[&n(-1, -1)], red);
        assert_eq!(rep.exposure[&n(1, 1)], both);
        assert_eq!(rep.delivered, BTreeSet::from([n(1, 1)]));
        assert!(matches!(
            secure_split_send(&g, n(1, 1), n(1, 1)),
            Err(ProtocolError::Route(RouteError::SelfRoute(_)))
        ));
    }

    #[test]
    fn unicast_examples() {
        let g = Network::build(2).unwrap();
        assert!(ft_unicast(&g, Node::ORIGIN, n(1, 1), FaultSpec::Node(n(0, 1))).unwrap());
        let e = g.edge(n(-1, 0), n(-1, -1)).unwrap();
        assert!(ft_unicast(&g, Node::ORIGIN, n(1, 1), FaultSpec::Edge(e)).unwrap());
        assert!(ft_unicast(&g, Node::ORIGIN, n(1, 1), FaultSpec::None).unwrap());
        assert!(ft_unicast(&g, Node::ORIGIN, n(1, 1), FaultSpec::Node(n(1, 1))).is_err());
        let [(_, black), (_, red)] = routes(&g, Node::ORIGIN, n(1, 1)).unwrap();
        assert!(!path_survives(&black, &FaultSpec::Node(n(0, 1))));
        assert!(path_survives(&red, &FaultSpec::Node(n(0, 1))));
        assert!(!path_survives(&red, &FaultSpec::Edge(e)));
    }
}
