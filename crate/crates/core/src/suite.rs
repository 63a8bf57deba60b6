//! The full property suite for one `k`, as run by `gaussnet verify`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::gaussian::Node;
use crate::network::{Edge, Network};
use crate::protocols::{path_survives, secure_split_send, FaultSpec, Packet, TreePair};
use crate::router::{RouteTables, Router};
use crate::trees::{
    black_components, build, component_a, component_b, component_wb, component_wr, rebase, red_components,
    to_rooted, SpanningTree, Subgraph, TreeError, TreeKind,
};
use crate::verifier::{check_lemmas, check_node_independence, depth, edge_disjointness, is_spanning_tree, tree_path};

/// Witness lists are truncated to this many entries.
pub const MAX_WITNESSES: usize = 20;

/// Fault sweeps are exhaustive up to this `k` and skipped beyond it.
pub const FAULT_SWEEP_MAX_K: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub k: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub witnesses: Vec<String>,
}

impl PropertyCheck {
    fn new(k: u32, name: &'static str, failures: Vec<String>, detail: String) -> PropertyCheck {
        PropertyCheck {
            k,
            name,
            pass: failures.is_empty(),
            detail,
            witnesses: failures.into_iter().take(MAX_WITNESSES).collect(),
        }
    }
}

/// `R'_k` with one leftover edge swapped in for a tree edge, chosen as the
/// first swap (in edge order) that keeps a spanning tree but breaks
/// independence from `B_k`.
pub fn sabotaged_red_prime(k: u32) -> Result<Subgraph, TreeError> {
    let net = Network::build(k)?;
    let black = build(TreeKind::Black, k)?;
    let red = build(TreeKind::RedPrime, k)?;
    let b0 = to_rooted(&black, Node::ORIGIN, TreeKind::Black)?;
    let leftover = edge_disjointness(&net, black.edges(), red.edges()).leftover_edges;
    for &add in &leftover {
        for &remove in red.edges() {
            let candidate = red.swap_edge(remove, add)?;
            let Ok(tree) = to_rooted(&candidate, Node::ORIGIN, TreeKind::RedPrime) else {
                continue;
            };
            if !check_node_independence(&b0, &tree).ok {
                return Ok(candidate);
            }
        }
    }
    // no leftover swap breaks anything; share a black edge instead
    let add = *black.edges().iter().find(|e| !red.edges().contains(e)).expect("B_k is non-empty");
    for &remove in red.edges() {
        let candidate = red.swap_edge(remove, add)?;
        if to_rooted(&candidate, Node::ORIGIN, TreeKind::RedPrime).is_ok() {
            return Ok(candidate);
        }
    }
    Err(TreeError::NotATree("no sabotage candidate".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RoutingReport {
    pub pairs: usize,
    pub longest: usize,
    pub mismatches: Vec<String>,
}

/// Routes every ordered pair on both trees and compares with the rebased
/// tree paths of `black` and `red`; also checks the length bound and that
/// the two routes are internally node-disjoint.
pub fn routing_equivalence(
    net: &Network,
    black: &SpanningTree,
    red: &SpanningTree,
    tables: RouteTables,
) -> Result<RoutingReport, TreeError> {
    let k = net.k();
    let routers = [
        Router::new(k, TreeKind::Black).expect("black is routable").with_tables(tables),
        Router::new(k, TreeKind::RedPrime).expect("red-prime is routable").with_tables(tables),
    ];
    let mut report = RoutingReport::default();
    for &s in net.nodes() {
        let trees = [rebase(black, s), rebase(red, s)];
        for &d in net.nodes() {
            if d == s {
                continue;
            }
            report.pairs += 1;
            let mut paths = Vec::with_capacity(2);
            for (router, tree) in routers.iter().zip(&trees) {
                let expected = tree_path(tree, d).expect("spanning");
                match router.simulate(s, d) {
                    Ok(route) => {
                        if route != expected {
                            report.mismatches.push(format!(
                                "{} {s} -> {d}: routed {} but tree path is {}",
                                router.kind(),
                                show(&route),
                                show(&expected)
                            ));
                        }
                        report.longest = report.longest.max(route.len() - 1);
                        if route.len() - 1 > 2 * k as usize {
                            report.mismatches.push(format!("{} {s} -> {d}: {} hops", router.kind(), route.len() - 1));
                        }
                        paths.push(route);
                    }
                    Err(e) => report.mismatches.push(format!("{} {s} -> {d}: {e}", router.kind())),
                }
            }
            if let [p, q] = paths.as_slice() {
                let inner: BTreeSet<Node> = p[1..p.len() - 1].iter().copied().collect();
                if let Some(x) = q[1..q.len() - 1].iter().find(|x| inner.contains(x)) {
                    report.mismatches.push(format!("{s} -> {d}: both routes pass through {x}"));
                }
            }
        }
    }
    Ok(report)
}

fn show(path: &[Node]) -> String {
    path.iter().map(|v| format!("{},{}", v.re, v.im)).collect::<Vec<_>>().join(" ")
}

/// Every node/edge fault against broadcast from every root and unicast
/// between every ordered pair.
pub fn fault_sweep(net: &Network, pair: &TreePair) -> Result<Vec<String>, crate::protocols::ProtocolError> {
    let mut failures = Vec::new();
    let faults: Vec<FaultSpec> = net
        .nodes()
        .iter()
        .map(|&v| FaultSpec::Node(v))
        .chain(net.edges().iter().map(|&e| FaultSpec::Edge(e)))
        .collect();
    for &root in net.nodes() {
        for fault in &faults {
            if *fault == FaultSpec::Node(root) {
                continue;
            }
            let rep = pair.broadcast(net, root, &[*fault])?;
            if !rep.blocked.is_empty() {
                failures.push(format!("broadcast from {root} with {fault:?} misses {:?}", rep.blocked));
            }
        }
    }
    for &s in net.nodes() {
        for &d in net.nodes() {
            if s == d {
                continue;
            }
            let [(_, p), (_, q)] = crate::protocols::routes(net, s, d)?;
            for fault in &faults {
                if matches!(fault, FaultSpec::Node(v) if *v == s || *v == d) {
                    continue;
                }
                if !path_survives(&p, fault) && !path_survives(&q, fault) {
                    failures.push(format!("unicast {s} -> {d} lost to {fault:?}"));
                }
            }
        }
    }
    Ok(failures)
}

/// Nodes other than the endpoints that see both packets, over all pairs.
pub fn split_violations(net: &Network) -> Result<Vec<String>, crate::protocols::ProtocolError> {
    let mut out = Vec::new();
    for &s in net.nodes() {
        for &d in net.nodes() {
            if s == d {
                continue;
            }
            let rep = secure_split_send(net, s, d)?;
            for (v, packets) in &rep.exposure {
                if *v != s && *v != d && packets.contains(&Packet::Black) && packets.contains(&Packet::Red) {
                    out.push(format!("{s} -> {d}: {v} sees both packets"));
                }
            }
        }
    }
    Ok(out)
}

fn edge_list(edges: &BTreeSet<Edge>) -> String {
    edges.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Runs every property for one `k`. With `mutate`, `R'_k` is replaced by
/// [`sabotaged_red_prime`] so the suite has something to catch.
pub fn run_suite(k: u32, mutate: bool) -> Result<Vec<PropertyCheck>, Box<dyn std::error::Error>> {
    let net = Network::build(k)?;
    let kk = k as i64;
    let n = net.node_count();
    let mut out = Vec::new();

    let black = build(TreeKind::Black, k)?;
    let red = build(TreeKind::Red, k)?;
    let red_prime = if mutate { sabotaged_red_prime(k)? } else { build(TreeKind::RedPrime, k)? };

    // counts
    let mut fails = Vec::new();
    let expect = |fails: &mut Vec<String>, what: &str, got: usize, want: usize| {
        if got != want {
            fails.push(format!("{what}: {got}, expected {want}"));
        }
    };
    let ku = k as usize;
    expect(&mut fails, "|V|", n, 2 * ku * ku + 2 * ku + 1);
    expect(&mut fails, "|E|", net.edge_count(), 4 * ku * ku + 4 * ku + 2);
    for (name, t) in [("B", &black), ("R", &red), ("R'", &red_prime)] {
        expect(&mut fails, &format!("|E({name})|"), t.edges().len(), 2 * ku * ku + 2 * ku);
    }
    expect(&mut fails, "|A|", component_a(k)?.edges().len(), ku * (ku - 1) / 2);
    expect(&mut fails, "|B|", component_b(k)?.edges().len(), ku);
    expect(&mut fails, "|W^B|", component_wb(k)?.edges().len(), ku);
    expect(&mut fails, "|W^R|", component_wr(k)?.edges().len(), ku);
    // components of each union are pairwise disjoint and cover V
    for comps in [black_components(k)?, red_components(k)?] {
        let total: usize = comps.iter().map(|c| c.subgraph.edges().len()).sum();
        let union: BTreeSet<Edge> = comps.iter().flat_map(|c| c.subgraph.edges().iter().copied()).collect();
        expect(&mut fails, "component edges", union.len(), total);
        let cover: BTreeSet<Node> = comps.iter().flat_map(|c| c.subgraph.vertices().iter().copied()).collect();
        expect(&mut fails, "component cover", cover.len(), n);
    }
    out.push(PropertyCheck::new(k, "counts", fails, format!("|V|={n} |E|={}", net.edge_count())));

    // spanning
    let fails: Vec<String> = [("B", &black), ("R", &red), ("R'", &red_prime)]
        .into_iter()
        .filter(|(_, t)| !is_spanning_tree(&net, t))
        .map(|(name, _)| format!("{name} is not a spanning tree"))
        .collect();
    out.push(PropertyCheck::new(k, "spanning", fails, String::new()));

    // edge-disjointness and leftovers
    let e = |u: Node, v: Node| net.edge(u, v);
    let mut fails = Vec::new();
    let want_r = BTreeSet::from([e(Node::new(-kk, 0), Node::new(0, -kk))?, e(Node::new(kk, 0), Node::new(0, -kk))?]);
    let want_rp = BTreeSet::from([e(Node::new(-kk, 0), Node::new(0, -kk))?, e(Node::new(kk, 0), Node::new(0, kk))?]);
    for (name, t, want) in [("R", &red, want_r), ("R'", &red_prime, want_rp)] {
        let rep = edge_disjointness(&net, black.edges(), t.edges());
        if !rep.is_disjoint() {
            fails.push(format!("B and {name} share {}", edge_list(&rep.shared_edges)));
        }
        if rep.leftover_edges != want {
            fails.push(format!(
                "leftover for (B, {name}) is {}, expected {}",
                edge_list(&rep.leftover_edges),
                edge_list(&want)
            ));
        }
    }
    out.push(PropertyCheck::new(k, "edge-disjoint", fails, String::new()));

    let rooted_at_0 = |t: &Subgraph, kind| to_rooted(t, Node::ORIGIN, kind);
    let b0 = rooted_at_0(&black, TreeKind::Black)?;
    let r0 = rooted_at_0(&red, TreeKind::Red)?;
    let rp0 = match rooted_at_0(&red_prime, TreeKind::RedPrime) {
        Ok(t) => t,
        Err(err) => {
            out.push(PropertyCheck::new(k, "independence", vec![err.to_string()], String::new()));
            return Ok(out);
        }
    };

    // independence
    let mut fails = Vec::new();
    let mut pairs = vec![("R'", &rp0)];
    if k >= 2 {
        pairs.insert(0, ("R", &r0));
    }
    for (name, t) in pairs {
        let rep = check_node_independence(&b0, t);
        fails.extend(
            rep.witnesses
                .iter()
                .map(|w| format!("(B, {name}) paths to {} both pass {}", w.target, w.shared)),
        );
        if !rep.ok && rep.witnesses.is_empty() {
            fails.push(format!("(B, {name}) cover different nodes"));
        }
    }
    out.push(PropertyCheck::new(k, "independence", fails, format!("{n} targets")));

    // depth
    let depths = [depth(&b0), depth(&r0), depth(&rp0)];
    let want = [2 * ku, if k == 1 { 3 } else { 2 * ku }, 2 * ku];
    let fails = ["B", "R", "R'"]
        .iter()
        .zip(depths.iter().zip(want))
        .filter(|(_, (got, want))| **got != *want)
        .map(|(name, (got, want))| format!("depth({name}) = {got}, expected {want}"))
        .collect();
    out.push(PropertyCheck::new(
        k,
        "depth",
        fails,
        format!("B={} R={} R'={}", depths[0], depths[1], depths[2]),
    ));

    // structural lemmas
    let lemmas = check_lemmas(k)?;
    let mut fails = Vec::new();
    if !lemmas.path_bounds_hold() {
        fails.push(format!(
            "H^B longest {} (bound {k}), H^R longest {} (bound {}), axes {:?} / {:?}",
            lemmas.h_black.longest,
            lemmas.h_red.longest,
            k + 1,
            lemmas.h_black.axes,
            lemmas.h_red.axes
        ));
    }
    out.push(PropertyCheck::new(
        k,
        "path-lemmas",
        fails,
        format!("H^B longest {}, H^R longest {}", lemmas.h_black.longest, lemmas.h_red.longest),
    ));
    let fails = lemmas
        .horvert_violations
        .iter()
        .map(|v| format!("{} / {} share {}", show(&v.horizontal), show(&v.vertical), show(&v.common)))
        .collect();
    out.push(PropertyCheck::new(k, "horvert", fails, format!("{} path pairs", lemmas.horvert_pairs)));
    let fails = if lemmas.at_most_two_trees() {
        vec![]
    } else {
        vec![format!("|E| = {} allows a third tree", lemmas.edges)]
    };
    out.push(PropertyCheck::new(k, "two-tree-bound", fails, String::new()));

    // topology
    let diameter = net.diameter_all_pairs();
    let fails = if diameter == k { vec![] } else { vec![format!("diameter {diameter}")] };
    out.push(PropertyCheck::new(k, "diameter", fails, format!("{diameter}")));
    let fails = if net.verify_circulant_iso() {
        vec![]
    } else {
        vec!["edge set differs from the circulant".to_string()]
    };
    out.push(PropertyCheck::new(k, "circulant", fails, format!("C_{n}({k}, {})", k + 1)));

    // routing against the (possibly sabotaged) trees
    let rep = routing_equivalence(&net, &b0, &rp0, RouteTables::Amended)?;
    out.push(PropertyCheck::new(
        k,
        "routing",
        rep.mismatches,
        format!("{} pairs, longest route {}", rep.pairs, rep.longest),
    ));

    out.push(PropertyCheck::new(k, "secure-split", split_violations(&net)?, String::new()));

    if k <= FAULT_SWEEP_MAX_K {
        let pair = TreePair::new(k)?;
        out.push(PropertyCheck::new(k, "fault-tolerance", fault_sweep(&net, &pair)?, String::new()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_suite_passes() {
        for k in 1..=3 {
            for check in run_suite(k, false).unwrap() {
                assert!(check.pass, "k={k} {}: {:?}", check.name, check.witnesses);
            }
        }
    }

    #[test]
    fn sabotage_is_caught() {
        for k in 1..=3 {
            let checks = run_suite(k, true).unwrap();
            let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
            assert!(failed.contains(&"edge-disjoint"), "k={k}: {failed:?}");
            assert!(failed.iter().any(|f| *f == "independence" || *f == "routing"), "k={k}: {failed:?}");
        }
    }

    #[test]
    fn sabotage_k2_breaks_independence() {
        let sub = sabotaged_red_prime(2).unwrap();
        let t = to_rooted(&sub, Node::ORIGIN, TreeKind::RedPrime).unwrap();
        let b = crate::trees::rooted(TreeKind::Black, 2).unwrap();
        assert!(!check_node_independence(&b, &t).ok);
    }
}
