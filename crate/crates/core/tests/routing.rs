use gaussnet::router::{self, Transit, WIRE_LEN};
use gaussnet::trees::{rebase, rooted};
use gaussnet::verifier::tree_path;
use gaussnet::{MessageHeader, Network, Node, RouteTables, Router, TreeKind};
use proptest::prelude::*;

/// Delivers a message using nothing but the 12 header bytes and the local
/// address at each hop.
fn replay(k: u32, s: Node, d: Node, kind: TreeKind) -> Vec<Node> {
    let m = Network::build(k).unwrap();
    let first = router::source_route(k, s, d, kind).unwrap();
    let mut wire: [u8; WIRE_LEN] = MessageHeader { hops: 1, ..first }.to_wire().unwrap();
    let mut at = router::step(s, first.dir, m.modulus());
    let mut path = vec![s];
    loop {
        path.push(at);
        let header = MessageHeader::from_wire(&wire).unwrap();
        match router::transit_step(k, &header, at, kind).unwrap() {
            Transit::Accept => return path,
            Transit::Forward { header, next } => {
                wire = header.to_wire().unwrap();
                at = next;
            }
        }
    }
}

#[test]
fn stateless_replay_matches_simulation() {
    for k in 1..=4u32 {
        let g = Network::build(k).unwrap();
        for kind in [TreeKind::Black, TreeKind::RedPrime] {
            let r = Router::new(k, kind).unwrap();
            for &s in g.nodes() {
                for &d in g.nodes() {
                    if s != d {
                        assert_eq!(replay(k, s, d, kind), r.simulate(s, d).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn printed_tables_fail_only_at_red_prime_corners() {
    for k in 1..=6u32 {
        let g = Network::build(k).unwrap();
        let kk = k as i64;
        let corners = [Node::new(kk, 0), Node::new(0, kk)];
        for kind in [TreeKind::Black, TreeKind::RedPrime] {
            let tree = rooted(kind, k).unwrap();
            let r = Router::new(k, kind).unwrap().with_tables(RouteTables::Printed);
            for &d in g.nodes().iter().filter(|&&d| d != Node::ORIGIN) {
                let ok = r.simulate(Node::ORIGIN, d).ok() == tree_path(&tree, d);
                let corner = kind == TreeKind::RedPrime && corners.contains(&d);
                assert_eq!(ok, !corner, "k={k} {kind} to {d}");
            }
        }
    }
}

#[test]
fn red_tree_has_no_router() {
    assert!(Router::new(3, TreeKind::Red).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_pairs_follow_rebased_tree(k in 1u32..=25, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), red in any::<bool>()) {
        let g = Network::build(k).unwrap();
        let s = g.nodes()[i.index(g.node_count())];
        let d = g.nodes()[j.index(g.node_count())];
        prop_assume!(s != d);
        let kind = if red { TreeKind::RedPrime } else { TreeKind::Black };
        let tree = rebase(&rooted(kind, k).unwrap(), s);
        let route = Router::new(k, kind).unwrap().simulate(s, d).unwrap();
        prop_assert!(route.len() - 1 <= 2 * k as usize);
        prop_assert_eq!(Some(route), tree_path(&tree, d));
    }

    #[test]
    fn wire_roundtrip(s1 in -300i64..300, s2 in -300i64..300, d1 in -300i64..300, d2 in -300i64..300, dir in 0i64..4, hops in 0u32..600) {
        let h = MessageHeader {
            source: Node::new(s1, s2),
            mapped_dest: Node::new(d1, d2),
            dir: gaussnet::Direction::from_code(dir).unwrap(),
            hops,
        };
        prop_assert_eq!(MessageHeader::from_wire(&h.to_wire().unwrap()).unwrap(), h);
    }
}
