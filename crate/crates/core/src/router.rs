//! Header-based routing along `B_k` or `R'_k` from any source.
//!
//! The source maps the destination into its own frame (`d - s mod α_k`),
//! picks an initial direction from the source table, and stamps it into the
//! header. Every other node maps itself the same way and either accepts,
//! turns (when it sits on an axis of the source frame and the destination
//! lies on the continuing path), or keeps the message moving in the same
//! direction. No node needs any state beyond the header.
//!
//! Source table (`d^m = d₁ + d₂i`):
//!
//! | condition   | `B_k` | `R'_k` |
//! |-------------|-------|--------|
//! | `d₁·d₂ > 0` | `+i`  | `-1`   |
//! | `d₁·d₂ < 0` | `+1`  | `-i`   |
//! | `d₂ = 0`    | `+1`  | `-1`   |
//! | `d₁ = 0`    | `+i`  | `-i`   |
//!
//! Transit table (`t^m = t₁ + t₂i`, first match wins):
//!
//! 1. `t₂ = 0` and `t₁ ∈ {d₁, d₁+k+1, d₁-k}`: turn to `-i`.
//! 2. `t₁ = 0` and `t₂ ∈ {d₂, d₂+k+1, d₂-k}`: turn to `+1`.
//! 3. otherwise keep the current direction.
//!
//! The printed tables misroute the two `R'_k` destinations `k` and `ki`,
//! which are the only nodes whose tree position changes or sits on both
//! axes modulo `α_k`. [`RouteTables::Amended`] (the default) adds two source
//! rows for `R'_k` (`d^m = k` leaves on `-i`, `d^m = ki` leaves on `-1`) and
//! suppresses turning for `d^m = k`, whose route runs straight down the
//! negative imaginary axis and wraps onto `k`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gaussian::{ArithmeticError, DenseModulus, Node};
use crate::network::Network;
use crate::trees::TreeKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error("source and destination are the same node {0}")]
    SelfRoute(Node),
    #[error("{node} is not a node of G_{k}")]
    NotANode { node: Node, k: u32 },
    #[error("routing is defined on the black and red-prime trees only, not {0}")]
    UnsupportedTree(TreeKind),
    #[error("hop limit {limit} exceeded at {at} (header {header})")]
    HopLimitExceeded {
        limit: u32,
        at: Node,
        header: MessageHeader,
    },
    #[error("message returned to its source {0}")]
    ReturnedToSource(Node),
    #[error("header field {field} = {value} does not fit the wire format")]
    WireOverflow { field: &'static str, value: i64 },
    #[error("malformed wire header: {0}")]
    WireFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    /// `+1`
    E,
    /// `-1`
    W,
    /// `+i`
    N,
    /// `-i`
    S,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::E, Direction::W, Direction::N, Direction::S];

    pub fn unit(self) -> (i64, i64) {
        match self {
            Direction::E => (1, 0),
            Direction::W => (-1, 0),
            Direction::N => (0, 1),
            Direction::S => (0, -1),
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: i64) -> Option<Direction> {
        Direction::ALL.get(usize::try_from(code).ok()?).copied()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::E => "+1",
            Direction::W => "-1",
            Direction::N => "+i",
            Direction::S => "-i",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `(t + dir) mod α_k`.
pub fn step(t: Node, dir: Direction, m: &DenseModulus) -> Node {
    let (dr, di) = dir.unit();
    m.reduce_parts(t.re + dr, t.im + di)
}

/// Routing state carried by a message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MessageHeader {
    pub source: Node,
    /// Destination as seen from the source: `(d - s) mod α_k`.
    pub mapped_dest: Node,
    pub dir: Direction,
    /// Links traversed so far.
    pub hops: u32,
}

pub const WIRE_LEN: usize = 12;

impl MessageHeader {
    /// Six little-endian `i16` fields: `s₁, s₂, d₁ᵐ, d₂ᵐ, dir, hops`.
    pub fn to_wire(&self) -> Result<[u8; WIRE_LEN], RouteError> {
        let fields: [(&'static str, i64); 6] = [
            ("s1", self.source.re),
            ("s2", self.source.im),
            ("d1m", self.mapped_dest.re),
            ("d2m", self.mapped_dest.im),
            ("dir", self.dir.code() as i64),
            ("hops", self.hops as i64),
        ];
        let mut out = [0u8; WIRE_LEN];
        for (chunk, (field, value)) in out.chunks_exact_mut(2).zip(fields) {
            let v = i16::try_from(value).map_err(|_| RouteError::WireOverflow { field, value })?;
            chunk.copy_from_slice(&v.to_le_bytes());
        }
        Ok(out)
    }

    pub fn from_wire(bytes: &[u8]) -> Result<MessageHeader, RouteError> {
        if bytes.len() != WIRE_LEN {
            return Err(RouteError::WireFormat(format!(
                "expected {WIRE_LEN} bytes, got {}",
                bytes.len()
            )));
        }
        let f: Vec<i64> = bytes
            .chunks_exact(2)
            .map(|c| i16::from_le_bytes([c[0], c[1]]) as i64)
            .collect();
        let dir = Direction::from_code(f[4])
            .ok_or_else(|| RouteError::WireFormat(format!("direction code {} out of range", f[4])))?;
        let hops = u32::try_from(f[5])
            .map_err(|_| RouteError::WireFormat(format!("negative hop count {}", f[5])))?;
        Ok(MessageHeader {
            source: Node::new(f[0], f[1]),
            mapped_dest: Node::new(f[2], f[3]),
            dir,
            hops,
        })
    }
}

impl fmt::Display for MessageHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(<{},{}>, <{},{}>, {}) hops={}",
            self.source.re, self.source.im, self.mapped_dest.re, self.mapped_dest.im, self.dir, self.hops
        )
    }
}

/// Which version of the routing tables to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RouteTables {
    /// The printed tables plus the two `R'_k` corner fixes.
    #[default]
    Amended,
    /// The printed tables exactly as published.
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transit {
    Accept,
    Forward { header: MessageHeader, next: Node },
}

/// Which transit rule fired at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Turn {
    OnHorizontalAxis,
    OnVerticalAxis,
    Straight,
}

#[derive(Debug, Clone, Copy)]
pub struct Router {
    modulus: DenseModulus,
    kind: TreeKind,
    tables: RouteTables,
}

impl Router {
    pub fn new(k: u32, kind: TreeKind) -> Result<Router, RouteError> {
        if kind == TreeKind::Red {
            return Err(RouteError::UnsupportedTree(kind));
        }
        Ok(Router {
            modulus: DenseModulus::new(k)?,
            kind,
            tables: RouteTables::Amended,
        })
    }

    pub fn with_tables(mut self, tables: RouteTables) -> Router {
        self.tables = tables;
        self
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn modulus(&self) -> &DenseModulus {
        &self.modulus
    }

    /// Longest possible route: the tree depth `2k`.
    pub fn hop_limit(&self) -> u32 {
        2 * self.modulus.k()
    }

    fn check(&self, v: Node) -> Result<(), RouteError> {
        if self.modulus.contains(v) {
            Ok(())
        } else {
            Err(RouteError::NotANode { node: v, k: self.modulus.k() })
        }
    }

    fn amended_red_prime(&self) -> bool {
        self.tables == RouteTables::Amended && self.kind == TreeKind::RedPrime
    }

    fn source_direction(&self, dm: Node) -> Direction {
        let k = self.modulus.k() as i64;
        let black = self.kind == TreeKind::Black;
        if self.amended_red_prime() {
            if dm == Node::new(k, 0) {
                return Direction::S;
            }
            if dm == Node::new(0, k) {
                return Direction::W;
            }
        }
        let product = dm.re * dm.im;
        match () {
            _ if product > 0 => if black { Direction::N } else { Direction::W },
            _ if product < 0 => if black { Direction::E } else { Direction::S },
            _ if dm.im == 0 => if black { Direction::E } else { Direction::W },
            _ => if black { Direction::N } else { Direction::S },
        }
    }

    fn transit_rule(&self, tm: Node, dm: Node) -> Turn {
        let k = self.modulus.k() as i64;
        if self.amended_red_prime() && dm == Node::new(k, 0) {
            return Turn::Straight;
        }
        let matches = |t: i64, d: i64| t == d || t == d + k + 1 || t == d - k;
        let horizontal = tm.im == 0 && matches(tm.re, dm.re);
        let vertical = tm.re == 0 && matches(tm.im, dm.im);
        debug_assert!(!(horizontal && vertical), "both turn rules fire at {tm} for {dm}");
        if self.tables == RouteTables::Amended {
            // the location column: closed quadrants of the mapped destination
            let product = dm.re * dm.im;
            let black = self.kind == TreeKind::Black;
            debug_assert!(!horizontal || (if black { product <= 0 } else { product >= 0 }));
            debug_assert!(!vertical || (if black { product >= 0 } else { product <= 0 }));
        }
        if horizontal {
            Turn::OnHorizontalAxis
        } else if vertical {
            Turn::OnVerticalAxis
        } else {
            Turn::Straight
        }
    }

    /// Builds the header at the source. `hops` starts at 0.
    pub fn source_route(&self, s: Node, d: Node) -> Result<MessageHeader, RouteError> {
        self.check(s)?;
        self.check(d)?;
        if s == d {
            return Err(RouteError::SelfRoute(s));
        }
        let mapped_dest = self.modulus.sub(d, s);
        Ok(MessageHeader {
            source: s,
            mapped_dest,
            dir: self.source_direction(mapped_dest),
            hops: 0,
        })
    }

    /// Handles a message arriving at the non-source node `t`.
    pub fn transit_step(&self, header: &MessageHeader, t: Node) -> Result<Transit, RouteError> {
        self.check(t)?;
        if t == header.source {
            return Err(RouteError::ReturnedToSource(t));
        }
        let tm = self.modulus.sub(t, header.source);
        if tm == header.mapped_dest {
            return Ok(Transit::Accept);
        }
        let dir = match self.transit_rule(tm, header.mapped_dest) {
            Turn::OnHorizontalAxis => Direction::S,
            Turn::OnVerticalAxis => Direction::E,
            Turn::Straight => header.dir,
        };
        let hops = header.hops + 1;
        if hops > self.hop_limit() {
            return Err(RouteError::HopLimitExceeded {
                limit: self.hop_limit(),
                at: t,
                header: *header,
            });
        }
        Ok(Transit::Forward {
            header: MessageHeader { dir, hops, ..*header },
            next: step(t, dir, &self.modulus),
        })
    }

    /// Every node visited together with the header it received; the source
    /// is paired with the header it created.
    pub fn trace(&self, s: Node, d: Node) -> Result<Vec<(Node, MessageHeader)>, RouteError> {
        let first = self.source_route(s, d)?;
        let mut hops = vec![(s, first)];
        let mut header = MessageHeader { hops: 1, ..first };
        let mut at = step(s, first.dir, &self.modulus);
        loop {
            hops.push((at, header));
            match self.transit_step(&header, at)? {
                Transit::Accept => return Ok(hops),
                Transit::Forward { header: h, next } => {
                    header = h;
                    at = next;
                }
            }
        }
    }

    /// The node sequence `[s, …, d]`.
    pub fn simulate(&self, s: Node, d: Node) -> Result<Vec<Node>, RouteError> {
        Ok(self.trace(s, d)?.into_iter().map(|(n, _)| n).collect())
    }
}

pub fn source_route(k: u32, s: Node, d: Node, kind: TreeKind) -> Result<MessageHeader, RouteError> {
    Router::new(k, kind)?.source_route(s, d)
}

pub fn transit_step(k: u32, header: &MessageHeader, t: Node, kind: TreeKind) -> Result<Transit, RouteError> {
    Router::new(k, kind)?.transit_step(header, t)
}

pub fn simulate_route(net: &Network, s: Node, d: Node, kind: TreeKind) -> Result<Vec<Node>, RouteError> {
    Router::new(net.k(), kind)?.simulate(s, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(re: i64, im: i64) -> Node {
        Node::new(re, im)
    }

    #[test]
    fn source_table() {
        let dir = |d: Node, kind| source_route(2, Node::ORIGIN, d, kind).unwrap().dir;
        assert_eq!(dir(n(1, 1), TreeKind::Black), Direction::N);
        assert_eq!(dir(n(1, 1), TreeKind::RedPrime), Direction::W);
        assert_eq!(dir(n(-2, 0), TreeKind::Black), Direction::E);
        assert_eq!(dir(n(1, -1), TreeKind::Black), Direction::E);
        assert_eq!(dir(n(1, -1), TreeKind::RedPrime), Direction::S);
        assert_eq!(dir(n(0, -1), TreeKind::Black), Direction::N);
        assert_eq!(dir(n(0, -1), TreeKind::RedPrime), Direction::S);
        assert_eq!(dir(n(-1, 0), TreeKind::RedPrime), Direction::W);
        assert_eq!(
            source_route(2, Node::ORIGIN, Node::ORIGIN, TreeKind::Black),
            Err(RouteError::SelfRoute(Node::ORIGIN))
        );
        assert_eq!(
            source_route(2, Node::ORIGIN, n(1, 0), TreeKind::Red).unwrap_err(),
            RouteError::UnsupportedTree(TreeKind::Red)
        );
        let h = source_route(2, n(1, 0), n(2, 0), TreeKind::Black).unwrap();
        assert_eq!((h.mapped_dest, h.hops), (n(1, 0), 0));
    }

    #[test]
    fn corner_rows() {
        for k in 1..=6u32 {
            let kk = k as i64;
            let amended = Router::new(k, TreeKind::RedPrime).unwrap();
            let printed = amended.with_tables(RouteTables::Printed);
            let at = |r: &Router, d| r.source_route(Node::ORIGIN, d).unwrap().dir;
            assert_eq!(at(&amended, n(kk, 0)), Direction::S);
            assert_eq!(at(&amended, n(0, kk)), Direction::W);
            assert_eq!(at(&printed, n(kk, 0)), Direction::W);
            assert_eq!(at(&printed, n(0, kk)), Direction::S);
        }
    }

    #[test]
    fn transit_examples() {
        let black = Router::new(2, TreeKind::Black).unwrap();
        let red = Router::new(2, TreeKind::RedPrime).unwrap();
        let hdr = black.source_route(Node::ORIGIN, n(1, 1)).unwrap();
        assert_eq!(
            black.transit_step(&MessageHeader { hops: 1, ..hdr }, n(0, 1)).unwrap(),
            Transit::Forward {
                header: MessageHeader { dir: Direction::E, hops: 2, ..hdr },
                next: n(1, 1)
            }
        );
        let hdr = red.source_route(Node::ORIGIN, n(1, 1)).unwrap();
        match red.transit_step(&MessageHeader { hops: 1, ..hdr }, n(-1, 0)).unwrap() {
            Transit::Forward { header, next } => {
                assert_eq!(header.dir, Direction::S);
                assert_eq!(next, n(-1, -1));
            }
            other => panic!("{other:?}"),
        }
        let hdr = black.source_route(Node::ORIGIN, n(-2, 0)).unwrap();
        match black.transit_step(&MessageHeader { hops: 1, ..hdr }, n(1, 0)).unwrap() {
            Transit::Forward { header, next } => {
                assert_eq!(header.dir, Direction::S);
                assert_eq!(next, n(1, -1));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(black.transit_step(&hdr, n(-2, 0)).unwrap(), Transit::Accept);
        assert_eq!(
            black.transit_step(&hdr, Node::ORIGIN),
            Err(RouteError::ReturnedToSource(Node::ORIGIN))
        );
    }

    #[test]
    fn hop_limit_is_enforced() {
        let black = Router::new(2, TreeKind::Black).unwrap();
        let hdr = MessageHeader { hops: 4, ..black.source_route(Node::ORIGIN, n(1, 1)).unwrap() };
        assert!(matches!(
            black.transit_step(&hdr, n(2, 0)),
            Err(RouteError::HopLimitExceeded { limit: 4, .. })
        ));
    }

    #[test]
    fn route_examples() {
        let net = Network::build(2).unwrap();
        let route = |d, kind| simulate_route(&net, Node::ORIGIN, d, kind).unwrap();
        assert_eq!(route(n(1, 1), TreeKind::Black), vec![n(0, 0), n(0, 1), n(1, 1)]);
        assert_eq!(
            route(n(1, 1), TreeKind::RedPrime),
            vec![n(0, 0), n(-1, 0), n(-1, -1), n(1, 1)]
        );
        assert_eq!(
            route(n(-2, 0), TreeKind::Black),
            vec![n(0, 0), n(1, 0), n(1, -1), n(-2, 0)]
        );
        assert_eq!(
            route(n(2, 0), TreeKind::RedPrime),
            vec![n(0, 0), n(0, -1), n(0, -2), n(2, 0)]
        );
    }

    #[test]
    fn printed_tables_lose_the_corners() {
        let net = Network::build(3).unwrap();
        let printed = Router::new(3, TreeKind::RedPrime).unwrap().with_tables(RouteTables::Printed);
        assert!(matches!(
            printed.simulate(Node::ORIGIN, n(3, 0)),
            Err(RouteError::HopLimitExceeded { .. })
        ));
        assert!(matches!(
            printed.simulate(Node::ORIGIN, n(0, 3)),
            Err(RouteError::HopLimitExceeded { .. })
        ));
        assert!(printed.simulate(Node::ORIGIN, n(1, 1)).is_ok());
        assert_eq!(simulate_route(&net, n(1, 0), n(1, 0), TreeKind::Black), Err(RouteError::SelfRoute(n(1, 0))));
    }

    #[test]
    fn wire_format() {
        let h = MessageHeader {
            source: n(-3, 2),
            mapped_dest: n(1, -4),
            dir: Direction::S,
            hops: 7,
        };
        let bytes = h.to_wire().unwrap();
        assert_eq!(bytes, [0xfd, 0xff, 2, 0, 1, 0, 0xfc, 0xff, 3, 0, 7, 0]);
        assert_eq!(MessageHeader::from_wire(&bytes).unwrap(), h);
        assert!(MessageHeader::from_wire(&bytes[..10]).is_err());
        let mut bad = bytes;
        bad[8] = 9;
        assert!(MessageHeader::from_wire(&bad).is_err());
        let huge = MessageHeader { source: n(40_000, 0), ..h };
        assert!(matches!(huge.to_wire(), Err(RouteError::WireOverflow { field: "s1", .. })));
    }

    proptest! {
        #[test]
        fn wire_round_trip(s1 in any::<i16>(), s2 in any::<i16>(), d1 in any::<i16>(), d2 in any::<i16>(),
                           dir in 0i64..4, hops in 0u32..=(i16::MAX as u32)) {
            let h = MessageHeader {
                source: n(s1 as i64, s2 as i64),
                mapped_dest: n(d1 as i64, d2 as i64),
                dir: Direction::from_code(dir).unwrap(),
                hops,
            };
            prop_assert_eq!(MessageHeader::from_wire(&h.to_wire().unwrap()).unwrap(), h);
        }
    }
}
