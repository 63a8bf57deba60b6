//! Dense Gaussian networks `G_k`, a pair of edge-disjoint node-independent
//! spanning trees on them, and stateless routing along those trees.

pub mod cli;
pub mod export;
pub mod gaussian;
pub mod network;
pub mod protocols;
pub mod router;
pub mod suite;
pub mod symmetry;
pub mod trees;
pub mod verifier;

pub use gaussian::{ArithmeticError, DenseModulus, GInt, Node};
pub use network::{Axis, Edge, Network, NetworkError};
pub use protocols::{FaultSpec, Packet, ProtocolError};
pub use router::{Direction, MessageHeader, RouteError, RouteTables, Router};
pub use symmetry::{Symmetry, SymmetryWord};
pub use trees::{SpanningTree, Subgraph, TreeError, TreeKind};
