//! Embedded planar multigraphs and the predicates built on them.

mod contract;
mod crossing;
mod cut_cycles;
mod cycle;
mod enclosure;
mod graph;
pub mod paths;
mod region;

pub(crate) use contract::Dsu;
pub use contract::{contract_edges, Contraction, WeightedGraph};
pub use crossing::{cycles_cross, self_crosses, walks_cross};
pub use cut_cycles::{bipartition_to_cut_cycles, cycles_to_bipartition, order_dart_set};
pub use cycle::Cycle;
pub use enclosure::{enclosed_edges, enclosed_faces, enclosed_weight, encloses};
pub use graph::{Dart, Edge, EdgeId, EmbeddedGraph, FaceId, VertexId};
pub use region::{FaceKind, RegionGraph, RegionTree};

#[cfg(test)]
pub(crate) use graph::fixtures;
