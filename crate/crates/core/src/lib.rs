//! Bicriteria approximation scheme for minimum b-bipartition on planar graphs.
//!
//! The crate works on combinatorially embedded planar multigraphs (rotation
//! systems over darts) and their duals. A bipartition of the input graph `G*`
//! is a set of cycles in the dual `G`; the scheme builds a cheap subgraph of
//! `G` (the spanner) that still carries a near-optimal, near-balanced
//! solution, contracts everything else in `G*`, deletes one BFS residue class
//! of edges and solves the rest exactly with a tree-decomposition dynamic
//! program.
//!
//! Modules, bottom-up:
//!
//! - [`planar`]: embedded graphs, duality, enclosure and crossing predicates,
//!   contraction, region trees.
//! - [`cycles`]: weight-exact cycle search, low-ratio cycle selection and
//!   cheapest hole-enclosing cycles via minimum cuts.
//! - [`skeleton`]: the greedy family of non-crossing low-ratio cycles with
//!   splicing.
//! - [`cover`]: cyclic double covers of regions with holes.
//! - [`clustering`]: prize-collecting clustering and well-connected cover
//!   graphs.
//! - [`spanner`]: boundary spanners and the full spanner assembly.
//! - [`framework`]: scaling, contraction, thinning, decomposition, DP,
//!   lifting and the end-to-end solver.
//! - [`harness`]: exact oracles, instance generators and verification.
//!
//! Everything is `no_std` with `alloc`; IO lives in the companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod clustering;
pub mod cost;
pub mod cover;
pub mod cycles;
mod error;
pub mod framework;
pub mod harness;
pub mod planar;
pub mod skeleton;
pub mod spanner;

pub use cost::Cost;
pub use error::{Error, Result};
pub use planar::{Cycle, Dart, EmbeddedGraph, WeightedGraph};
