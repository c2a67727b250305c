//! Shortest paths over integer-scaled costs.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::{Dart, EmbeddedGraph, VertexId};

/// Shortest-path tree from a root. Ties between equally short parents go to
/// the smaller dart id.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub root: VertexId,
    pub dist: Vec<Option<u64>>,
    pub parent: Vec<Option<Dart>>,
}

impl ShortestPaths {
    /// Darts of the tree path from the root to `v`.
    pub fn path_to(&self, g: &EmbeddedGraph, mut v: VertexId) -> Option<Vec<Dart>> {
        self.dist[v]?;
        let mut out = Vec::new();
        while let Some(d) = self.parent[v] {
            out.push(d);
            v = g.tail(d);
        }
        out.reverse();
        Some(out)
    }
}

/// Dijkstra over darts whose edge passes `allowed` (all edges if `None`).
pub fn dijkstra(g: &EmbeddedGraph, costs: &[u64], root: VertexId, allowed: Option<&[bool]>) -> ShortestPaths {
    let n = g.num_vertices();
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut parent: Vec<Option<Dart>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[root] = Some(0);
    heap.push(Reverse((0u64, root)));
    while let Some(Reverse((du, u))) = heap.pop() {
        if done[u] || dist[u] != Some(du) {
            continue;
        }
        done[u] = true;
        for &d in g.rotation(u) {
            if allowed.is_some_and(|a| !a[d.edge()]) {
                continue;
            }
            let v = g.head(d);
            if done[v] {
                continue;
            }
            let nd = du + costs[d.edge()];
            let better = match dist[v] {
                None => true,
                Some(old) => nd < old || (nd == old && parent[v].is_some_and(|p| d < p)),
            };
            if better {
                if dist[v] != Some(nd) {
                    heap.push(Reverse((nd, v)));
                }
                dist[v] = Some(nd);
                parent[v] = Some(d);
            }
        }
    }
    ShortestPaths { root, dist, parent }
}

/// All-pairs distances restricted to allowed edges.
pub fn all_pairs(g: &EmbeddedGraph, costs: &[u64], allowed: Option<&[bool]>) -> Vec<Vec<Option<u64>>> {
    (0..g.num_vertices())
        .map(|r| dijkstra(g, costs, r, allowed).dist)
        .collect()
}
