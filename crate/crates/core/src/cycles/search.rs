//! Weight-exact cheapest cycle search.
//!
//! States are `(vertex, label sum)`. A Dijkstra pass from the root gives the
//! cheapest walk reaching each state; reversed, that is an admissible
//! estimate for closing a partial path, so a best-first search over simple
//! paths returns the cheapest simple cycle through the root with a given
//! label sum that passes an arbitrary acceptance test.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::planar::{Dart, EmbeddedGraph, VertexId};
use crate::{Error, Result};

pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Clone)]
pub struct LabelSearch<'a> {
    g: &'a EmbeddedGraph,
    costs: &'a [u64],
    labels: &'a [i64],
    vertex_ok: Vec<bool>,
    edge_ok: Vec<bool>,
    bound: i64,
    budget: usize,
    cost_limit: Option<u64>,
}

/// Cheapest walk cost from the root to every reachable state.
#[derive(Clone, Debug)]
pub struct SumDistances {
    pub root: VertexId,
    bound: i64,
    width: usize,
    dist: Vec<u64>,
}

impl SumDistances {
    fn slot(&self, v: VertexId, s: i64) -> Option<usize> {
        (s.abs() <= self.bound).then(|| v * self.width + (s + self.bound) as usize)
    }

    pub fn get(&self, v: VertexId, s: i64) -> Option<u64> {
        self.slot(v, s).map(|i| self.dist[i]).filter(|&c| c != u64::MAX)
    }

    /// Cheapest closed walk through the root with label sum `s`.
    pub fn closed(&self, s: i64) -> Option<u64> {
        self.get(self.root, s)
    }

    /// `(label sum, cost)` of the cheapest closed walks through the root.
    pub fn closed_walks(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        let base = self.root * self.width;
        self.dist[base..base + self.width]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != u64::MAX)
            .map(|(i, &c)| (i as i64 - self.bound, c))
    }
}

/// Search tree entry: a path is the chain of darts up to the root.
struct Step {
    parent: usize,
    dart: Option<Dart>,
}

impl<'a> LabelSearch<'a> {
    pub fn new(g: &'a EmbeddedGraph, costs: &'a [u64], labels: &'a [i64]) -> Self {
        let bound = (0..g.num_edges()).map(|e| labels[2 * e].abs()).sum();
        LabelSearch {
            g,
            costs,
            labels,
            vertex_ok: vec![true; g.num_vertices()],
            edge_ok: vec![true; g.num_edges()],
            bound,
            budget: DEFAULT_BUDGET,
            cost_limit: None,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// Drops walks costlier than `limit` from the distance pass.
    pub fn with_cost_limit(mut self, limit: u64) -> Self {
        self.cost_limit = Some(limit);
        self
    }

    /// Restricts the search to edges with `ok[e]`.
    pub fn with_edges(mut self, ok: &[bool]) -> Self {
        self.edge_ok = ok.to_vec();
        self.bound = (0..self.g.num_edges())
            .filter(|&e| ok[e])
            .map(|e| self.labels[2 * e].abs())
            .sum();
        self
    }

    /// Restricts the search to vertices with `ok[v]`.
    pub fn with_vertices(mut self, ok: Vec<bool>) -> Self {
        self.vertex_ok = ok;
        self
    }

    fn usable(&self, d: Dart) -> bool {
        self.edge_ok[d.edge()] && self.vertex_ok[self.g.head(d)]
    }

    pub fn distances(&self, root: VertexId) -> SumDistances {
        let width = 2 * self.bound as usize + 1;
        let mut out = SumDistances {
            root,
            bound: self.bound,
            width,
            dist: vec![u64::MAX; width * self.g.num_vertices()],
        };
        let mut heap = BinaryHeap::new();
        if self.vertex_ok[root] {
            let i = out.slot(root, 0).unwrap();
            out.dist[i] = 0;
            heap.push(Reverse((0u64, root, 0i64)));
        }
        while let Some(Reverse((c, v, s))) = heap.pop() {
            if out.get(v, s) != Some(c) {
                continue;
            }
            for &d in self.g.rotation(v) {
                if !self.usable(d) {
                    continue;
                }
                let ns = s + self.labels[d.index()];
                let nc = c + self.costs[d.edge()];
                if self.cost_limit.is_some_and(|l| nc > l) {
                    continue;
                }
                let h = self.g.head(d);
                let Some(i) = out.slot(h, ns) else { continue };
                if nc < out.dist[i] {
                    out.dist[i] = nc;
                    heap.push(Reverse((nc, h, ns)));
                }
            }
        }
        out
    }

    /// Cheapest simple cycle through `dist.root` whose label sum is `target`
    /// and that `accept` approves; ties go to the path generated first.
    /// Paths costlier than `cap` are pruned.
    pub fn cheapest_cycle(
        &self,
        dist: &SumDistances,
        target: i64,
        cap: Option<u64>,
        accept: &mut dyn FnMut(&[Dart]) -> bool,
    ) -> Result<Option<(u64, Vec<Dart>)>> {
        let root = dist.root;
        let Some(h0) = dist.closed(-target) else {
            return Ok(None);
        };
        if cap.is_some_and(|c| h0 > c) {
            return Ok(None);
        }
        let n = self.g.num_vertices();
        let mut steps = vec![Step {
            parent: usize::MAX,
            dart: None,
        }];
        // (f, seq, g, sum, step, complete)
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((h0, 0usize, 0u64, 0i64, 0usize, false)));
        let mut seq = 1usize;
        let mut on_path = vec![false; n];
        let mut path = Vec::new();
        let mut expanded = 0usize;
        let collect = |steps: &[Step], mut i: usize, out: &mut Vec<Dart>| {
            out.clear();
            while let Some(d) = steps[i].dart {
                out.push(d);
                i = steps[i].parent;
            }
            out.reverse();
        };
        while let Some(Reverse((_, _, g0, sum, step, complete))) = heap.pop() {
            collect(&steps, step, &mut path);
            if complete {
                if accept(&path) {
                    return Ok(Some((g0, path)));
                }
                continue;
            }
            expanded += 1;
            if expanded > self.budget {
                return Err(Error::SearchBudget(self.budget));
            }
            for d in &path {
                on_path[self.g.head(*d)] = true;
            }
            let v = path.last().map_or(root, |&d| self.g.head(d));
            for &d in self.g.rotation(v) {
                if !self.usable(d) {
                    continue;
                }
                let h = self.g.head(d);
                let ns = sum + self.labels[d.index()];
                let ng = g0 + self.costs[d.edge()];
                if cap.is_some_and(|c| ng > c) {
                    continue;
                }
                let f = if h == root {
                    if ns != target || path.last().is_some_and(|l| l.edge() == d.edge()) {
                        continue;
                    }
                    ng
                } else {
                    if on_path[h] {
                        continue;
                    }
                    let Some(est) = dist.get(h, ns - target) else {
                        continue;
                    };
                    if cap.is_some_and(|c| ng + est > c) {
                        continue;
                    }
                    ng + est
                };
                steps.push(Step {
                    parent: step,
                    dart: Some(d),
                });
                heap.push(Reverse((f, seq, ng, ns, steps.len() - 1, h == root)));
                seq += 1;
            }
            for d in &path {
                on_path[self.g.head(*d)] = false;
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::DartWeightLabels;
    use crate::planar::fixtures::square;

    #[test]
    fn square_dual_pair_of_parallel_edges() {
        let primal = square();
        let dual = primal.dualize().with_outer_face(1).unwrap();
        let dual = dual.with_face_weights(alloc::vec![1, 0, 0, 0]).unwrap();
        let labels = DartWeightLabels::new(&dual).unwrap();
        let costs = [1, 1, 1, 1];
        let s = LabelSearch::new(&dual, &costs, labels.labels());
        let dist = s.distances(0);
        let (c, darts) = s.cheapest_cycle(&dist, 1, None, &mut |_| true).unwrap().unwrap();
        assert_eq!(c, 2);
        assert_eq!(darts.len(), 2);
        assert_eq!(labels.sum(&darts), 1);
    }
}
