use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{EdgeId, VertexId};
use crate::Cost;

/// Vertex-weighted multigraph without an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    pub weights: Vec<u64>,
    pub edges: Vec<(VertexId, VertexId, Cost)>,
}

impl WeightedGraph {
    pub fn new(weights: Vec<u64>, edges: Vec<(VertexId, VertexId, Cost)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v, _)| u < weights.len() && v < weights.len()));
        WeightedGraph { weights, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.weights.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn total_cost(&self) -> Cost {
        self.edges.iter().fold(Cost::zero(), |a, e| a + e.2)
    }

    /// Cost of the edges with exactly one endpoint in `side`.
    pub fn cut_cost(&self, side: &[bool]) -> Cost {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| side[u] != side[v])
            .fold(Cost::zero(), |a, e| a + e.2)
    }

    pub fn side_weight(&self, side: &[bool]) -> u64 {
        self.weights.iter().zip(side).filter(|(_, s)| **s).map(|(w, _)| w).sum()
    }

    /// Incident edge ids per vertex, in edge order (self-loops listed once).
    pub fn adjacency(&self) -> Vec<Vec<EdgeId>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            adj[u].push(i);
            if v != u {
                adj[v].push(i);
            }
        }
        adj
    }

    /// Component index per vertex using only edges where `keep[e]`.
    pub fn components(&self, keep: &[bool]) -> (usize, Vec<usize>) {
        let mut dsu = Dsu::new(self.num_vertices());
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            if keep[i] {
                dsu.union(u, v);
            }
        }
        dsu.labels()
    }

    /// Subgraph without the edges marked in `drop`, vertices unchanged.
    pub fn without_edges(&self, drop: &[bool]) -> (WeightedGraph, Vec<EdgeId>) {
        let kept: Vec<EdgeId> = (0..self.num_edges()).filter(|&e| !drop[e]).collect();
        let edges = kept.iter().map(|&e| self.edges[e]).collect();
        (WeightedGraph::new(self.weights.clone(), edges), kept)
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Labels components `0..k` in order of their smallest member.
    pub(crate) fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut k = 0;
        for v in 0..n {
            let r = self.find(v);
            if label[r] == usize::MAX {
                label[r] = k;
                k += 1;
            }
            out[v] = label[r];
        }
        (k, out)
    }
}

/// Result of contracting an edge set.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: WeightedGraph,
    /// New vertex of every original vertex.
    pub vertex_map: Vec<VertexId>,
    /// Original vertices absorbed by each new vertex, ascending.
    pub members: Vec<Vec<VertexId>>,
    /// Original id of each surviving edge.
    pub edge_origin: Vec<EdgeId>,
}

impl Contraction {
    /// Expands a side indicator on the contracted graph to the original.
    pub fn lift_side(&self, side: &[bool]) -> Vec<bool> {
        self.vertex_map.iter().map(|&v| side[v]).collect()
    }
}

/// Merges the endpoints of every edge with `contract[e]`. Merged weights add
/// up; self-loops that arise are deleted. Contraction ignores the embedding.
pub fn contract_edges(g: &WeightedGraph, contract: &[bool]) -> Contraction {
    let (k, vertex_map) = g.components(contract);
    let mut weights = vec![0u64; k];
    let mut members = vec![Vec::new(); k];
    for (v, &c) in vertex_map.iter().enumerate() {
        weights[c] += g.weights[v];
        members[c].push(v);
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (i, &(u, v, c)) in g.edges.iter().enumerate() {
        let (a, b) = (vertex_map[u], vertex_map[v]);
        if a != b {
            edges.push((a, b, c));
            edge_origin.push(i);
        }
    }
    Contraction {
        graph: WeightedGraph::new(weights, edges),
        vertex_map,
        members,
        edge_origin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::int;

    fn square() -> WeightedGraph {
        WeightedGraph::new(vec![1, 1, 1, 1], (0..4).map(|i| (i, (i + 1) % 4, int(1))).collect())
    }

    #[test]
    fn one_edge_gives_triangle() {
        let c = contract_edges(&square(), &[true, false, false, false]);
        assert_eq!(c.graph.num_vertices(), 3);
        assert_eq!(c.graph.num_edges(), 3);
        assert_eq!(c.graph.weights, [2, 1, 1]);
    }

    #[test]
    fn all_edges_give_single_vertex() {
        let c = contract_edges(&square(), &[true; 4]);
        assert_eq!(c.graph.num_vertices(), 1);
        assert_eq!(c.graph.num_edges(), 0);
        assert_eq!(c.members, [vec![0, 1, 2, 3]]);
    }

    #[test]
    fn weights_add() {
        let g = WeightedGraph::new(vec![2, 3], vec![(0, 1, int(1))]);
        assert_eq!(contract_edges(&g, &[true]).graph.weights, [5]);
    }

    #[test]
    fn cut_cost_counts_crossing_edges() {
        assert_eq!(square().cut_cost(&[true, true, false, false]), int(2));
    }
}
