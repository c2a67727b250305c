use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::planar::{VertexId, WeightedGraph};
use crate::{Error, Result};

/// Tree decomposition; `parent[root]` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted vertex sets.
    pub bags: Vec<Vec<VertexId>>,
    pub parent: Vec<Option<usize>>,
    pub width: usize,
}

fn neighbour_sets(h: &WeightedGraph) -> Vec<BTreeSet<VertexId>> {
    let mut adj = vec![BTreeSet::new(); h.num_vertices()];
    for &(u, v, _) in &h.edges {
        if u != v {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    adj
}

impl TreeDecomposition {
    /// Decomposition from eliminating vertices in `order`.
    pub fn from_elimination_order(h: &WeightedGraph, order: &[VertexId]) -> Result<Self> {
        let n = h.num_vertices();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::Invalid("elimination order is not a permutation".into()));
            }
            pos[v] = i;
        }
        if order.len() != n {
            return Err(Error::Invalid("elimination order is not a permutation".into()));
        }
        let mut adj = neighbour_sets(h);
        let mut bags = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        for (i, &v) in order.iter().enumerate() {
            let nb: Vec<VertexId> = adj[v].iter().copied().collect();
            for (a, &x) in nb.iter().enumerate() {
                adj[x].remove(&v);
                for &y in &nb[a + 1..] {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
            parent[i] = nb.iter().map(|&x| pos[x]).min();
            let mut bag = nb;
            bag.push(v);
            bag.sort_unstable();
            bags.push(bag);
        }
        // join the trees of a forest under the last bag
        if n > 0 {
            for p in parent.iter_mut().take(n - 1) {
                if p.is_none() {
                    *p = Some(n - 1);
                }
            }
        }
        let width = bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1);
        let td = TreeDecomposition { bags, parent, width };
        td.validate(h)?;
        Ok(td)
    }

    /// Greedy min-fill elimination: fewest fill edges, then lowest degree,
    /// then lowest id.
    pub fn min_fill(h: &WeightedGraph) -> Result<Self> {
        let n = h.num_vertices();
        let mut adj = neighbour_sets(h);
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| {
                    let nb: Vec<VertexId> = adj[v].iter().copied().collect();
                    let mut fill = 0usize;
                    for (a, &x) in nb.iter().enumerate() {
                        fill += nb[a + 1..].iter().filter(|y| !adj[x].contains(y)).count();
                    }
                    (fill, nb.len(), v)
                })
                .expect("a vertex is left");
            let nb: Vec<VertexId> = adj[v].iter().copied().collect();
            for (a, &x) in nb.iter().enumerate() {
                adj[x].remove(&v);
                for &y in &nb[a + 1..] {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
            alive[v] = false;
            order.push(v);
        }
        Self::from_elimination_order(h, &order)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(|p| p.is_none())
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                out[*p].push(i);
            }
        }
        out
    }

    /// Checks the tree shape and the three decomposition axioms.
    pub fn validate(&self, h: &WeightedGraph) -> Result<()> {
        let bad = |m: &str| Err(Error::InvariantViolation(format!("tree decomposition: {m}")));
        let m = self.len();
        if self.parent.len() != m {
            return bad("parent list length");
        }
        if m == 0 {
            return if h.num_vertices() == 0 { Ok(()) } else { bad("no bags") };
        }
        if self.parent.iter().filter(|p| p.is_none()).count() != 1 {
            return bad("not exactly one root");
        }
        // every node reaches the root
        for i in 0..m {
            let mut x = i;
            let mut steps = 0;
            while let Some(p) = self.parent[x] {
                x = p;
                steps += 1;
                if steps > m || p >= m {
                    return bad("parent pointers do not form a tree");
                }
            }
        }
        let n = h.num_vertices();
        let mut holders = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return bad("unknown vertex in a bag");
                }
                holders[v].push(i);
            }
        }
        if let Some(v) = (0..n).find(|&v| holders[v].is_empty()) {
            return bad(&format!("vertex {v} in no bag"));
        }
        for &(u, v, _) in &h.edges {
            if !holders[u].iter().any(|&i| self.bags[i].binary_search(&v).is_ok()) {
                return bad(&format!("edge {u}-{v} in no bag"));
            }
        }
        // bags holding v are connected: exactly one of them has its parent
        // outside the set
        for (v, hs) in holders.iter().enumerate() {
            let tops = hs
                .iter()
                .filter(|&&i| self.parent[i].is_none_or(|p| self.bags[p].binary_search(&v).is_err()))
                .count();
            if tops != 1 {
                return bad(&format!("bags of vertex {v} are disconnected"));
            }
        }
        let w = self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1);
        if w != self.width {
            return bad("width field");
        }
        Ok(())
    }
}
