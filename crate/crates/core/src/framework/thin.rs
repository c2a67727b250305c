use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::planar::WeightedGraph;
use crate::{Cost, Error, Result};

/// One residue class of BFS levels removed.
#[derive(Clone, Debug)]
pub struct Thinning {
    pub k: usize,
    /// BFS level per vertex; each component is searched from its lowest id.
    pub levels: Vec<usize>,
    /// Level of an edge: the smaller level of its endpoints.
    pub edge_levels: Vec<usize>,
    pub class_costs: Vec<Cost>,
    pub residue: usize,
    /// Deleted edges `S`.
    pub deleted: Vec<bool>,
    pub cost: Cost,
    pub total_cost: Cost,
    /// Component of every vertex after deletion.
    pub components: Vec<usize>,
    pub num_components: usize,
    /// Most BFS levels met by one component.
    pub max_span: usize,
}

pub fn thin(h: &WeightedGraph, k: usize) -> Result<Thinning> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let n = h.num_vertices();
    let adj = h.adjacency();
    let mut levels = vec![usize::MAX; n];
    for root in 0..n {
        if levels[root] != usize::MAX {
            continue;
        }
        levels[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            for &e in &adj[v] {
                let (a, b, _) = h.edges[e];
                let w = if a == v { b } else { a };
                if levels[w] == usize::MAX {
                    levels[w] = levels[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    let edge_levels: Vec<usize> = h.edges.iter().map(|&(u, v, _)| levels[u].min(levels[v])).collect();
    let mut class_costs = vec![Cost::zero(); k];
    for (e, &l) in edge_levels.iter().enumerate() {
        class_costs[l % k] += h.edges[e].2;
    }
    let residue = (0..k)
        .min_by(|&a, &b| class_costs[a].cmp(&class_costs[b]).then(a.cmp(&b)))
        .unwrap();
    let deleted: Vec<bool> = edge_levels.iter().map(|&l| l % k == residue).collect();
    let cost = class_costs[residue];
    let total_cost = h.total_cost();
    if cost * Cost::from_integer(k as i128) > total_cost {
        return Err(Error::InvariantViolation(format!("c(S) = {cost} exceeds c(H)/{k}")));
    }
    let keep: Vec<bool> = deleted.iter().map(|d| !d).collect();
    let (num_components, components) = h.components(&keep);
    let mut lo = vec![usize::MAX; num_components];
    let mut hi = vec![0; num_components];
    for v in 0..n {
        let c = components[v];
        lo[c] = lo[c].min(levels[v]);
        hi[c] = hi[c].max(levels[v]);
    }
    let max_span = (0..num_components).map(|c| hi[c] - lo[c] + 1).max().unwrap_or(0);
    if max_span > k + 1 {
        return Err(Error::InvariantViolation(format!(
            "component spans {max_span} levels, k = {k}"
        )));
    }
    Ok(Thinning {
        k,
        levels,
        edge_levels,
        class_costs,
        residue,
        deleted,
        cost,
        total_cost,
        components,
        num_components,
        max_span,
    })
}
