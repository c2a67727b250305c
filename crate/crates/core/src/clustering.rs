//! Prize-collecting clustering by moat growing, and well-connected cover
//! graphs built from it.
//!
//! Every vertex starts as a cluster whose budget is its potential. Active
//! clusters grow their moats at unit rate and spend budget at the same
//! rate; an edge is bought once the moats at its two ends cover its cost,
//! merging the clusters and pooling what is left of their budgets. A cluster
//! whose budget runs out goes inactive. Afterwards, inactive clusters that
//! hang off the bought forest by a single edge are pruned, latest first.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cover::DoubleCover;
use crate::planar::{contract_edges, Contraction, Dsu, EdgeId, VertexId, WeightedGraph};
use crate::{Cost, Error, Result};

/// Graph with nonnegative vertex potentials (weights of `graph` unused).
#[derive(Clone, Debug)]
pub struct PotentialGraph {
    pub graph: WeightedGraph,
    pub potentials: Vec<Cost>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterEvent {
    /// Edge bought at the given time.
    Tight { time: Cost, edge: EdgeId },
    /// Cluster (by its vertices) ran out of budget.
    Inactive { time: Cost, members: Vec<VertexId> },
    /// Edges removed while pruning a dead cluster.
    Pruned { members: Vec<VertexId>, edges: Vec<EdgeId> },
}

#[derive(Clone, Debug)]
pub struct Clustering {
    /// Kept edges, ascending.
    pub z: Vec<EdgeId>,
    pub cost: Cost,
    pub total_potential: Cost,
    pub events: Vec<ClusterEvent>,
}

impl Clustering {
    pub fn edge_mask(&self, m: usize) -> Vec<bool> {
        let mut out = vec![false; m];
        for &e in &self.z {
            out[e] = true;
        }
        out
    }
}

pub fn pc_cluster(p: &PotentialGraph) -> Result<Clustering> {
    let g = &p.graph;
    let n = g.num_vertices();
    if p.potentials.len() != n || p.potentials.iter().any(|x| *x < Cost::zero()) {
        return Err(Error::Invalid("potentials must be nonnegative, one per vertex".into()));
    }
    if g.edges.iter().any(|e| e.2 < Cost::zero()) {
        return Err(Error::Invalid("edge costs must be nonnegative".into()));
    }
    let mut dsu = Dsu::new(n);
    let mut budget: Vec<Cost> = p.potentials.clone();
    let mut radius = vec![Cost::zero(); n];
    let mut members: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut bought = vec![false; g.num_edges()];
    let mut dead: Vec<Vec<VertexId>> = Vec::new();
    let mut events = Vec::new();
    let mut now = Cost::zero();
    for v in 0..n {
        if budget[v].is_zero() {
            dead.push(vec![v]);
        }
    }

    loop {
        let active: Vec<bool> = (0..n).map(|v| dsu.find(v) == v && !budget[v].is_zero()).collect();
        let rate = |dsu: &mut Dsu, v: usize| if active[dsu.find(v)] { 1i128 } else { 0 };
        // (delta, kind, id): kind 0 = edge, 1 = cluster
        let mut next: Option<(Cost, u8, usize)> = None;
        let mut consider = |cand: (Cost, u8, usize)| {
            if next.as_ref().is_none_or(|n| cand < *n) {
                next = Some(cand);
            }
        };
        for (e, &(u, v, c)) in g.edges.iter().enumerate() {
            let (a, b) = (dsu.find(u), dsu.find(v));
            if a == b {
                continue;
            }
            let r = rate(&mut dsu, u) + rate(&mut dsu, v);
            if r == 0 {
                continue;
            }
            let slack = c - radius[u] - radius[v];
            let slack = if slack < Cost::zero() { Cost::zero() } else { slack };
            consider((slack / Cost::from_integer(r), 0, e));
        }
        for c in 0..n {
            if active[c] {
                consider((budget[c], 1, c));
            }
        }
        let Some((delta, kind, id)) = next else { break };
        now += delta;
        for v in 0..n {
            if active[dsu.find(v)] {
                radius[v] += delta;
            }
        }
        for c in 0..n {
            if active[c] {
                budget[c] -= delta;
            }
        }
        if kind == 0 {
            let (u, v, _) = g.edges[id];
            let (a, b) = (dsu.find(u), dsu.find(v));
            bought[id] = true;
            events.push(ClusterEvent::Tight { time: now, edge: id });
            let pooled = budget[a] + budget[b];
            dsu.union(a, b);
            let root = dsu.find(a);
            let other = if root == a { b } else { a };
            let moved = core::mem::take(&mut members[other]);
            members[root].extend(moved);
            members[root].sort_unstable();
            budget[root] = pooled;
            budget[other] = Cost::zero();
        } else {
            budget[id] = Cost::zero();
            dead.push(members[id].clone());
            events.push(ClusterEvent::Inactive {
                time: now,
                members: members[id].clone(),
            });
        }
    }

    let mut kept = bought;
    for set in dead.iter().rev() {
        let mut inside = vec![false; n];
        for &v in set {
            inside[v] = true;
        }
        let crossing = (0..g.num_edges())
            .filter(|&e| kept[e] && inside[g.edges[e].0] != inside[g.edges[e].1])
            .count();
        if crossing != 1 {
            continue;
        }
        let removed: Vec<EdgeId> = (0..g.num_edges())
            .filter(|&e| kept[e] && (inside[g.edges[e].0] || inside[g.edges[e].1]))
            .collect();
        for &e in &removed {
            kept[e] = false;
        }
        events.push(ClusterEvent::Pruned {
            members: set.clone(),
            edges: removed,
        });
    }
    let z: Vec<EdgeId> = (0..g.num_edges()).filter(|&e| kept[e]).collect();
    let cost = z.iter().fold(Cost::zero(), |a, &e| a + g.edges[e].2);
    let total_potential = p.potentials.iter().fold(Cost::zero(), |a, x| a + x);
    if cost > Cost::from_integer(2) * total_potential {
        return Err(Error::InvariantViolation(
            "clustering costs more than twice the potential".into(),
        ));
    }
    Ok(Clustering {
        z,
        cost,
        total_potential,
        events,
    })
}

/// Boundary lifts of a double cover together with clustering edges.
#[derive(Clone, Debug)]
pub struct WellConnectedCover {
    pub contraction: Contraction,
    pub potentials: Vec<Cost>,
    pub clustering: Clustering,
    /// Cover edges in the well-connected cover graph.
    pub edges: Vec<bool>,
    /// Cover edges that are boundary lifts.
    pub boundary: Vec<bool>,
    /// Component label per cover vertex touched by `edges`.
    pub component: Vec<Option<usize>>,
    pub num_components: usize,
    pub cost: Cost,
}

impl WellConnectedCover {
    /// Edge sets of the components.
    pub fn component_edges(&self, cover: &DoubleCover) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.num_components];
        for (e, &inc) in self.edges.iter().enumerate() {
            if inc {
                let u = cover.graph.edge(e).u;
                out[self.component[u].expect("endpoint of a cover edge")].push(e);
            }
        }
        out
    }
}

pub fn build_well_connected_cover(cover: &DoubleCover, epsilon: Cost) -> Result<WellConnectedCover> {
    if epsilon <= Cost::zero() {
        return Err(Error::Invalid("epsilon must be positive".into()));
    }
    let g = &cover.graph;
    let boundary: Vec<bool> = (0..g.num_edges())
        .map(|e| cover.region.on_boundary[DoubleCover::project_edge(e)])
        .collect();
    let wg = g.to_weighted();
    let contraction = contract_edges(&wg, &boundary);
    let k = contraction.graph.num_vertices();
    let mut contracted_cost = vec![Cost::zero(); k];
    for e in (0..g.num_edges()).filter(|&e| boundary[e]) {
        contracted_cost[contraction.vertex_map[g.edge(e).u]] += g.cost(e);
    }
    let potentials: Vec<Cost> = contracted_cost.iter().map(|&c| c / epsilon).collect();
    let clustering = pc_cluster(&PotentialGraph {
        graph: contraction.graph.clone(),
        potentials: potentials.clone(),
    })?;
    let mut edges = boundary.clone();
    for &e in &clustering.z {
        edges[contraction.edge_origin[e]] = true;
    }
    let mut dsu = Dsu::new(g.num_vertices());
    let mut touched = vec![false; g.num_vertices()];
    for e in (0..g.num_edges()).filter(|&e| edges[e]) {
        let ed = g.edge(e);
        dsu.union(ed.u, ed.v);
        touched[ed.u] = true;
        touched[ed.v] = true;
    }
    let mut label = vec![None; g.num_vertices()];
    let mut roots = Vec::new();
    for v in 0..g.num_vertices() {
        if touched[v] {
            let r = dsu.find(v);
            let i = match roots.iter().position(|&x| x == r) {
                Some(i) => i,
                None => {
                    roots.push(r);
                    roots.len() - 1
                }
            };
            label[v] = Some(i);
        }
    }
    let cost = (0..g.num_edges())
        .filter(|&e| edges[e])
        .fold(Cost::zero(), |a, e| a + g.cost(e));
    Ok(WellConnectedCover {
        contraction,
        potentials,
        clustering,
        edges,
        boundary,
        component: label,
        num_components: roots.len(),
        cost,
    })
}
