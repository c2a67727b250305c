//! Distance-preserving shortcuts between boundary vertices.
//!
//! Terminal pairs are taken in nondecreasing order of exact distance; a
//! pair whose distance in the current subgraph exceeds `(1 + eps)` times the
//! exact one gets its shortest path added.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cost::ScaledCosts;
use crate::planar::paths::dijkstra;
use crate::planar::{Dsu, EmbeddedGraph, RegionGraph, VertexId};
use crate::{Cost, Error, Result};

/// Edge set produced by a shortcut construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shortcuts {
    pub edges: Vec<bool>,
    pub cost: Cost,
    /// Cost of the edges the construction started from.
    pub base_cost: Cost,
    pub terminals: Vec<VertexId>,
    /// Pieces the graph was cut into.
    pub pieces: usize,
    pub paths_added: usize,
}

impl Shortcuts {
    /// `cost / base_cost`, `None` for a free base.
    pub fn ratio(&self) -> Option<Cost> {
        (!self.base_cost.is_zero()).then(|| self.cost / self.base_cost)
    }
}

fn within(eps: Cost, d_h: u64, d: u64) -> bool {
    // d_h <= (1 + eps) d, in integers
    let (num, den) = (*eps.numer(), *eps.denom());
    (d_h as i128) * den <= (d as i128) * (den + num)
}

fn mask_cost(g: &EmbeddedGraph, m: &[bool]) -> Cost {
    (0..g.num_edges())
        .filter(|&e| m[e])
        .fold(Cost::zero(), |a, e| a + g.cost(e))
}

/// Greedy over terminal pairs, with exact distances restricted to `piece`.
fn greedy(
    g: &EmbeddedGraph,
    costs: &[u64],
    piece: &[bool],
    terminals: &[VertexId],
    h: &mut [bool],
    eps: Cost,
) -> usize {
    let trees: Vec<_> = terminals.iter().map(|&t| dijkstra(g, costs, t, Some(piece))).collect();
    let mut pairs = Vec::new();
    for i in 0..terminals.len() {
        for j in i + 1..terminals.len() {
            if let Some(d) = trees[i].dist[terminals[j]] {
                pairs.push((d, terminals[i], terminals[j], i));
            }
        }
    }
    pairs.sort_unstable();
    let mut added = 0;
    for (d, x, y, i) in pairs {
        let d_h = dijkstra(g, costs, x, Some(h)).dist[y];
        if d_h.is_some_and(|d_h| within(eps, d_h, d)) {
            continue;
        }
        for s in trees[i].path_to(g, y).expect("reachable") {
            h[s.edge()] = true;
        }
        added += 1;
    }
    added
}

/// First terminal pair whose distance in `h` exceeds `(1 + eps)` times the
/// distance in `g`.
pub fn distance_violation(
    g: &EmbeddedGraph,
    h: &[bool],
    terminals: &[VertexId],
    eps: Cost,
) -> Option<(VertexId, VertexId)> {
    let costs = ScaledCosts::new(&g.costs()).scaled;
    for (i, &x) in terminals.iter().enumerate() {
        let full = dijkstra(g, &costs, x, None).dist;
        let sub = dijkstra(g, &costs, x, Some(h)).dist;
        for &y in &terminals[i + 1..] {
            if let Some(d) = full[y] {
                if !sub[y].is_some_and(|d_h| within(eps, d_h, d)) {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

fn checked(g: &EmbeddedGraph, s: Shortcuts, eps: Cost) -> Result<Shortcuts> {
    match distance_violation(g, &s.edges, &s.terminals, eps) {
        None => Ok(s),
        Some((x, y)) => Err(Error::InvariantViolation(alloc::format!(
            "distance {x}-{y} not preserved"
        ))),
    }
}

/// Shortcuts between the vertices of the outer boundary of a hole-free
/// region. Contains the boundary.
pub fn boundary_spanner(region: &RegionGraph, eps: Cost) -> Result<Shortcuts> {
    if !region.holes.is_empty() {
        return Err(Error::Invalid("boundary spanner needs a hole-free region".into()));
    }
    if eps <= Cost::zero() {
        return Err(Error::Invalid("epsilon must be positive".into()));
    }
    let g = &region.graph;
    let costs = ScaledCosts::new(&g.costs()).scaled;
    let mut h = region.on_outer.clone();
    let mut terminals: Vec<VertexId> = g.face_boundary(region.exterior).iter().map(|&d| g.tail(d)).collect();
    terminals.sort_unstable();
    terminals.dedup();
    let all = vec![true; g.num_edges()];
    let paths_added = greedy(g, &costs, &all, &terminals, &mut h, eps);
    let s = Shortcuts {
        cost: mask_cost(g, &h),
        base_cost: mask_cost(g, &region.on_outer),
        edges: h,
        terminals,
        pieces: 1,
        paths_added,
    };
    checked(g, s, eps)
}

/// Shortcuts between the vertices of a connected edge set `a`. The graph is
/// cut along `a` into the pieces lying in its faces; each piece gets its own
/// greedy pass over the `a`-vertices on its boundary. Contains `a`.
pub fn component_spanner(g: &EmbeddedGraph, a: &[bool], eps: Cost) -> Result<Shortcuts> {
    if eps <= Cost::zero() {
        return Err(Error::Invalid("epsilon must be positive".into()));
    }
    let mut on_a = vec![false; g.num_vertices()];
    let mut dsu = Dsu::new(g.num_vertices());
    let mut first = None;
    for e in (0..g.num_edges()).filter(|&e| a[e]) {
        let ed = g.edge(e);
        on_a[ed.u] = true;
        on_a[ed.v] = true;
        dsu.union(ed.u, ed.v);
        first.get_or_insert(ed.u);
    }
    if let Some(r) = first {
        if (0..g.num_vertices()).any(|v| on_a[v] && dsu.find(v) != dsu.find(r)) {
            return Err(Error::Invalid("component edge set is disconnected".into()));
        }
    }
    let costs = ScaledCosts::new(&g.costs()).scaled;
    let mut faces = Dsu::new(g.num_faces());
    for e in (0..g.num_edges()).filter(|&e| !a[e]) {
        let (x, y) = g.edge_faces(e);
        faces.union(x, y);
    }
    let (num_pieces, piece_of) = faces.labels();
    let mut h = a.to_vec();
    let mut paths_added = 0;
    for p in 0..num_pieces {
        let piece: Vec<bool> = (0..g.num_edges())
            .map(|e| {
                let (x, y) = g.edge_faces(e);
                piece_of[x] == p || piece_of[y] == p
            })
            .collect();
        let mut terminals: Vec<VertexId> = (0..g.num_edges())
            .filter(|&e| piece[e])
            .flat_map(|e| [g.edge(e).u, g.edge(e).v])
            .filter(|&v| on_a[v])
            .collect();
        terminals.sort_unstable();
        terminals.dedup();
        paths_added += greedy(g, &costs, &piece, &terminals, &mut h, eps);
    }
    let terminals: Vec<VertexId> = (0..g.num_vertices()).filter(|&v| on_a[v]).collect();
    let s = Shortcuts {
        cost: mask_cost(g, &h),
        base_cost: mask_cost(g, a),
        edges: h,
        terminals,
        pieces: num_pieces,
        paths_added,
    };
    checked(g, s, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{cost, int};
    use crate::harness::generate::grid;

    #[test]
    fn within_is_exact() {
        assert!(within(cost(1, 2), 3, 2));
        assert!(!within(cost(1, 2), 4, 2));
        assert!(within(int(0) + cost(1, 3), 4, 3));
    }

    #[test]
    fn whole_graph_component_is_itself() {
        let g = grid(3, 3, 1);
        let all = vec![true; g.num_edges()];
        let s = component_spanner(&g, &all, cost(1, 2)).unwrap();
        assert_eq!(s.edges, all);
        assert_eq!(s.paths_added, 0);
    }

    #[test]
    fn empty_component() {
        let g = grid(2, 2, 1);
        let s = component_spanner(&g, &vec![false; g.num_edges()], cost(1, 2)).unwrap();
        assert!(s.edges.iter().all(|x| !x));
        assert!(s.terminals.is_empty());
    }
}
