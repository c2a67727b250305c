//! Exhaustive reference implementations used to check the fast paths.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cost::ScaledCosts;
use crate::cycles::enumerate::simple_cycles;
use crate::cycles::RegionCycle;
use crate::framework::BipartitionSolution;
use crate::planar::paths::ShortestPaths;
use crate::planar::{Cycle, Dart, EmbeddedGraph, FaceKind, RegionGraph, VertexId, WeightedGraph};
use crate::{Cost, Error, Result};

pub const MAX_ENUMERATION_VERTICES: usize = 24;
pub const MAX_CYCLES: usize = 200_000;

/// Minimum-cost bipartition with `weight(U)` in `[lo, hi]`, by enumerating
/// every subset (Gray-code order). `fixed_out`, if given, is kept in `V`.
/// Ties keep the first subset met.
pub fn exact_bipartition(
    g: &WeightedGraph,
    lo: u64,
    hi: u64,
    fixed_out: Option<VertexId>,
) -> Result<BipartitionSolution> {
    let n = g.num_vertices();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::TooLarge(format!("{n} vertices")));
    }
    let free: Vec<VertexId> = (0..n).filter(|&v| Some(v) != fixed_out).collect();
    let costs = ScaledCosts::new(&g.edges.iter().map(|e| e.2).collect::<Vec<_>>());
    let adj = g.adjacency();
    let mut side = vec![false; n];
    let mut cut: u64 = 0;
    let mut weight: u64 = 0;
    let mut best: Option<(u64, Vec<bool>)> = None;
    let consider = |cut: u64, weight: u64, side: &[bool], best: &mut Option<(u64, Vec<bool>)>| {
        if weight >= lo && weight <= hi && best.as_ref().is_none_or(|(c, _)| cut < *c) {
            *best = Some((cut, side.to_vec()));
        }
    };
    consider(cut, weight, &side, &mut best);
    for i in 1u64..(1u64 << free.len()) {
        let v = free[i.trailing_zeros() as usize];
        for &e in &adj[v] {
            let (a, b, _) = g.edges[e];
            let other = if a == v { b } else { a };
            if other == v {
                continue;
            }
            if side[v] == side[other] {
                cut += costs.scaled[e];
            } else {
                cut -= costs.scaled[e];
            }
        }
        side[v] = !side[v];
        if side[v] {
            weight += g.weights[v];
        } else {
            weight -= g.weights[v];
        }
        consider(cut, weight, &side, &mut best);
    }
    let (_, side) = best.ok_or(Error::InfeasibleWindow { lo, hi })?;
    Ok(BipartitionSolution::from_side(g, side))
}

/// Faces on the inside of a simple cycle, by flooding from the outer face
/// without stepping across the cycle.
pub fn flood_fill_enclosed(g: &EmbeddedGraph, darts: &[Dart]) -> Result<Vec<bool>> {
    let outer = g.outer_face().ok_or(Error::NoOuterFace)?;
    let mut wall = vec![false; g.num_edges()];
    for d in darts {
        wall[d.edge()] = true;
    }
    let mut reached = vec![false; g.num_faces()];
    reached[outer] = true;
    let mut q = VecDeque::from([outer]);
    while let Some(f) = q.pop_front() {
        for &d in g.face_boundary(f) {
            let h = g.face(d.rev());
            if !wall[d.edge()] && !reached[h] {
                reached[h] = true;
                q.push_back(h);
            }
        }
    }
    Ok(reached.iter().map(|r| !r).collect())
}

fn mask_weight(mask: &[bool], weights: &[u64]) -> u64 {
    mask.iter().zip(weights).filter(|(m, _)| **m).map(|(_, w)| w).sum()
}

/// Minimum cost per enclosed weight over simple cycles through `r` that
/// `tree` discovers from the inside.
pub fn brute_force_table(g: &EmbeddedGraph, r: VertexId, tree: &ShortestPaths) -> Result<BTreeMap<u64, Cost>> {
    let mut out: BTreeMap<u64, Cost> = BTreeMap::new();
    for c in simple_cycles(g, None, MAX_CYCLES)? {
        let verts = c.vertices(g);
        if !verts.contains(&r) {
            continue;
        }
        let inside = flood_fill_enclosed(g, c.darts())?;
        let on_cycle = c.edge_mask(g.num_edges());
        let enclosed_edge = |e: usize| {
            let (a, b) = g.edge_faces(e);
            on_cycle[e] || (inside[a] && inside[b])
        };
        let discovered = verts.iter().all(|&v| {
            let mut x = v;
            while let Some(d) = tree.parent[x] {
                if !enclosed_edge(d.edge()) {
                    return false;
                }
                x = g.tail(d);
            }
            true
        });
        if !discovered {
            continue;
        }
        let w = mask_weight(&inside, g.face_weights());
        let cost = c.cost(g);
        out.entry(w).and_modify(|old| *old = (*old).min(cost)).or_insert(cost);
    }
    Ok(out)
}

/// Weight of region faces and number of original faces enclosed by a local
/// simple cycle.
pub fn region_cycle_measure(region: &RegionGraph, c: &Cycle) -> Result<(u64, u64)> {
    let inside = flood_fill_enclosed(&region.graph, c.darts())?;
    let mut w = 0;
    let mut faces = 0;
    for (f, kind) in region.face_kind.iter().enumerate() {
        if !inside[f] {
            continue;
        }
        match kind {
            FaceKind::Interior(gf) => {
                w += region.graph.face_weight(f);
                debug_assert!(region.region_faces[*gf]);
                faces += 1;
            }
            FaceKind::Hole(h) => faces += region.hole_face_counts[*h] as u64,
            FaceKind::Exterior => {}
        }
    }
    Ok((w, faces))
}

/// Best `(weight, faces, cost)` over low-ratio cycles strictly contained in
/// the region, by enumeration: maximum weight, then faces, then minimum cost.
pub fn brute_force_max_low_ratio(region: &RegionGraph, alpha: Cost) -> Result<Option<(u64, u64, Cost)>> {
    let g = &region.graph;
    let mut best: Option<(u64, u64, Cost)> = None;
    for c in simple_cycles(g, None, MAX_CYCLES)? {
        if !c.edges().any(|e| region.is_strict(e)) {
            continue;
        }
        let (w, faces) = region_cycle_measure(region, &c)?;
        let cost = c.cost(g);
        if w == 0 || cost > alpha * Cost::from_integer(w as i128) {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bw, bf, bc)) => (w, faces) > (*bw, *bf) || ((w, faces) == (*bw, *bf) && cost < *bc),
        };
        if better {
            best = Some((w, faces, cost));
        }
    }
    Ok(best)
}

/// Cheapest simple cycle of the region enclosing the hole, other than the
/// outer boundary.
pub fn brute_force_cheapest_enclosing(region: &RegionGraph, hole: usize) -> Result<Option<Cost>> {
    let g = &region.graph;
    let hf = region.hole_face(hole);
    let outer = Cycle::from_darts(g.face_boundary(region.exterior).to_vec());
    let outer_edges = outer.edge_mask(g.num_edges());
    let mut best: Option<Cost> = None;
    for c in simple_cycles(g, None, MAX_CYCLES)? {
        if c.edge_mask(g.num_edges()) == outer_edges {
            continue;
        }
        if !flood_fill_enclosed(g, c.darts())?[hf] {
            continue;
        }
        let cost = c.cost(g);
        if best.is_none_or(|b| cost < b) {
            best = Some(cost);
        }
    }
    Ok(best)
}

/// Sanity check of a low-ratio search result against the oracle's triple.
pub fn matches_low_ratio(found: &Option<RegionCycle>, expected: &Option<(u64, u64, Cost)>) -> bool {
    match (found, expected) {
        (None, None) => true,
        (Some(c), Some((w, f, cost))) => c.weight == *w && c.faces == *f && c.cost == *cost,
        _ => false,
    }
}
