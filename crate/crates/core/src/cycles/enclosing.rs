use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::labels::DartWeightLabels;
use super::maxflow::min_cut;
use super::perturb::perturb_with_counts;
use super::search::LabelSearch;
use crate::cost::{floor_u64, ScaledCosts};
use crate::planar::{order_dart_set, Cycle, Dart, FaceKind, RegionGraph};
use crate::{Cost, Error, Result};

/// A cycle found inside a region, in local and global darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionCycle {
    pub local: Cycle,
    pub global: Cycle,
    pub cost: Cost,
    /// Weight of region faces enclosed.
    pub weight: u64,
    /// Faces of the whole graph enclosed (holes count all their faces).
    pub faces: u64,
}

impl RegionCycle {
    fn new(region: &RegionGraph, darts: Vec<Dart>, weight: u64, faces: u64) -> Self {
        let local = Cycle::from_darts(darts).canonical();
        let global = Cycle::from_darts(local.darts().iter().map(|&d| region.to_global(d)).collect()).canonical();
        let cost = local.cost(&region.graph);
        RegionCycle {
            local,
            global,
            cost,
            weight,
            faces,
        }
    }

    /// `cost / weight`, `None` standing for infinity when nothing is enclosed.
    pub fn ratio(&self) -> Option<Cost> {
        (self.weight > 0).then(|| self.cost / Cost::from_integer(self.weight as i128))
    }
}

/// Face multiplicities used to count enclosed faces of the whole graph.
pub fn face_counts(region: &RegionGraph) -> Vec<u64> {
    region
        .face_kind
        .iter()
        .map(|k| match k {
            FaceKind::Interior(_) => 1,
            FaceKind::Hole(h) => region.hole_face_counts[*h] as u64,
            FaceKind::Exterior => 0,
        })
        .collect()
}

/// Among cycles strictly contained in the region with `cost <= alpha *
/// weight`, one enclosing the most region weight, then the most faces.
///
/// Weights are perturbed to `w * F + m` (`F` = `total_faces`, `m` = face
/// multiplicity) and perturbed weights are tried from the largest down; for
/// each, every root searches for its cheapest simple cycle with that label
/// sum whose smallest vertex is the root and which uses a non-boundary edge.
/// Ties go to the lowest cost, then the smallest canonical dart sequence.
pub fn max_enclosing_low_ratio_cycle(
    region: &RegionGraph,
    alpha: Cost,
    total_faces: usize,
    budget: usize,
) -> Result<Option<RegionCycle>> {
    let g = &region.graph;
    let scale = total_faces as u64;
    let counts = face_counts(region);
    let pw = perturb_with_counts(g.face_weights(), &counts, scale);
    let labels = DartWeightLabels::with_weights(g, &pw)?;
    let costs = ScaledCosts::new(&g.costs());
    let cap_for = |w: u64| floor_u64(alpha * Cost::from_integer(w as i128) * Cost::from_integer(costs.scale));
    let n = g.num_vertices();
    let max_sum: i64 = pw
        .iter()
        .zip(&region.face_kind)
        .filter(|(_, k)| **k != FaceKind::Exterior)
        .map(|(w, _)| *w as i64)
        .sum();

    let limit = cap_for((max_sum as u64) / scale.max(1));
    let mut dists = Vec::with_capacity(n);
    let mut candidates: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for r in 0..n {
        let ok: Vec<bool> = (0..n).map(|v| v >= r).collect();
        let search = LabelSearch::new(g, &costs.scaled, labels.labels())
            .with_vertices(ok)
            .with_budget(budget)
            .with_cost_limit(limit);
        let dist = search.distances(r);
        for (s, c) in dist.closed_walks() {
            // closing walks with label sum -s give cycles of sum s
            let x = -s;
            if x >= scale as i64 && x <= max_sum && c <= cap_for(x as u64 / scale) {
                candidates.entry(x).or_default().push(r);
            }
        }
        dists.push((search, dist));
    }
    for (&x, roots) in candidates.iter().rev() {
        let w = x as u64 / scale;
        let mut cap = cap_for(w);
        let mut best: Option<(u64, Cycle)> = None;
        for &r in roots {
            let (search, dist) = &dists[r];
            let mut accept = |darts: &[Dart]| darts.iter().any(|d| region.is_strict(d.edge()));
            if let Some((c, darts)) = search.cheapest_cycle(dist, x, Some(cap), &mut accept)? {
                let cyc = Cycle::from_darts(darts).canonical();
                let better = match &best {
                    None => true,
                    Some((bc, bcyc)) => c < *bc || (c == *bc && cyc.darts() < bcyc.darts()),
                };
                if better {
                    cap = c;
                    best = Some((c, cyc));
                }
            }
        }
        if let Some((_, cyc)) = best {
            let faces = x as u64 % scale;
            return Ok(Some(RegionCycle::new(region, cyc.darts().to_vec(), w, faces)));
        }
    }
    Ok(None)
}

/// Cheapest cycle of the region enclosing hole `hole` other than the outer
/// boundary: for every outer-boundary edge, a minimum cut between the hole
/// and the exterior in the face-adjacency graph with that edge uncuttable.
pub fn cheapest_enclosing_cycle(region: &RegionGraph, hole: usize) -> Result<RegionCycle> {
    let g = &region.graph;
    let costs = ScaledCosts::new(&g.costs());
    let inf: u64 = costs.scaled.iter().sum::<u64>() + 1;
    let s = region.hole_face(hole);
    let t = region.exterior;
    let counts = face_counts(region);
    let mut best: Option<(u64, Cycle, Vec<bool>)> = None;
    for e in 0..g.num_edges() {
        if !region.on_outer[e] {
            continue;
        }
        let edges: Vec<(usize, usize, u64)> = (0..g.num_edges())
            .map(|i| {
                let (a, b) = g.edge_faces(i);
                (a, b, if i == e { inf } else { costs.scaled[i] })
            })
            .collect();
        let (value, side) = min_cut(g.num_faces(), &edges, s, t);
        if value >= inf {
            continue;
        }
        let darts: Vec<Dart> = g
            .darts()
            .filter(|&d| side[g.face(d)] && !side[g.face(d.rev())])
            .collect();
        let walks = order_dart_set(g, &darts);
        if walks.len() != 1 {
            return Err(Error::InvariantViolation("minimum cut is not a single cycle".into()));
        }
        let cyc = Cycle::from_darts(walks.into_iter().next().unwrap()).canonical();
        let better = match &best {
            None => true,
            Some((bc, bcyc, _)) => value < *bc || (value == *bc && cyc.darts() < bcyc.darts()),
        };
        if better {
            best = Some((value, cyc, side));
        }
    }
    let (_, cyc, side) = best.ok_or(Error::NoInteriorEnclosingCycle)?;
    let weight = (0..g.num_faces()).filter(|&f| side[f]).map(|f| g.face_weight(f)).sum();
    let faces = (0..g.num_faces()).filter(|&f| side[f]).map(|f| counts[f]).sum();
    Ok(RegionCycle::new(region, cyc.darts().to_vec(), weight, faces))
}

/// Enclosed-face mask of a local cycle.
pub fn local_enclosed(region: &RegionGraph, c: &Cycle) -> Result<Vec<bool>> {
    crate::planar::enclosed_faces(&region.graph, c.darts())
}
