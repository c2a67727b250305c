use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::labels::DartWeightLabels;
use super::search::LabelSearch;
use crate::cost::ScaledCosts;
use crate::planar::paths::ShortestPaths;
use crate::planar::{enclosed_edges, enclosed_faces, Cycle, Dart, EmbeddedGraph, VertexId};
use crate::{Cost, Result};

/// Cheapest qualifying cycle for every achievable enclosed weight.
#[derive(Clone, Debug)]
pub struct WeightCycleTable {
    pub root: VertexId,
    pub rows: BTreeMap<u64, (Cost, Cycle)>,
}

/// `T` discovers the cycle from the inside: every tree path from the root
/// to a vertex of the cycle is enclosed by it.
pub fn discovered_from_inside(g: &EmbeddedGraph, tree: &ShortestPaths, darts: &[Dart]) -> Result<bool> {
    let inside = enclosed_faces(g, darts)?;
    let edges = enclosed_edges(g, darts, &inside);
    Ok(darts.iter().all(|&d| {
        tree.path_to(g, g.tail(d))
            .is_some_and(|p| p.iter().all(|pd| edges[pd.edge()]))
    }))
}

/// For every weight `w`, the minimum-cost simple cycle through `r` enclosing
/// exactly `w` that `tree` (rooted at `r`) discovers from the inside.
pub fn min_cycle_exact_weight(g: &EmbeddedGraph, r: VertexId, tree: &ShortestPaths) -> Result<WeightCycleTable> {
    let labels = DartWeightLabels::new(g)?;
    let costs = ScaledCosts::new(&g.costs());
    let search = LabelSearch::new(g, &costs.scaled, labels.labels());
    let dist = search.distances(r);
    let total = g.total_face_weight();
    let mut rows = BTreeMap::new();
    let mut err = None;
    for w in 0..=total {
        let target = w as i64;
        if dist.closed(-target).is_none() {
            continue;
        }
        let mut accept = |darts: &[Dart]| match discovered_from_inside(g, tree, darts) {
            Ok(ok) => ok,
            Err(e) => {
                err = Some(e);
                false
            }
        };
        if let Some((c, darts)) = search.cheapest_cycle(&dist, target, None, &mut accept)? {
            rows.insert(w, (costs.to_cost(c), Cycle::from_darts(darts)));
        }
        if let Some(e) = err.take() {
            return Err(e);
        }
    }
    Ok(WeightCycleTable { root: r, rows })
}

impl WeightCycleTable {
    pub fn weights(&self) -> Vec<u64> {
        self.rows.keys().copied().collect()
    }
}
