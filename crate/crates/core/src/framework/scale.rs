use alloc::vec::Vec;

use num_traits::Zero;

use crate::cost::floor_u64;
use crate::planar::WeightedGraph;
use crate::{Cost, Error, Result};

/// Weights rescaled to `floor(w n / (eps W))`, so the total is at most
/// `n / eps`.
#[derive(Clone, Debug)]
pub struct ScaledInstance {
    pub original: WeightedGraph,
    pub scaled: WeightedGraph,
    pub epsilon: Cost,
    pub total_weight: u64,
    /// Original weight of one scaled unit, `eps W / n`.
    pub unit: Cost,
}

impl ScaledInstance {
    /// Largest truncation loss of a single vertex, in original units.
    pub fn max_truncation(&self) -> Cost {
        self.original
            .weights
            .iter()
            .zip(&self.scaled.weights)
            .map(|(&w, &s)| Cost::from_integer(w as i128) - Cost::from_integer(s as i128) * self.unit)
            .max()
            .unwrap_or_else(Cost::zero)
    }
}

pub fn scale_weights(g: &WeightedGraph, epsilon: Cost) -> Result<ScaledInstance> {
    let total = g.total_weight();
    if total == 0 {
        return Err(Error::Invalid("total weight must be positive".into()));
    }
    if epsilon <= Cost::zero() {
        return Err(Error::Invalid("epsilon must be positive".into()));
    }
    let n = Cost::from_integer(g.num_vertices() as i128);
    let unit = epsilon * Cost::from_integer(total as i128) / n;
    let weights: Vec<u64> = g
        .weights
        .iter()
        .map(|&w| floor_u64(Cost::from_integer(w as i128) / unit))
        .collect();
    let scaled = WeightedGraph::new(weights, g.edges.clone());
    debug_assert!(Cost::from_integer(scaled.total_weight() as i128) <= n / epsilon);
    Ok(ScaledInstance {
        original: g.clone(),
        scaled,
        epsilon,
        total_weight: total,
        unit,
    })
}
