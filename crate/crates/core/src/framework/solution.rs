use alloc::vec::Vec;

use crate::planar::WeightedGraph;
use crate::Cost;

/// A bipartition `(U, V)` of a vertex-weighted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartitionSolution {
    pub side_u: Vec<bool>,
    pub cost: Cost,
    pub weight_u: u64,
    pub total_weight: u64,
}

impl BipartitionSolution {
    pub fn from_side(g: &WeightedGraph, side_u: Vec<bool>) -> Self {
        let cost = g.cut_cost(&side_u);
        let weight_u = g.side_weight(&side_u);
        BipartitionSolution {
            side_u,
            cost,
            weight_u,
            total_weight: g.total_weight(),
        }
    }

    /// Achieved balance `weight(U) / W` (zero for a weightless graph).
    pub fn b_prime(&self) -> Cost {
        if self.total_weight == 0 {
            return Cost::from_integer(0);
        }
        Cost::new(self.weight_u as i128, self.total_weight as i128)
    }

    /// Recomputes cost and weight from scratch and compares.
    pub fn is_consistent(&self, g: &WeightedGraph) -> bool {
        self.cost == g.cut_cost(&self.side_u) && self.weight_u == g.side_weight(&self.side_u)
    }
}
