//! Cycle search: weight labels, weight-exact cheapest cycles, low-ratio
//! cycle selection and cheapest hole-enclosing cycles.

mod enclosing;
pub mod enumerate;
mod labels;
pub mod maxflow;
mod perturb;
pub mod search;
mod table;

pub use enclosing::{
    cheapest_enclosing_cycle, face_counts, local_enclosed, max_enclosing_low_ratio_cycle, RegionCycle,
};
pub use labels::DartWeightLabels;
pub use perturb::{perturb_weights, perturb_with_counts};
pub use table::{discovered_from_inside, min_cycle_exact_weight, WeightCycleTable};
