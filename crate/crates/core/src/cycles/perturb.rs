use alloc::vec::Vec;

use crate::planar::EmbeddedGraph;

/// `w'(f) = w(f) * F + 1` with `F` the number of faces. Every face becomes
/// positive, and among cycles of equal weight the one enclosing more faces
/// is heavier.
pub fn perturb_weights(g: &EmbeddedGraph) -> EmbeddedGraph {
    let f = g.num_faces() as u64;
    let w: Vec<u64> = g.face_weights().iter().map(|&w| w * f + 1).collect();
    g.clone().with_face_weights(w).expect("same face count")
}

/// Perturbation with explicit face multiplicities: `w * scale + m`. A face
/// standing for several original faces (a hole) counts all of them.
pub fn perturb_with_counts(weights: &[u64], counts: &[u64], scale: u64) -> Vec<u64> {
    debug_assert!(counts.iter().sum::<u64>() < scale.max(1));
    weights.iter().zip(counts).map(|(&w, &m)| w * scale + m).collect()
}
