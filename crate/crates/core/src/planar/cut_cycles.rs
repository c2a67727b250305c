use alloc::vec;
use alloc::vec::Vec;

use super::{enclosed_faces, Cycle, Dart, EmbeddedGraph};
use crate::Result;

/// Splits a balanced dart set into closed walks. From each dart the walk
/// continues with the first set dart met scanning clockwise from the one
/// after `rev(d)` at its head, which keeps the walks from crossing.
pub fn order_dart_set(g: &EmbeddedGraph, darts: &[Dart]) -> Vec<Vec<Dart>> {
    let mut in_set = vec![false; g.num_darts()];
    for d in darts {
        in_set[d.index()] = true;
    }
    let mut used = vec![false; g.num_darts()];
    let mut sorted: Vec<Dart> = darts.to_vec();
    sorted.sort();
    let mut walks = Vec::new();
    for &start in &sorted {
        if used[start.index()] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            used[d.index()] = true;
            walk.push(d);
            let mut e = g.rot_next(d.rev());
            let mut guard = 0;
            while !in_set[e.index()] {
                e = g.rot_next(e);
                guard += 1;
                assert!(guard <= g.degree(g.head(d)), "dart set is not balanced");
            }
            if e == start {
                break;
            }
            assert!(!used[e.index()], "dart set does not decompose into closed walks");
            d = e;
        }
        walks.push(walk);
    }
    walks
}

/// Cycles of the dual formed by the edges crossing a bipartition. `in_u` is
/// indexed by face of `dual` (vertex of the primal). Each cycle keeps the `U`
/// side on the face of its darts.
pub fn bipartition_to_cut_cycles(dual: &EmbeddedGraph, in_u: &[bool]) -> Vec<Cycle> {
    let darts: Vec<Dart> = dual
        .darts()
        .filter(|&d| in_u[dual.face(d)] && !in_u[dual.face(d.rev())])
        .collect();
    order_dart_set(dual, &darts)
        .into_iter()
        .map(|w| Cycle::from_darts(w).canonical())
        .collect()
}

/// Primal side indicator of the faces enclosed by a cycle set.
pub fn cycles_to_bipartition(dual: &EmbeddedGraph, cycles: &[Cycle]) -> Result<Vec<bool>> {
    let darts: Vec<Dart> = cycles.iter().flat_map(|c| c.darts().iter().copied()).collect();
    enclosed_faces(dual, &darts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::int;
    use crate::planar::fixtures::square;
    use num_traits::Zero;

    #[test]
    fn adjacent_pair_gives_two_dart_cycle() {
        let primal = square();
        let (dual, _) = primal.dualize().normalize_outer();
        let mut u = vec![false; dual.num_faces()];
        u[1] = true;
        u[2] = true;
        let cycles = bipartition_to_cut_cycles(&dual, &u);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
        assert_eq!(cycles[0].cost(&dual), int(2));
        assert_eq!(cycles_to_bipartition(&dual, &cycles).unwrap(), u);
    }

    #[test]
    fn empty_side_gives_no_cycles() {
        let (dual, _) = square().dualize().normalize_outer();
        let u = vec![false; dual.num_faces()];
        let cycles = bipartition_to_cut_cycles(&dual, &u);
        assert!(cycles.is_empty());
        assert!(dual.walk_cost(&[]).is_zero());
    }
}
