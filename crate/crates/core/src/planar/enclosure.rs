use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Dart, EmbeddedGraph, FaceId};
use crate::{Error, Result};

/// Faces enclosed by the dart multiset of a set of closed walks.
///
/// A face is enclosed when a path from the outer face to it, stepping across
/// edges, crosses the darts an odd number of times. The outer face itself is
/// never enclosed.
pub fn enclosed_faces(g: &EmbeddedGraph, darts: &[Dart]) -> Result<Vec<bool>> {
    let outer = g.outer_face().ok_or(Error::NoOuterFace)?;
    let mut parity = vec![false; g.num_edges()];
    for d in darts {
        parity[d.edge()] ^= true;
    }
    let mut seen = vec![false; g.num_faces()];
    let mut inside = vec![false; g.num_faces()];
    let mut queue = VecDeque::from([outer]);
    seen[outer] = true;
    while let Some(f) = queue.pop_front() {
        for &d in g.face_boundary(f) {
            let h = g.face(d.rev());
            let side = inside[f] ^ parity[d.edge()];
            if !seen[h] {
                seen[h] = true;
                inside[h] = side;
                queue.push_back(h);
            }
        }
    }
    Ok(inside)
}

pub fn encloses(g: &EmbeddedGraph, darts: &[Dart], f: FaceId) -> Result<bool> {
    Ok(enclosed_faces(g, darts)?[f])
}

/// Total weight of enclosed faces.
pub fn enclosed_weight(g: &EmbeddedGraph, darts: &[Dart]) -> Result<u64> {
    let inside = enclosed_faces(g, darts)?;
    Ok(inside
        .iter()
        .zip(g.face_weights())
        .filter(|(i, _)| **i)
        .map(|(_, w)| w)
        .sum())
}

/// Edges enclosed by a cycle: those on it and those with both sides enclosed.
pub fn enclosed_edges(g: &EmbeddedGraph, darts: &[Dart], inside: &[bool]) -> Vec<bool> {
    let mut out: Vec<bool> = (0..g.num_edges())
        .map(|e| {
            let (a, b) = g.edge_faces(e);
            inside[a] && inside[b]
        })
        .collect();
    for d in darts {
        out[d.edge()] = true;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::{k4, square};

    #[test]
    fn empty_set_encloses_nothing() {
        let g = k4().with_outer_face(0).unwrap();
        assert!(enclosed_faces(&g, &[]).unwrap().iter().all(|x| !x));
    }

    #[test]
    fn face_boundary_encloses_only_that_face() {
        let g = k4().with_outer_face(0).unwrap();
        for f in 1..g.num_faces() {
            let inside = enclosed_faces(&g, g.face_boundary(f)).unwrap();
            for h in 0..g.num_faces() {
                assert_eq!(inside[h], h == f);
            }
        }
    }

    #[test]
    fn outer_boundary_encloses_everything_else() {
        let g = square().with_outer_face(1).unwrap();
        let inside = enclosed_faces(&g, g.face_boundary(1)).unwrap();
        assert_eq!(inside, [true, false]);
    }

    #[test]
    fn needs_outer_face() {
        assert_eq!(enclosed_faces(&square(), &[]), Err(Error::NoOuterFace));
    }
}
