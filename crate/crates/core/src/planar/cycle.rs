use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{crossing, Dart, EdgeId, EmbeddedGraph, VertexId};
use crate::{Cost, Error, Result};

/// Closed dart walk that uses each dart at most once and does not cross
/// itself.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    darts: Vec<Dart>,
}

impl Cycle {
    pub fn new(g: &EmbeddedGraph, darts: Vec<Dart>) -> Result<Cycle> {
        if darts.is_empty() {
            return Err(Error::NotACycle("empty dart sequence".into()));
        }
        if darts.iter().any(|d| d.index() >= g.num_darts()) {
            return Err(Error::NotACycle("unknown dart".into()));
        }
        if !g.is_walk(&darts, true) {
            return Err(Error::NotACycle("darts do not form a closed walk".into()));
        }
        let distinct: BTreeSet<Dart> = darts.iter().copied().collect();
        if distinct.len() != darts.len() {
            return Err(Error::NotACycle("dart repeated".into()));
        }
        if crossing::self_crosses(g, &darts) {
            return Err(Error::NotACycle(format!("walk {:?} crosses itself", darts)));
        }
        Ok(Cycle { darts })
    }

    /// Wraps darts already known to form a cycle.
    pub(crate) fn from_darts(darts: Vec<Dart>) -> Cycle {
        debug_assert!(!darts.is_empty());
        Cycle { darts }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.darts.iter().map(|d| d.edge())
    }

    pub fn cost(&self, g: &EmbeddedGraph) -> Cost {
        g.walk_cost(&self.darts)
    }

    /// Tails of the darts, in walk order.
    pub fn vertices(&self, g: &EmbeddedGraph) -> Vec<VertexId> {
        self.darts.iter().map(|&d| g.tail(d)).collect()
    }

    /// No vertex is visited twice.
    pub fn is_simple(&self, g: &EmbeddedGraph) -> bool {
        let vs = self.vertices(g);
        let set: BTreeSet<_> = vs.iter().collect();
        set.len() == vs.len()
    }

    /// Rotates the walk so that its smallest dart comes first.
    pub fn canonical(mut self) -> Cycle {
        let (i, _) = self.darts.iter().enumerate().min_by_key(|(_, d)| **d).unwrap();
        self.darts.rotate_left(i);
        self
    }

    pub fn reversed(&self) -> Cycle {
        Cycle {
            darts: self.darts.iter().rev().map(|d| d.rev()).collect(),
        }
    }

    /// Same cycle up to rotation of the walk.
    pub fn same_as(&self, other: &Cycle) -> bool {
        self.clone().canonical() == other.clone().canonical()
    }

    /// Edge set as a mask over the graph's edges.
    pub fn edge_mask(&self, num_edges: usize) -> Vec<bool> {
        let mut m = alloc::vec![false; num_edges];
        for e in self.edges() {
            m[e] = true;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::{k4, square};

    #[test]
    fn face_boundaries_are_cycles() {
        for g in [square(), k4()] {
            for f in 0..g.num_faces() {
                let c = Cycle::new(&g, g.face_boundary(f).to_vec()).unwrap();
                assert!(c.is_simple(&g));
            }
        }
    }

    #[test]
    fn open_walk_is_rejected() {
        let g = square();
        let d = g.face_boundary(0)[0];
        assert!(Cycle::new(&g, alloc::vec![d]).is_err());
    }

    #[test]
    fn canonical_rotation() {
        let g = k4();
        let mut darts = g.face_boundary(1).to_vec();
        darts.rotate_left(1);
        let a = Cycle::new(&g, darts).unwrap();
        let b = Cycle::new(&g, g.face_boundary(1).to_vec()).unwrap();
        assert!(a.same_as(&b));
        assert_eq!(a.canonical().darts()[0], *b.darts().iter().min().unwrap());
    }
}
