use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::planar::{Dart, EmbeddedGraph};
use crate::{Error, Result};

/// Signed dart labels that make enclosed weight additive along cycles.
///
/// A breadth-first spanning tree of faces is rooted at the outer face. The
/// dart of a tree edge whose face is the child side carries the child
/// subtree's weight, its reverse the negation; other darts carry zero. For
/// every cycle the label sum is plus or minus the enclosed weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartWeightLabels {
    labels: Vec<i64>,
    tree_edge: Vec<bool>,
}

impl DartWeightLabels {
    /// Labels for the graph's own face weights.
    pub fn new(g: &EmbeddedGraph) -> Result<Self> {
        Self::with_weights(g, g.face_weights())
    }

    pub fn with_weights(g: &EmbeddedGraph, weights: &[u64]) -> Result<Self> {
        let root = g.outer_face().ok_or(Error::NoOuterFace)?;
        let nf = g.num_faces();
        let mut parent_edge: Vec<Option<usize>> = vec![None; nf];
        let mut seen = vec![false; nf];
        let mut order = Vec::with_capacity(nf);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(f) = queue.pop_front() {
            order.push(f);
            for &d in g.face_boundary(f) {
                let h = g.face(d.rev());
                if !seen[h] {
                    seen[h] = true;
                    parent_edge[h] = Some(d.edge());
                    queue.push_back(h);
                }
            }
        }
        let mut sub: Vec<i64> = weights.iter().map(|&w| w as i64).collect();
        for &f in order.iter().rev() {
            if let Some(e) = parent_edge[f] {
                let (a, b) = g.edge_faces(e);
                let p = if a == f { b } else { a };
                sub[p] += sub[f];
            }
        }
        let mut labels = vec![0i64; g.num_darts()];
        let mut tree_edge = vec![false; g.num_edges()];
        for f in 0..nf {
            if let Some(e) = parent_edge[f] {
                tree_edge[e] = true;
                let d = Dart::new(e, 0);
                let s = if g.face(d) == f { sub[f] } else { -sub[f] };
                labels[d.index()] = s;
                labels[d.rev().index()] = -s;
            }
        }
        Ok(DartWeightLabels { labels, tree_edge })
    }

    pub fn label(&self, d: Dart) -> i64 {
        self.labels[d.index()]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edge[e]
    }

    pub fn sum(&self, darts: &[Dart]) -> i64 {
        darts.iter().map(|&d| self.label(d)).sum()
    }
}
