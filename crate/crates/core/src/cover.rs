//! Cyclic double cover of a region with holes.
//!
//! The region is cut along a shortest path `L` from its outer boundary to
//! its heaviest hole. A local edge swaps sheets when it meets `L` from the
//! left; the left side of `L` is swept in rotation order from the exterior
//! corner at the start of `L`, past each interior vertex, to the hole corner
//! at its end. An edge met from the left at both ends keeps its sheet.
//!
//! Cover vertex `(v, b)` is `2v + b`; copy `s` of edge `e` is `2e + s` and
//! runs from `(u, s)`.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::cost::ScaledCosts;
use crate::planar::{Dart, Edge, EdgeId, EmbeddedGraph, FaceId, FaceKind, RegionGraph, VertexId};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub region: RegionGraph,
    /// Index of the heaviest hole in `region.holes`.
    pub hole: usize,
    /// Local darts of `L`, from the outer boundary to the hole.
    pub cut_path: Vec<Dart>,
    /// Local edges that swap sheets.
    pub swaps: Vec<bool>,
    pub graph: EmbeddedGraph,
    /// Region face each cover face projects to.
    pub face_projection: Vec<FaceId>,
}

/// Cover face classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverFace {
    /// One of the two lifts of a region face or hole.
    Single(FaceKind),
    /// The lift of the exterior or of the heaviest hole, traversed twice.
    Double(FaceKind),
}

fn start_corner(g: &EmbeddedGraph, v: VertexId, face: FaceId, before: Option<Dart>) -> Option<Dart> {
    // corner (x, rot_next x) at v lies in face(rev x)
    let rot = g.rotation(v);
    let k = rot.len();
    let first = before.map_or(0, |b| g.rot_pos(b));
    (1..=k)
        .map(|i| rot[(first + k - i) % k])
        .find(|&x| g.face(x.rev()) == face)
}

/// Sweeps from corner dart `from` in rotation order, marking darts until
/// `stop` returns true for the dart about to be passed.
fn sweep(g: &EmbeddedGraph, from: Dart, marks: &mut [bool], mut stop: impl FnMut(Dart) -> bool) {
    let mut x = from;
    for _ in 0..g.degree(g.tail(from)) {
        if stop(x) {
            return;
        }
        x = g.rot_next(x);
        marks[x.edge()] ^= true;
    }
}

/// Shortest path from the outer boundary to `hole`, by cost then hops,
/// ties to the smaller dart.
fn cut_path(region: &RegionGraph, hole_face: FaceId) -> Result<Vec<Dart>> {
    let g = &region.graph;
    let costs = ScaledCosts::new(&g.costs());
    let n = g.num_vertices();
    let mut on_hole = vec![false; n];
    for &d in g.face_boundary(hole_face) {
        on_hole[g.tail(d)] = true;
    }
    let mut best: Vec<Option<(u64, usize)>> = vec![None; n];
    let mut parent: Vec<Option<Dart>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    for &d in g.face_boundary(region.exterior) {
        let v = g.tail(d);
        if best[v].is_none() {
            best[v] = Some((0, 0));
            heap.push(Reverse((0u64, 0usize, v)));
        }
    }
    while let Some(Reverse((c, h, v))) = heap.pop() {
        if best[v] != Some((c, h)) {
            continue;
        }
        for &d in g.rotation(v) {
            let w = g.head(d);
            let key = (c + costs.scaled[d.edge()], h + 1);
            let better = match best[w] {
                None => true,
                Some(old) => key < old || (key == old && parent[w].is_some_and(|p| d < p)),
            };
            if better {
                best[w] = Some(key);
                parent[w] = Some(d);
                heap.push(Reverse((key.0, key.1, w)));
            }
        }
    }
    let t = (0..n)
        .filter(|&v| on_hole[v])
        .filter_map(|v| best[v].map(|k| (k, v)))
        .min()
        .map(|(_, v)| v)
        .ok_or(Error::CoverUndefined)?;
    let mut path = Vec::new();
    let mut v = t;
    while let Some(d) = parent[v] {
        path.push(d);
        v = g.tail(d);
    }
    path.reverse();
    Ok(path)
}

/// Edges met from the left by the cut path.
fn left_swaps(region: &RegionGraph, hole_face: FaceId, path: &[Dart]) -> Result<Vec<bool>> {
    let g = &region.graph;
    let ext = region.exterior;
    let mut marks = vec![false; g.num_edges()];
    let bad = || Error::InvariantViolation("cut path end has no boundary corner".into());
    match (path.first(), path.last()) {
        (Some(&b), Some(&a)) => {
            let s = g.tail(b);
            let x0 = start_corner(g, s, ext, Some(b)).ok_or_else(bad)?;
            sweep(g, x0, &mut marks, |x| g.rot_next(x) == b);
            for w in path.windows(2) {
                let (a, b) = (w[0], w[1]);
                sweep(g, a.rev(), &mut marks, |x| g.rot_next(x) == b);
            }
            sweep(g, a.rev(), &mut marks, |x| g.face(x.rev()) == hole_face);
        }
        _ => {
            // outer boundary and hole share a vertex
            let v = (0..g.num_vertices())
                .find(|&v| {
                    g.rotation(v).iter().any(|d| g.face(d.rev()) == ext)
                        && g.rotation(v).iter().any(|d| g.face(d.rev()) == hole_face)
                })
                .ok_or_else(bad)?;
            let x0 = start_corner(g, v, ext, None).ok_or_else(bad)?;
            sweep(g, x0, &mut marks, |x| g.face(x.rev()) == hole_face);
        }
    }
    Ok(marks)
}

impl DoubleCover {
    pub fn new(region: RegionGraph) -> Result<Self> {
        let hole = region.heaviest_hole().ok_or(Error::CoverUndefined)?;
        let hole_face = region.hole_face(hole);
        let cut = cut_path(&region, hole_face)?;
        let swaps = left_swaps(&region, hole_face, &cut)?;
        Self::with_swaps(region, hole, cut, swaps)
    }

    fn with_swaps(region: RegionGraph, hole: usize, cut_path: Vec<Dart>, swaps: Vec<bool>) -> Result<Self> {
        let g = &region.graph;
        let mut edges = Vec::with_capacity(2 * g.num_edges());
        for (e, ed) in g.edges().iter().enumerate() {
            for s in 0..2 {
                let t = if swaps[e] { 1 - s } else { s };
                edges.push(Edge {
                    u: 2 * ed.u + s,
                    v: 2 * ed.v + t,
                    cost: ed.cost,
                });
            }
        }
        let mut rotation = vec![Vec::new(); 2 * g.num_vertices()];
        for v in 0..g.num_vertices() {
            for b in 0..2 {
                rotation[2 * v + b] = g
                    .rotation(v)
                    .iter()
                    .map(|&d| Self::lift_dart_with(&swaps, d, b))
                    .collect();
            }
        }
        let cover = EmbeddedGraph::new(vec![0; 2 * g.num_vertices()], edges, rotation)?;
        let face_projection: Vec<FaceId> = (0..cover.num_faces())
            .map(|f| g.face(Self::project_dart(cover.face_boundary(f)[0])))
            .collect();
        let weights = face_projection.iter().map(|&f| g.face_weight(f)).collect();
        let outer = face_projection
            .iter()
            .position(|&f| f == region.exterior)
            .ok_or_else(|| Error::InvariantViolation("cover has no exterior".into()))?;
        let graph = cover.with_face_weights(weights)?.with_outer_face(outer)?;
        Ok(DoubleCover {
            region,
            hole,
            cut_path,
            swaps,
            graph,
            face_projection,
        })
    }

    fn lift_dart_with(swaps: &[bool], d: Dart, tail_sheet: usize) -> Dart {
        // copy s of edge e has its end-0 vertex on sheet s
        let s = if d.end() == 0 || !swaps[d.edge()] {
            tail_sheet
        } else {
            1 - tail_sheet
        };
        Dart::new(2 * d.edge() + s, d.end())
    }

    /// Lift of local dart `d` leaving `(tail(d), sheet)`.
    pub fn lift_dart(&self, d: Dart, sheet: usize) -> Dart {
        Self::lift_dart_with(&self.swaps, d, sheet)
    }

    pub fn project_dart(d: Dart) -> Dart {
        Dart::new(d.edge() / 2, d.end())
    }

    pub fn project_vertex(v: VertexId) -> VertexId {
        v / 2
    }

    pub fn sheet(v: VertexId) -> usize {
        v % 2
    }

    pub fn project_edge(e: EdgeId) -> EdgeId {
        e / 2
    }

    pub fn hole_face(&self) -> FaceId {
        self.region.hole_face(self.hole)
    }

    /// Parity of sheet swaps along a local walk.
    pub fn x2(&self, walk: &[Dart]) -> usize {
        walk.iter().filter(|d| self.swaps[d.edge()]).count() % 2
    }

    /// The lift of a local walk starting on sheet 0.
    pub fn lift_walk(&self, walk: &[Dart]) -> Result<Vec<Dart>> {
        let g = &self.region.graph;
        if walk.iter().any(|d| d.edge() >= g.num_edges()) || (!walk.is_empty() && !g.is_walk(walk, false)) {
            return Err(Error::WalkLeavesRegion);
        }
        let mut sheet = 0;
        let mut out = Vec::with_capacity(walk.len());
        for &d in walk {
            let l = self.lift_dart(d, sheet);
            sheet = Self::sheet(self.graph.head(l));
            out.push(l);
        }
        Ok(out)
    }

    /// Lift of a walk given in darts of the whole graph.
    pub fn lift_global_walk(&self, walk: &[Dart]) -> Result<Vec<Dart>> {
        let local: Option<Vec<Dart>> = walk.iter().map(|&d| self.region.to_local(d)).collect();
        self.lift_walk(&local.ok_or(Error::WalkLeavesRegion)?)
    }

    pub fn project_walk(&self, walk: &[Dart]) -> Vec<Dart> {
        walk.iter().map(|&d| Self::project_dart(d)).collect()
    }

    pub fn classify_face(&self, f: FaceId) -> CoverFace {
        let kind = self.region.face_kind[self.face_projection[f]];
        if self.graph.face_boundary(f).len() == 2 * self.region.graph.face_boundary(self.face_projection[f]).len() {
            CoverFace::Double(kind)
        } else {
            CoverFace::Single(kind)
        }
    }
}
