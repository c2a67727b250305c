use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cost::{total, Cost};
use crate::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// Directed copy of an edge. Edge `e` owns darts `2e` (from `u` to `v`) and
/// `2e + 1` (from `v` to `u`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    pub fn new(edge: EdgeId, end: usize) -> Dart {
        debug_assert!(end < 2);
        Dart((2 * edge + end) as u32)
    }

    pub fn edge(self) -> EdgeId {
        (self.0 >> 1) as usize
    }

    /// 0 if the dart leaves the edge's `u` end, 1 if it leaves the `v` end.
    pub fn end(self) -> usize {
        (self.0 & 1) as usize
    }

    pub fn rev(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub cost: Cost,
}

/// Planar embedded multigraph given by a clockwise rotation system.
///
/// Faces are traced with the rule `succ(d) = next clockwise dart after
/// rev(d)` around `head(d)`. Vertex weights are used when the graph is a
/// primal instance, face weights when it is a dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    vertex_weights: Vec<u64>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<Dart>>,
    rot_pos: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    face_of: Vec<FaceId>,
    face_weights: Vec<u64>,
    outer_face: Option<FaceId>,
}

impl EmbeddedGraph {
    /// Builds and validates an embedded graph. `rotation[v]` lists the darts
    /// leaving `v` in clockwise order.
    pub fn new(vertex_weights: Vec<u64>, edges: Vec<Edge>, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        let n = vertex_weights.len();
        if n == 0 {
            return Err(Error::Invalid("graph has no vertices".into()));
        }
        if rotation.len() != n {
            return Err(Error::MalformedRotation(format!(
                "{} rotation lists for {} vertices",
                rotation.len(),
                n
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::Invalid(format!("edge {i} references a missing vertex")));
            }
            if e.cost < Cost::zero() {
                return Err(Error::Invalid(format!("edge {i} has negative cost")));
            }
        }
        let ndarts = 2 * edges.len();
        let mut rot_pos = vec![usize::MAX; ndarts];
        for (v, list) in rotation.iter().enumerate() {
            for (pos, &d) in list.iter().enumerate() {
                if d.index() >= ndarts {
                    return Err(Error::MalformedRotation(format!("dart {} does not exist", d.0)));
                }
                if rot_pos[d.index()] != usize::MAX {
                    return Err(Error::MalformedRotation(format!("dart {} listed twice", d.0)));
                }
                let e = &edges[d.edge()];
                let tail = if d.end() == 0 { e.u } else { e.v };
                if tail != v {
                    return Err(Error::MalformedRotation(format!(
                        "dart {} listed at vertex {v} but leaves vertex {tail}",
                        d.0
                    )));
                }
                rot_pos[d.index()] = pos;
            }
        }
        if let Some(d) = rot_pos.iter().position(|&p| p == usize::MAX) {
            return Err(Error::MalformedRotation(format!("dart {d} missing from rotation")));
        }

        let mut g = EmbeddedGraph {
            vertex_weights,
            edges,
            rotation,
            rot_pos,
            faces: Vec::new(),
            face_of: Vec::new(),
            face_weights: Vec::new(),
            outer_face: None,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        g.trace_faces(None);
        let euler = g.num_vertices() as i64 - g.num_edges() as i64 + g.num_faces() as i64;
        if euler != 2 {
            return Err(Error::NotPlanar(euler));
        }
        Ok(g)
    }

    /// Traces faces. With `reps`, face `i` is the face containing `reps[i]`
    /// and its boundary walk starts there; otherwise faces are numbered by
    /// their smallest dart.
    fn trace_faces(&mut self, reps: Option<&[Dart]>) {
        let ndarts = self.num_darts();
        let mut face_of = vec![usize::MAX; ndarts];
        let mut faces: Vec<Vec<Dart>> = Vec::new();
        let walk = |start: Dart, face_of: &mut Vec<usize>, faces: &mut Vec<Vec<Dart>>| {
            let id = faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                face_of[d.index()] = id;
                boundary.push(d);
                d = self.succ(d);
                if d == start {
                    break;
                }
            }
            faces.push(boundary);
        };
        match reps {
            Some(reps) => {
                for &r in reps {
                    walk(r, &mut face_of, &mut faces);
                }
            }
            None => {
                for i in 0..ndarts {
                    if face_of[i] == usize::MAX {
                        walk(Dart(i as u32), &mut face_of, &mut faces);
                    }
                }
            }
        }
        if ndarts == 0 {
            // A lone vertex has one face with an empty boundary.
            faces.push(Vec::new());
        }
        self.face_weights = vec![0; faces.len()];
        self.faces = faces;
        self.face_of = face_of;
    }

    fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotation[v] {
                let h = self.head(d);
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    queue.push_back(h);
                }
            }
        }
        count == n
    }

    /// Replaces face weights. Length must match the face count.
    pub fn with_face_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.faces.len() {
            return Err(Error::Invalid(format!(
                "{} face weights for {} faces",
                weights.len(),
                self.faces.len()
            )));
        }
        self.face_weights = weights;
        Ok(self)
    }

    pub fn with_outer_face(mut self, f: FaceId) -> Result<Self> {
        if f >= self.faces.len() {
            return Err(Error::Invalid(format!("face {f} does not exist")));
        }
        self.outer_face = Some(f);
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_darts(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn cost(&self, e: EdgeId) -> Cost {
        self.edges[e].cost
    }

    pub fn costs(&self) -> Vec<Cost> {
        self.edges.iter().map(|e| e.cost).collect()
    }

    pub fn total_cost(&self) -> Cost {
        total(self.edges.iter().map(|e| &e.cost))
    }

    pub fn vertex_weights(&self) -> &[u64] {
        &self.vertex_weights
    }

    pub fn face_weights(&self) -> &[u64] {
        &self.face_weights
    }

    pub fn face_weight(&self, f: FaceId) -> u64 {
        self.face_weights[f]
    }

    pub fn total_face_weight(&self) -> u64 {
        self.face_weights.iter().sum()
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer_face
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        let e = &self.edges[d.edge()];
        if d.end() == 0 {
            e.u
        } else {
            e.v
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.rev())
    }

    pub fn dart_cost(&self, d: Dart) -> Cost {
        self.edges[d.edge()].cost
    }

    /// Position of `d` in the rotation of its tail.
    pub fn rot_pos(&self, d: Dart) -> usize {
        self.rot_pos[d.index()]
    }

    /// Next dart clockwise around `tail(d)`.
    pub fn rot_next(&self, d: Dart) -> Dart {
        let list = &self.rotation[self.tail(d)];
        list[(self.rot_pos(d) + 1) % list.len()]
    }

    /// Previous dart clockwise around `tail(d)`.
    pub fn rot_prev(&self, d: Dart) -> Dart {
        let list = &self.rotation[self.tail(d)];
        list[(self.rot_pos(d) + list.len() - 1) % list.len()]
    }

    /// Dart following `d` along the boundary of `face(d)`.
    pub fn succ(&self, d: Dart) -> Dart {
        self.rot_next(d.rev())
    }

    /// Face whose boundary walk contains `d`.
    pub fn face(&self, d: Dart) -> FaceId {
        self.face_of[d.index()]
    }

    pub fn face_boundary(&self, f: FaceId) -> &[Dart] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    /// The two faces on either side of an edge, `(face(2e), face(2e+1))`.
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.face(Dart::new(e, 0)), self.face(Dart::new(e, 1)))
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.num_darts() as u32).map(Dart)
    }

    /// Planar dual. Dual vertex `f` is face `f`; dual face `v` is vertex `v`;
    /// edge and dart ids are shared, with dual dart `d` running from `face(d)`
    /// to `face(rev(d))`. Face weights and vertex weights swap roles.
    pub fn dualize(&self) -> EmbeddedGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, edge)| Edge {
                u: self.face(Dart::new(e, 0)),
                v: self.face(Dart::new(e, 1)),
                cost: edge.cost,
            })
            .collect::<Vec<_>>();
        let rotation = self.faces.clone();
        let mut rot_pos = vec![0; self.num_darts()];
        for list in &rotation {
            for (i, d) in list.iter().enumerate() {
                rot_pos[d.index()] = i;
            }
        }
        let mut dual = EmbeddedGraph {
            vertex_weights: self.face_weights.clone(),
            edges,
            rotation,
            rot_pos,
            faces: Vec::new(),
            face_of: Vec::new(),
            face_weights: Vec::new(),
            outer_face: None,
        };
        if self.num_edges() == 0 {
            dual.trace_faces(None);
        } else {
            let reps: Vec<Dart> = self.rotation.iter().map(|r| r[0]).collect();
            dual.trace_faces(Some(&reps));
        }
        dual.face_weights = self.vertex_weights.clone();
        dual
    }

    /// Ensures a designated outer face with zero weight and a zero-cost
    /// boundary exists. Returns the new graph and the edge id of the added
    /// self-loop, if one was needed. An existing qualifying face with a
    /// simple boundary is preferred (lowest id); otherwise a zero-cost
    /// self-loop is added at vertex 0 and its inside becomes the outer face.
    pub fn normalize_outer(&self) -> (EmbeddedGraph, Option<EdgeId>) {
        if let Some(f) = self.outer_face {
            if self.face_weights[f] == 0 && self.face_is_free(f) {
                return (self.clone(), None);
            }
        }
        for f in 0..self.num_faces() {
            if self.face_weights[f] == 0 && self.face_is_free(f) && self.boundary_is_simple(f) {
                let mut g = self.clone();
                g.outer_face = Some(f);
                return (g, None);
            }
        }
        let e = self.num_edges();
        let mut edges = self.edges.clone();
        edges.push(Edge {
            u: 0,
            v: 0,
            cost: Cost::zero(),
        });
        let mut rotation = self.rotation.clone();
        rotation[0].insert(0, Dart::new(e, 1));
        rotation[0].insert(0, Dart::new(e, 0));
        let mut g = EmbeddedGraph::new(self.vertex_weights.clone(), edges, rotation)
            .expect("adding a self-loop keeps the embedding planar");
        // Keep existing face ids: old face i is the face containing its old
        // first dart (or the new loop dart if the old face was the empty one).
        let mut reps: Vec<Dart> = self
            .faces
            .iter()
            .map(|b| if b.is_empty() { Dart::new(e, 0) } else { b[0] })
            .collect();
        let loop_inside = Dart::new(e, 1);
        reps.push(loop_inside);
        g.trace_faces(Some(&reps));
        let mut fw = self.face_weights.clone();
        fw.push(0);
        g.face_weights = fw;
        let outer = g.face(loop_inside);
        g.outer_face = Some(outer);
        (g, Some(e))
    }

    fn face_is_free(&self, f: FaceId) -> bool {
        self.faces[f].iter().all(|&d| self.dart_cost(d).is_zero())
    }

    fn boundary_is_simple(&self, f: FaceId) -> bool {
        let mut seen = vec![false; self.num_vertices()];
        self.faces[f].iter().all(|&d| {
            let t = self.tail(d);
            !core::mem::replace(&mut seen[t], true)
        })
    }

    /// Sum of costs over a dart sequence.
    pub fn walk_cost(&self, darts: &[Dart]) -> Cost {
        darts.iter().fold(Cost::zero(), |acc, &d| acc + self.dart_cost(d))
    }

    /// Whether consecutive darts chain head to tail (cyclically if `closed`).
    pub fn is_walk(&self, darts: &[Dart], closed: bool) -> bool {
        if darts.is_empty() {
            return false;
        }
        let ok = darts.windows(2).all(|w| self.head(w[0]) == self.tail(w[1]));
        ok && (!closed || self.head(darts[darts.len() - 1]) == self.tail(darts[0]))
    }

    /// The abstract weighted multigraph underlying this embedding.
    pub fn to_weighted(&self) -> super::WeightedGraph {
        super::WeightedGraph::new(
            self.vertex_weights.clone(),
            self.edges.iter().map(|e| (e.u, e.v, e.cost)).collect(),
        )
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::cost::int;

    /// Builds a graph from `(u, v)` pairs and per-vertex clockwise neighbour
    /// lists given as edge indices.
    pub fn from_rotation(weights: Vec<u64>, pairs: &[(usize, usize)], rot: &[&[usize]]) -> EmbeddedGraph {
        let edges: Vec<Edge> = pairs.iter().map(|&(u, v)| Edge { u, v, cost: int(1) }).collect();
        let rotation = rot
            .iter()
            .enumerate()
            .map(|(v, list)| {
                let mut used = Vec::new();
                list.iter()
                    .map(|&e| {
                        let end = if edges[e].u == v && !(edges[e].v == v && used.contains(&e)) {
                            0
                        } else {
                            1
                        };
                        used.push(e);
                        Dart::new(e, end)
                    })
                    .collect()
            })
            .collect();
        EmbeddedGraph::new(weights, edges, rotation).unwrap()
    }

    /// Unit 4-cycle 0-1-2-3 drawn as a square.
    pub fn square() -> EmbeddedGraph {
        from_rotation(
            vec![1; 4],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
            &[&[0, 3], &[1, 0], &[2, 1], &[3, 2]],
        )
    }

    /// K4 with vertex 3 inside triangle 0-1-2.
    pub fn k4() -> EmbeddedGraph {
        from_rotation(
            vec![1; 4],
            &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
            &[&[0, 3, 2], &[1, 4, 0], &[2, 5, 1], &[3, 4, 5]],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::cost::int;

    #[test]
    fn square_counts() {
        let g = square();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces()), (4, 4, 2));
    }

    #[test]
    fn single_self_loop() {
        let g = EmbeddedGraph::new(
            vec![0],
            vec![Edge {
                u: 0,
                v: 0,
                cost: int(1),
            }],
            vec![vec![Dart(0), Dart(1)]],
        )
        .unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_faces()), (1, 1, 2));
    }

    #[test]
    fn duplicated_dart_is_rejected() {
        let edges = (0..4)
            .map(|i| Edge {
                u: i,
                v: (i + 1) % 4,
                cost: int(1),
            })
            .collect();
        let rotation = vec![
            vec![Dart::new(0, 0), Dart::new(0, 0)],
            vec![Dart::new(1, 0), Dart::new(0, 1)],
            vec![Dart::new(2, 0), Dart::new(1, 1)],
            vec![Dart::new(3, 0), Dart::new(2, 1)],
        ];
        let err = EmbeddedGraph::new(vec![1; 4], edges, rotation).unwrap_err();
        assert!(matches!(err, Error::MalformedRotation(_)));
    }

    #[test]
    fn disconnected_is_rejected() {
        let edges = vec![
            Edge {
                u: 0,
                v: 1,
                cost: int(1),
            },
            Edge {
                u: 2,
                v: 3,
                cost: int(1),
            },
        ];
        let rotation = vec![vec![Dart(0)], vec![Dart(1)], vec![Dart(2)], vec![Dart(3)]];
        assert_eq!(
            EmbeddedGraph::new(vec![1; 4], edges, rotation),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        // K4 with one vertex's rotation reversed gives a torus embedding.
        let g = k4();
        let mut rot = g.rotations().to_vec();
        rot[3].reverse();
        let err = EmbeddedGraph::new(g.vertex_weights().to_vec(), g.edges().to_vec(), rot).unwrap_err();
        assert!(matches!(err, Error::NotPlanar(0)));
    }

    #[test]
    fn faces_partition_darts() {
        for g in [square(), k4()] {
            let total: usize = g.faces().iter().map(|f| f.len()).sum();
            assert_eq!(total, g.num_darts());
        }
    }

    #[test]
    fn dual_of_square_is_two_vertices_four_parallel_edges() {
        let d = square().dualize();
        assert_eq!((d.num_vertices(), d.num_edges(), d.num_faces()), (2, 4, 4));
        assert!(d.edges().iter().all(|e| e.u != e.v));
        assert_eq!(d.face_weights(), &[1, 1, 1, 1]);
    }

    #[test]
    fn dual_of_k4() {
        let d = k4().dualize();
        assert_eq!((d.num_vertices(), d.num_edges(), d.num_faces()), (4, 6, 4));
    }

    #[test]
    fn normalize_adds_loop_when_needed() {
        let d = square().dualize();
        let (n, added) = d.normalize_outer();
        assert_eq!(added, Some(4));
        let f = n.outer_face().unwrap();
        assert_eq!(n.face_weight(f), 0);
        assert_eq!(n.face_boundary(f), &[Dart::new(4, 1)]);
        // Old face ids are unchanged.
        for i in 0..d.num_faces() {
            assert_eq!(n.face_weight(i), d.face_weight(i));
            assert!(n.face_boundary(i).contains(&d.face_boundary(i)[0]));
        }
    }
}
