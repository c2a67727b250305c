use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{crossing, enclosed_faces, Cycle, Dart, EdgeId, EmbeddedGraph, FaceId, VertexId};
use crate::{Error, Result};

/// Tree of mutually non-crossing cycles ordered by enclosure.
///
/// Node `i` is `cycles[i]`; node 0 must be the outer-face boundary and is the
/// root. Children are ordered by enclosed weight, ties by node index.
#[derive(Clone, Debug)]
pub struct RegionTree {
    cycles: Vec<Cycle>,
    enclosed: Vec<Vec<bool>>,
    weights: Vec<u64>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    preorder: Vec<usize>,
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !x || *y)
}

fn disjoint(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !(*x && *y))
}

impl RegionTree {
    pub fn new(g: &EmbeddedGraph, cycles: Vec<Cycle>) -> Result<Self> {
        if cycles.is_empty() {
            return Err(Error::Invalid("region tree needs the outer boundary".into()));
        }
        let enclosed: Vec<Vec<bool>> = cycles
            .iter()
            .map(|c| enclosed_faces(g, c.darts()))
            .collect::<Result<_>>()?;
        let weights: Vec<u64> = enclosed
            .iter()
            .map(|m| {
                m.iter()
                    .zip(g.face_weights())
                    .filter(|(x, _)| **x)
                    .map(|(_, w)| w)
                    .sum()
            })
            .collect();
        let k = cycles.len();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (&enclosed[i], &enclosed[j]);
                if !(subset(a, b) || subset(b, a) || disjoint(a, b)) {
                    return Err(Error::CyclesCross);
                }
                if crossing::cycles_cross(g, &cycles[i], &cycles[j]) {
                    return Err(Error::CyclesCross);
                }
            }
        }
        let size: Vec<usize> = enclosed.iter().map(|m| m.iter().filter(|x| **x).count()).collect();
        let is_anc =
            |j: usize, i: usize| j != i && subset(&enclosed[i], &enclosed[j]) && (enclosed[i] != enclosed[j] || j < i);
        let mut parent = vec![None; k];
        for i in 1..k {
            if !is_anc(0, i) {
                return Err(Error::Invalid(format!("cycle {i} is not inside the root cycle")));
            }
            let mut best: Option<usize> = None;
            for j in 0..k {
                if is_anc(j, i) {
                    best = match best {
                        Some(b) if size[b] < size[j] || (size[b] == size[j] && b > j) => Some(b),
                        _ => Some(j),
                    };
                }
            }
            parent[i] = best;
        }
        let mut children = vec![Vec::new(); k];
        for i in 1..k {
            children[parent[i].unwrap()].push(i);
        }
        for ch in &mut children {
            ch.sort_by_key(|&c| (weights[c], c));
        }
        let mut preorder = Vec::with_capacity(k);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            stack.extend(children[v].iter().rev());
        }
        Ok(RegionTree {
            cycles,
            enclosed,
            weights,
            parent,
            children,
            preorder,
        })
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycle(&self, i: usize) -> &Cycle {
        &self.cycles[i]
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn enclosed(&self, i: usize) -> &[bool] {
        &self.enclosed[i]
    }

    /// Weight enclosed by cycle `i` in the whole graph.
    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Strict ancestry.
    pub fn is_ancestor(&self, a: usize, mut b: usize) -> bool {
        while let Some(p) = self.parent[b] {
            if p == a {
                return true;
            }
            b = p;
        }
        false
    }

    /// Faces of the region of node `i`: enclosed by its cycle, not by a child.
    pub fn region_faces(&self, i: usize) -> Vec<bool> {
        let mut faces = self.enclosed[i].clone();
        for &c in &self.children[i] {
            for (f, inside) in self.enclosed[c].iter().enumerate() {
                if *inside {
                    faces[f] = false;
                }
            }
        }
        faces
    }

    /// Node whose region contains face `f`, if any (the outer face has none).
    pub fn region_of_face(&self, f: FaceId) -> Option<usize> {
        let mut node = None;
        for &v in &self.preorder {
            if self.enclosed[v][f] {
                node = Some(v);
            }
        }
        node
    }

    pub fn region(&self, g: &EmbeddedGraph, i: usize) -> Result<RegionGraph> {
        RegionGraph::new(g, self, i)
    }
}

/// Classification of a face of a region graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    /// A face of the full graph lying in the region.
    Interior(FaceId),
    /// The inside of the hole with this index into `RegionGraph::holes`.
    Hole(usize),
    /// Everything outside the outer boundary.
    Exterior,
}

/// The subgraph of a region as a standalone embedded graph.
///
/// Local edges are the edges with a side in the region plus all boundary
/// edges, numbered in increasing order of their global id; dart ends are
/// kept. Face weights are the global weights on interior faces and zero on
/// holes and the exterior, which is the designated outer face.
#[derive(Clone, Debug)]
pub struct RegionGraph {
    pub node: usize,
    pub graph: EmbeddedGraph,
    pub edge_map: Vec<EdgeId>,
    pub vertex_map: Vec<VertexId>,
    pub local_edge: BTreeMap<EdgeId, EdgeId>,
    pub local_vertex: BTreeMap<VertexId, VertexId>,
    pub face_kind: Vec<FaceKind>,
    /// Tree nodes of the holes, in child order.
    pub holes: Vec<usize>,
    pub hole_weights: Vec<u64>,
    /// Number of global faces inside each hole.
    pub hole_face_counts: Vec<usize>,
    pub exterior: FaceId,
    pub on_boundary: Vec<bool>,
    pub on_outer: Vec<bool>,
    pub region_faces: Vec<bool>,
}

impl RegionGraph {
    fn new(g: &EmbeddedGraph, tree: &RegionTree, node: usize) -> Result<Self> {
        let region_faces = tree.region_faces(node);
        let holes: Vec<usize> = tree.children(node).to_vec();
        let mut include = vec![false; g.num_edges()];
        let mut on_boundary_g = vec![false; g.num_edges()];
        let mut on_outer_g = vec![false; g.num_edges()];
        for (e, inc) in include.iter_mut().enumerate() {
            let (a, b) = g.edge_faces(e);
            *inc = region_faces[a] || region_faces[b];
        }
        for e in tree.cycle(node).edges() {
            include[e] = true;
            on_boundary_g[e] = true;
            on_outer_g[e] = true;
        }
        for &h in &holes {
            for e in tree.cycle(h).edges() {
                include[e] = true;
                on_boundary_g[e] = true;
            }
        }
        let edge_map: Vec<EdgeId> = (0..g.num_edges()).filter(|&e| include[e]).collect();
        let local_edge: BTreeMap<EdgeId, EdgeId> = edge_map.iter().enumerate().map(|(l, &e)| (e, l)).collect();
        let mut vertex_map: Vec<VertexId> = edge_map.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        let local_vertex: BTreeMap<VertexId, VertexId> = vertex_map.iter().enumerate().map(|(l, &v)| (v, l)).collect();
        let edges = edge_map
            .iter()
            .map(|&e| {
                let ge = g.edge(e);
                super::Edge {
                    u: local_vertex[&ge.u],
                    v: local_vertex[&ge.v],
                    cost: ge.cost,
                }
            })
            .collect();
        let rotation = vertex_map
            .iter()
            .map(|&v| {
                g.rotation(v)
                    .iter()
                    .filter(|d| include[d.edge()])
                    .map(|d| Dart::new(local_edge[&d.edge()], d.end()))
                    .collect()
            })
            .collect();
        let local = EmbeddedGraph::new(vec![0; vertex_map.len()], edges, rotation)?;
        let to_global = |d: Dart| Dart::new(edge_map[d.edge()], d.end());
        let mut face_kind = Vec::with_capacity(local.num_faces());
        let mut weights = Vec::with_capacity(local.num_faces());
        let mut exterior = None;
        for f in 0..local.num_faces() {
            let gf = g.face(to_global(local.face_boundary(f)[0]));
            let kind = if region_faces[gf] {
                FaceKind::Interior(gf)
            } else if let Some(h) = holes.iter().position(|&h| tree.enclosed(h)[gf]) {
                FaceKind::Hole(h)
            } else {
                if exterior.replace(f).is_some() {
                    return Err(Error::InvariantViolation("region has two exterior faces".into()));
                }
                FaceKind::Exterior
            };
            weights.push(if let FaceKind::Interior(gf) = kind {
                g.face_weight(gf)
            } else {
                0
            });
            face_kind.push(kind);
        }
        let exterior = exterior.ok_or_else(|| Error::InvariantViolation("region has no exterior face".into()))?;
        let graph = local.with_face_weights(weights)?.with_outer_face(exterior)?;
        let hole_weights = holes.iter().map(|&h| tree.weight(h)).collect();
        let hole_face_counts = holes
            .iter()
            .map(|&h| tree.enclosed(h).iter().filter(|x| **x).count())
            .collect();
        let on_boundary = edge_map.iter().map(|&e| on_boundary_g[e]).collect();
        let on_outer = edge_map.iter().map(|&e| on_outer_g[e]).collect();
        Ok(RegionGraph {
            node,
            graph,
            edge_map,
            vertex_map,
            local_edge,
            local_vertex,
            face_kind,
            holes,
            hole_weights,
            hole_face_counts,
            exterior,
            on_boundary,
            on_outer,
            region_faces,
        })
    }

    pub fn to_global(&self, d: Dart) -> Dart {
        Dart::new(self.edge_map[d.edge()], d.end())
    }

    pub fn to_local(&self, d: Dart) -> Option<Dart> {
        self.local_edge.get(&d.edge()).map(|&l| Dart::new(l, d.end()))
    }

    /// Local face of hole `h`.
    pub fn hole_face(&self, h: usize) -> FaceId {
        self.face_kind
            .iter()
            .position(|k| *k == FaceKind::Hole(h))
            .expect("every hole has a face")
    }

    /// Index of the heaviest hole, ties to the lowest tree node.
    pub fn heaviest_hole(&self) -> Option<usize> {
        (0..self.holes.len()).max_by_key(|&h| (self.hole_weights[h], core::cmp::Reverse(self.holes[h])))
    }

    /// Edge not on the boundary of the region.
    pub fn is_strict(&self, local_edge: EdgeId) -> bool {
        !self.on_boundary[local_edge]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::grid;

    fn dual_grid(r: usize, c: usize) -> EmbeddedGraph {
        grid(r, c, 1).dualize().normalize_outer().0
    }

    #[test]
    fn root_only() {
        let g = dual_grid(2, 2);
        let f = g.outer_face().unwrap();
        let root = Cycle::new(&g, g.face_boundary(f).to_vec()).unwrap();
        let t = RegionTree::new(&g, vec![root]).unwrap();
        assert_eq!(t.preorder(), &[0]);
        assert_eq!(t.weight(0), 4);
        let r = t.region(&g, 0).unwrap();
        assert!(r.holes.is_empty());
        assert_eq!(r.graph.num_faces(), g.num_faces());
    }
}
