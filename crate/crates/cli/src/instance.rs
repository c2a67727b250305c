//! Instance files: a JSON rendering of an embedded, vertex-weighted primal
//! graph.
//!
//! ```json
//! {
//!   "vertices": [{"id": 0, "weight": 1}, ...],
//!   "edges": [{"id": 0, "u": 0, "v": 1, "cost_num": 1, "cost_den": 1}, ...],
//!   "rotation": {"0": [[0, 0], [3, 1]], ...},
//!   "outer_face": [[0, 1], ...]
//! }
//! ```
//!
//! A dart is `[edge, end]`; end 0 leaves `u`, end 1 leaves `v`. Rotation
//! lists are clockwise. The canonical form has ids in order, costs in lowest
//! terms, the outer face (if any) starting at its first traced dart, and is
//! pretty-printed with a trailing newline.

use std::collections::BTreeMap;
use std::path::Path;

use planar_bisect_core::planar::{Dart, Edge};
use planar_bisect_core::{Cost, EmbeddedGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed instance: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] planar_bisect_core::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: usize,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: usize,
    pub u: usize,
    pub v: usize,
    pub cost_num: i128,
    pub cost_den: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub rotation: BTreeMap<usize, Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<Vec<(usize, usize)>>,
}

fn dart(d: Dart) -> (usize, usize) {
    (d.edge(), d.end())
}

impl InstanceFile {
    pub fn from_graph(g: &EmbeddedGraph) -> Self {
        let vertices = g
            .vertex_weights()
            .iter()
            .enumerate()
            .map(|(id, &weight)| VertexRecord { id, weight })
            .collect();
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, e)| EdgeRecord {
                id,
                u: e.u,
                v: e.v,
                cost_num: *e.cost.numer(),
                cost_den: *e.cost.denom(),
            })
            .collect();
        let rotation = (0..g.num_vertices())
            .map(|v| (v, g.rotation(v).iter().map(|&d| dart(d)).collect()))
            .collect();
        let outer_face = g
            .outer_face()
            .map(|f| g.face_boundary(f).iter().map(|&d| dart(d)).collect());
        InstanceFile {
            vertices,
            edges,
            rotation,
            outer_face,
        }
    }

    pub fn to_graph(&self) -> Result<EmbeddedGraph, InstanceError> {
        let bad = |m: String| Err(InstanceError::Invalid(m));
        let n = self.vertices.len();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return bad(format!("vertex at position {i} has id {}", v.id));
            }
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            if e.id != i {
                return bad(format!("edge at position {i} has id {}", e.id));
            }
            if e.cost_den <= 0 || e.cost_num < 0 {
                return bad(format!("edge {i} has cost {}/{}", e.cost_num, e.cost_den));
            }
            edges.push(Edge {
                u: e.u,
                v: e.v,
                cost: Cost::new(e.cost_num, e.cost_den),
            });
        }
        if self.rotation.len() != n || self.rotation.keys().enumerate().any(|(i, &k)| i != k) {
            return bad("rotation must list every vertex exactly once".into());
        }
        let m = edges.len();
        let to_dart = move |(e, end): (usize, usize)| -> Result<Dart, InstanceError> {
            if e >= m || end > 1 {
                return Err(InstanceError::Invalid(format!("dart [{e}, {end}] does not exist")));
            }
            Ok(Dart::new(e, end))
        };
        let rotation = self
            .rotation
            .values()
            .map(|list| list.iter().map(|&d| to_dart(d)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let weights = self.vertices.iter().map(|v| v.weight).collect();
        let mut g = EmbeddedGraph::new(weights, edges, rotation)?;
        if let Some(walk) = &self.outer_face {
            let darts = walk.iter().map(|&d| to_dart(d)).collect::<Result<Vec<_>, _>>()?;
            let Some(&first) = darts.first() else {
                return bad("outer face is empty".into());
            };
            let f = g.face(first);
            let boundary = g.face_boundary(f);
            let start = boundary.iter().position(|&d| d == first).expect("dart is on its face");
            let rotated: Vec<Dart> = boundary[start..].iter().chain(&boundary[..start]).copied().collect();
            if rotated != darts {
                return bad("outer face darts do not trace a face".into());
            }
            g = g.with_outer_face(f)?;
        }
        Ok(g)
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }
}

pub fn parse_instance(text: &str) -> Result<EmbeddedGraph, InstanceError> {
    serde_json::from_str::<InstanceFile>(text)?.to_graph()
}

pub fn read_instance(path: &Path) -> Result<EmbeddedGraph, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text)
}

pub fn write_instance_string(g: &EmbeddedGraph) -> String {
    InstanceFile::from_graph(g).to_canonical_string()
}

/// Re-emits a file in canonical form.
pub fn canonicalize(text: &str) -> Result<String, InstanceError> {
    Ok(write_instance_string(&parse_instance(text)?))
}
