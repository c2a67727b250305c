//! Seeded instance generators. Every generator returns a connected primal
//! instance with vertex weights and integer edge costs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::int;
use crate::planar::{Cycle, Dart, Edge, EmbeddedGraph, RegionGraph, RegionTree};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Grid {
        rows: usize,
        cols: usize,
    },
    /// Concentric rings joined by spokes; ring 0 is innermost.
    Annulus {
        rings: usize,
        spokes: usize,
    },
    RandomTriangulation {
        vertices: usize,
    },
    /// Rings whose ring edges are cheap and spokes expensive, so that
    /// cutting around the centre at any depth is a low-ratio cycle.
    NestedCycles {
        depth: usize,
        spokes: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    /// Vertex weights are drawn from `1..=max_weight`.
    pub max_weight: u64,
    /// Edge costs are drawn from `1..=max_cost`.
    pub max_cost: u64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn unit(family: Family) -> Self {
        GeneratorSpec {
            family,
            max_weight: 1,
            max_cost: 1,
            seed: 0,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<EmbeddedGraph> {
    if spec.max_weight == 0 || spec.max_cost == 0 {
        return Err(Error::Invalid("weight and cost ranges must be nonempty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, pairs, rotation) = match spec.family {
        Family::Grid { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(Error::Invalid("grid needs at least one row and column".into()));
            }
            grid_shape(rows, cols)
        }
        Family::Annulus { rings, spokes } => {
            if rings == 0 || spokes < 3 {
                return Err(Error::Invalid("annulus needs a ring and at least 3 spokes".into()));
            }
            annulus_shape(rings, spokes)
        }
        Family::RandomTriangulation { vertices } => {
            if vertices < 3 {
                return Err(Error::Invalid("triangulation needs at least 3 vertices".into()));
            }
            triangulation_shape(vertices, &mut rng)
        }
        Family::NestedCycles { depth, spokes } => {
            if depth == 0 || spokes < 3 {
                return Err(Error::Invalid("nested cycles need depth >= 1 and 3 spokes".into()));
            }
            let (n, pairs, rot) = annulus_shape(depth, spokes);
            let ring_edges = depth * spokes;
            let weights = (0..n).map(|v| (depth - v / spokes) as u64 * spec.max_weight).collect();
            let costs = (0..pairs.len())
                .map(|e| if e < ring_edges { 1 } else { spec.max_cost + 1 })
                .collect();
            return build(weights, &pairs, costs, rot);
        }
    };
    let weights = (0..n).map(|_| rng.gen_range(1..=spec.max_weight)).collect();
    let costs = (0..pairs.len()).map(|_| rng.gen_range(1..=spec.max_cost)).collect();
    build(weights, &pairs, costs, rotation)
}

/// Unit-cost grid with constant vertex weight.
pub fn grid(rows: usize, cols: usize, weight: u64) -> EmbeddedGraph {
    let (n, pairs, rot) = grid_shape(rows, cols);
    build(vec![weight; n], &pairs, vec![1; pairs.len()], rot).expect("grid is planar")
}

/// Unit-cost annulus with constant vertex weight.
pub fn annulus(rings: usize, spokes: usize, weight: u64) -> EmbeddedGraph {
    let (n, pairs, rot) = annulus_shape(rings, spokes);
    build(vec![weight; n], &pairs, vec![1; pairs.len()], rot).expect("annulus is planar")
}

/// Normalized duals of small seeded instances, each with at most
/// `max_faces` faces: triangulations, grids and annuli with weights and
/// costs in `1..=3`.
pub fn dual_corpus(max_faces: usize, seeds: u64) -> Vec<EmbeddedGraph> {
    let mut families = Vec::new();
    for n in 3..max_faces {
        families.push(Family::RandomTriangulation { vertices: n });
    }
    for (rows, cols) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        families.push(Family::Grid { rows, cols });
    }
    for spokes in 3..6 {
        families.push(Family::Annulus { rings: 2, spokes });
    }
    let mut out = Vec::new();
    for family in families {
        for seed in 0..seeds {
            let spec = GeneratorSpec {
                family,
                max_weight: 3,
                max_cost: 3,
                seed,
            };
            let dual = generate(&spec)
                .expect("corpus families are valid")
                .dualize()
                .normalize_outer()
                .0;
            if dual.num_faces() <= max_faces {
                out.push(dual);
            }
        }
    }
    out
}

/// The annulus `spec` as a region: the face inside the outermost ring is
/// the exterior, the face inside ring 0 is a hole, and `extra_holes` lists
/// further faces to cut out as holes. Face weights are the vertex weights
/// of `spec`'s generator draw, shifted onto faces in order.
pub fn annular_region(rings: usize, spokes: usize, seed: u64, extra_holes: &[usize]) -> Result<RegionGraph> {
    let spec = GeneratorSpec {
        family: Family::Annulus { rings, spokes },
        max_weight: 3,
        max_cost: 3,
        seed,
    };
    let g = generate(&spec)?;
    let ring_face = |i: usize| {
        (0..g.num_faces()).find(|&f| {
            g.face_boundary(f)
                .iter()
                .all(|d| d.edge() / spokes == i && d.edge() < rings * spokes)
        })
    };
    let (Some(outer), Some(inner)) = (ring_face(rings - 1), ring_face(0)) else {
        return Err(Error::Invalid("annulus rings not found".into()));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = (0..g.num_faces())
        .map(|f| if f == outer { 0 } else { rng.gen_range(1..=3) })
        .collect();
    let g = g.with_face_weights(weights)?.with_outer_face(outer)?;
    let mut cycles = vec![
        Cycle::new(&g, g.face_boundary(outer).to_vec())?,
        Cycle::new(&g, g.face_boundary(inner).to_vec())?,
    ];
    for &f in extra_holes {
        if f == outer || f == inner || f >= g.num_faces() {
            return Err(Error::Invalid(format!("face {f} cannot be an extra hole")));
        }
        cycles.push(Cycle::new(&g, g.face_boundary(f).to_vec())?);
    }
    RegionTree::new(&g, cycles)?.region(&g, 0)
}

/// The instance `spec` as a hole-free region bounded by its longest face
/// (lowest id on ties), with face weights drawn from `1..=3`.
pub fn disk_region(spec: &GeneratorSpec) -> Result<RegionGraph> {
    let g = generate(spec)?;
    let outer = (0..g.num_faces())
        .max_by_key(|&f| (g.face_boundary(f).len(), core::cmp::Reverse(f)))
        .ok_or_else(|| Error::Invalid("instance has no faces".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x5eed);
    let weights = (0..g.num_faces())
        .map(|f| if f == outer { 0 } else { rng.gen_range(1..=3) })
        .collect();
    let g = g.with_face_weights(weights)?.with_outer_face(outer)?;
    let boundary = Cycle::new(&g, g.face_boundary(outer).to_vec())?;
    RegionTree::new(&g, vec![boundary])?.region(&g, 0)
}

type Shape = (usize, Vec<(usize, usize)>, Vec<Vec<Dart>>);

fn build(
    weights: Vec<u64>,
    pairs: &[(usize, usize)],
    costs: Vec<u64>,
    rotation: Vec<Vec<Dart>>,
) -> Result<EmbeddedGraph> {
    let edges = pairs
        .iter()
        .zip(costs)
        .map(|(&(u, v), c)| Edge {
            u,
            v,
            cost: int(c as i128),
        })
        .collect();
    EmbeddedGraph::new(weights, edges, rotation)
}

fn grid_shape(rows: usize, cols: usize) -> Shape {
    let id = |r: usize, c: usize| r * cols + c;
    let mut pairs = Vec::new();
    let mut right = vec![None; rows * cols];
    let mut down = vec![None; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                right[id(r, c)] = Some(pairs.len());
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                down[id(r, c)] = Some(pairs.len());
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let mut rotation = vec![Vec::new(); rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            let v = id(r, c);
            let rot = &mut rotation[v];
            if r > 0 {
                rot.push(Dart::new(down[id(r - 1, c)].unwrap(), 1));
            }
            if let Some(e) = right[v] {
                rot.push(Dart::new(e, 0));
            }
            if let Some(e) = down[v] {
                rot.push(Dart::new(e, 0));
            }
            if c > 0 {
                rot.push(Dart::new(right[id(r, c - 1)].unwrap(), 1));
            }
        }
    }
    (rows * cols, pairs, rotation)
}

fn annulus_shape(rings: usize, spokes: usize) -> Shape {
    let id = |i: usize, j: usize| i * spokes + j;
    let mut pairs = Vec::new();
    for i in 0..rings {
        for j in 0..spokes {
            pairs.push((id(i, j), id(i, (j + 1) % spokes)));
        }
    }
    let ring_edge = |i: usize, j: usize| i * spokes + j;
    let spoke_base = rings * spokes;
    for i in 0..rings.saturating_sub(1) {
        for j in 0..spokes {
            pairs.push((id(i, j), id(i + 1, j)));
        }
    }
    let spoke_edge = |i: usize, j: usize| spoke_base + i * spokes + j;
    let mut rotation = vec![Vec::new(); rings * spokes];
    for i in 0..rings {
        for j in 0..spokes {
            let rot = &mut rotation[id(i, j)];
            if i + 1 < rings {
                rot.push(Dart::new(spoke_edge(i, j), 0));
            }
            rot.push(Dart::new(ring_edge(i, j), 0));
            if i > 0 {
                rot.push(Dart::new(spoke_edge(i - 1, j), 1));
            }
            rot.push(Dart::new(ring_edge(i, (j + spokes - 1) % spokes), 1));
        }
    }
    (rings * spokes, pairs, rotation)
}

fn triangulation_shape(n: usize, rng: &mut ChaCha8Rng) -> Shape {
    let mut pairs = vec![(0, 1), (1, 2), (2, 0)];
    let mut rotation = vec![
        vec![Dart::new(0, 0), Dart::new(2, 1)],
        vec![Dart::new(1, 0), Dart::new(0, 1)],
        vec![Dart::new(2, 0), Dart::new(1, 1)],
    ];
    for x in 3..n {
        let edges = pairs.iter().map(|&(u, v)| Edge { u, v, cost: int(1) }).collect();
        let g = EmbeddedGraph::new(vec![0; x], edges, rotation.clone()).expect("stacked triangulation is planar");
        let f = rng.gen_range(0..g.num_faces());
        let b = g.face_boundary(f);
        debug_assert_eq!(b.len(), 3, "{}", format!("face {f} is not a triangle"));
        rotation.push(Vec::new());
        let mut new_out = Vec::new();
        for &d in b {
            // d runs from corner a to corner h; the face sits clockwise
            // after rev(d) at h.
            let h = g.head(d);
            let e = pairs.len();
            pairs.push((h, x));
            let pos = rotation[h].iter().position(|&o| o == d.rev()).unwrap();
            rotation[h].insert(pos + 1, Dart::new(e, 0));
            new_out.push(Dart::new(e, 1));
        }
        // Arrivals at x come from heads of b[0], b[1], b[2]; x's rotation
        // must be (to head(b2), to head(b1), to head(b0)) cyclically.
        rotation[x] = vec![new_out[2], new_out[1], new_out[0]];
    }
    (n, pairs, rotation)
}
