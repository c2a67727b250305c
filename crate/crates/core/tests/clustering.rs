use planar_bisect_core::clustering::{build_well_connected_cover, pc_cluster, PotentialGraph};
use planar_bisect_core::cost::{cost, int};
use planar_bisect_core::cover::DoubleCover;
use planar_bisect_core::harness::generate::{annular_region, generate, Family, GeneratorSpec};
use planar_bisect_core::planar::WeightedGraph;
use planar_bisect_core::Cost;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(u, v) in edges {
            let m = label[u].min(label[v]);
            if label[u] != m || label[v] != m {
                label[u] = m;
                label[v] = m;
                changed = true;
            }
        }
        if !changed {
            return label;
        }
    }
}

fn instance(seed: u64) -> PotentialGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=12);
    let spec = GeneratorSpec {
        family: Family::RandomTriangulation { vertices: n },
        max_weight: 1,
        max_cost: 6,
        seed,
    };
    let g = generate(&spec).unwrap().to_weighted();
    // thin the triangulation so not everything is adjacent
    let edges: Vec<_> = g.edges.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
    let potentials = (0..n)
        .map(|_| {
            if rng.gen_bool(0.4) {
                int(0)
            } else {
                cost(rng.gen_range(1..12), 2)
            }
        })
        .collect();
    PotentialGraph {
        graph: WeightedGraph::new(vec![0; n], edges),
        potentials,
    }
}

#[test]
fn cost_bound_and_existential_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for seed in 0..50 {
        let p = instance(seed);
        let g = &p.graph;
        let n = g.num_vertices();
        let z = pc_cluster(&p).unwrap();
        assert!(z.cost <= int(2) * z.total_potential);
        let zc = components(
            n,
            &z.z.iter().map(|&e| (g.edges[e].0, g.edges[e].1)).collect::<Vec<_>>(),
        );
        for _ in 0..50 {
            let h: Vec<usize> = (0..g.num_edges()).filter(|_| rng.gen_bool(0.3)).collect();
            let hc = components(n, &h.iter().map(|&e| (g.edges[e].0, g.edges[e].1)).collect::<Vec<_>>());
            let ch: Cost = h.iter().map(|&e| g.edges[e].2).sum();
            let ok = (0u32..1 << n).any(|u| {
                let phi: Cost = (0..n).filter(|&v| u >> v & 1 == 1).map(|v| p.potentials[v]).sum();
                if phi > ch {
                    return false;
                }
                (0..n).all(|a| (0..n).all(|b| u >> a & 1 == 1 || u >> b & 1 == 1 || hc[a] != hc[b] || zc[a] == zc[b]))
            });
            assert!(ok, "seed {seed} H {h:?}");
        }
    }
}

#[test]
fn clustering_is_deterministic() {
    for seed in 0..10 {
        let p = instance(seed);
        assert_eq!(pc_cluster(&p).unwrap().z, pc_cluster(&p).unwrap().z);
    }
}

#[test]
fn far_components_stay_apart_with_tiny_potential() {
    // two cheap boundary pieces joined only by an expensive path
    let g = WeightedGraph::new(vec![0; 4], vec![(0, 1, int(100)), (1, 2, int(100)), (2, 3, int(100))]);
    let p = PotentialGraph {
        graph: g,
        potentials: vec![cost(1, 10), int(0), int(0), cost(1, 10)],
    };
    assert!(pc_cluster(&p).unwrap().z.is_empty());
}

#[test]
fn near_components_join_with_large_potential() {
    let g = WeightedGraph::new(vec![0; 3], vec![(0, 1, int(1)), (1, 2, int(1))]);
    let p = PotentialGraph {
        graph: g,
        potentials: vec![int(50), int(0), int(50)],
    };
    let z = pc_cluster(&p).unwrap();
    assert_eq!(z.z, [0, 1]);
}

#[test]
fn well_connected_cover_of_annulus() {
    for seed in 0..5 {
        let r = annular_region(3, 4, seed, &[]).unwrap();
        let cover = DoubleCover::new(r).unwrap();
        for eps in [cost(1, 10), cost(1, 2), int(100)] {
            let w = build_well_connected_cover(&cover, eps).unwrap();
            let phi: Cost = w.potentials.iter().sum();
            assert!(w.clustering.cost <= int(2) * phi);
            let boundary_cost: Cost = (0..cover.graph.num_edges())
                .filter(|&e| w.boundary[e])
                .map(|e| cover.graph.cost(e))
                .sum();
            assert_eq!(phi, boundary_cost / eps);
            assert!(w.num_components >= 1);
            // boundary lifts: outer boundary doubles into one cycle, the hole into another
            let comps = w.component_edges(&cover);
            assert_eq!(
                comps.iter().map(Vec::len).sum::<usize>(),
                w.edges.iter().filter(|x| **x).count()
            );
        }
        // small epsilon makes potentials large enough to connect outer and hole
        let w = build_well_connected_cover(&cover, cost(1, 100)).unwrap();
        assert_eq!(w.num_components, 1);
        let w = build_well_connected_cover(&cover, int(1000)).unwrap();
        assert_eq!(w.num_components, 2);
    }
}
