use planar_bisect_core::cost::{cost, int};
use planar_bisect_core::framework::{
    dp_bipartition, scale_weights, solve, solve_report, thin, SolveConfig, Stage, TreeDecomposition, DEFAULT_MAX_STATES,
};
use planar_bisect_core::harness::generate::{generate, grid, Family, GeneratorSpec};
use planar_bisect_core::harness::oracle::exact_bipartition;
use planar_bisect_core::{Cost, Error, WeightedGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Least cut cost for every exact weight of U, by trying all subsets.
fn profile(g: &WeightedGraph, fixed_out: Option<usize>) -> Vec<Option<Cost>> {
    let n = g.num_vertices();
    let mut best = vec![None; g.total_weight() as usize + 1];
    for s in 0u32..1 << n {
        if fixed_out.is_some_and(|f| s >> f & 1 == 1) {
            continue;
        }
        let side: Vec<bool> = (0..n).map(|v| s >> v & 1 == 1).collect();
        let w = g.side_weight(&side) as usize;
        let c = g.cut_cost(&side);
        if best[w].is_none_or(|b| c < b) {
            best[w] = Some(c);
        }
    }
    best
}

fn instance(i: u64) -> WeightedGraph {
    let family = match i % 3 {
        0 => Family::RandomTriangulation {
            vertices: 4 + (i as usize / 3) % 12,
        },
        1 => Family::Grid {
            rows: 2 + (i as usize / 3) % 2,
            cols: 2 + (i as usize / 6) % 3,
        },
        _ => Family::Annulus {
            rings: 1 + (i as usize / 3) % 2,
            spokes: 3 + (i as usize / 6) % 5,
        },
    };
    generate(&GeneratorSpec {
        family,
        max_weight: 2,
        max_cost: 3,
        seed: i,
    })
    .unwrap()
    .to_weighted()
}

#[test]
fn dp_matches_enumeration_on_every_window() {
    for i in 0..30 {
        let g = instance(i);
        assert!(g.num_vertices() <= 15);
        let mut order: Vec<usize> = (0..g.num_vertices()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(i));
        let td = if i % 2 == 0 {
            TreeDecomposition::min_fill(&g)
        } else {
            TreeDecomposition::from_elimination_order(&g, &order)
        }
        .unwrap();
        let fixed = (i % 4 == 3).then_some(0);
        let prof = profile(&g, fixed);
        let w = g.total_weight();
        for lo in 0..=w {
            for hi in lo..=w {
                let expected = prof[lo as usize..=hi as usize].iter().flatten().min().copied();
                match (dp_bipartition(&g, &td, lo, hi, fixed, DEFAULT_MAX_STATES), expected) {
                    (Ok(r), Some(c)) => {
                        assert_eq!(r.solution.cost, c, "instance {i}, window [{lo}, {hi}]");
                        assert!(r.solution.is_consistent(&g));
                        assert!((lo..=hi).contains(&r.solution.weight_u));
                        assert!(fixed.is_none_or(|f| !r.solution.side_u[f]));
                    }
                    (Err(Error::InfeasibleWindow { .. }), None) => {}
                    (got, want) => panic!("instance {i}, [{lo}, {hi}]: {got:?} vs {want:?}"),
                }
            }
        }
    }
}

#[test]
fn square_window_two() {
    let g = grid(2, 2, 1).to_weighted();
    let td = TreeDecomposition::min_fill(&g).unwrap();
    assert_eq!(
        dp_bipartition(&g, &td, 2, 2, None, DEFAULT_MAX_STATES)
            .unwrap()
            .solution
            .cost,
        int(2)
    );
}

#[test]
fn grid_three_by_three_decomposition() {
    let g = grid(3, 3, 1).to_weighted();
    let td = TreeDecomposition::min_fill(&g).unwrap();
    td.validate(&g).unwrap();
    assert_eq!(td.width, 3);
}

#[test]
fn scaled_total_is_bounded() {
    for i in 0..20 {
        let g = generate(&GeneratorSpec {
            family: Family::Grid { rows: 3, cols: 4 },
            max_weight: 1000,
            max_cost: 1,
            seed: i,
        })
        .unwrap()
        .to_weighted();
        for eps in [cost(1, 10), cost(3, 10), cost(1, 2)] {
            let s = scale_weights(&g, eps).unwrap();
            let n = Cost::from_integer(g.num_vertices() as i128);
            assert!(Cost::from_integer(s.scaled.total_weight() as i128) <= n / eps);
            assert!(s.max_truncation() <= eps * Cost::from_integer(g.total_weight() as i128) / n);
        }
    }
}

#[test]
fn solve_matches_oracle_on_small_grids() {
    for (rows, cols) in [(2, 2), (2, 3), (3, 3)] {
        let g = grid(rows, cols, 1);
        let eps = cost(1, 2);
        let r = solve_report(&g, cost(1, 2), eps, &SolveConfig::default()).unwrap();
        let s = r.solution.as_ref().expect("a solution");
        let w = g.to_weighted();
        let half = w.total_weight() / 2;
        let opt = exact_bipartition(&w, half, w.total_weight().div_ceil(2), None).unwrap();
        assert!(s.cost <= (int(1) + int(4) * eps) * opt.cost);
        assert_eq!(r.within_aggregate_window(), Some(true));
        for run in &r.runs {
            assert!(run.cost_chain.unwrap_or(true), "lambda {}", run.lambda);
        }
    }
}

#[test]
fn single_lambda_and_stages() {
    let g = grid(3, 3, 1);
    for stage in [Stage::Spanner, Stage::Thin, Stage::Dp, Stage::All] {
        let cfg = SolveConfig {
            lambda: Some(cost(1, 4)),
            stage,
            ..SolveConfig::default()
        };
        let r = solve_report(&g, cost(1, 2), cost(1, 4), &cfg).unwrap();
        assert_eq!(r.runs.len(), 1);
        assert_eq!(r.solution.is_some(), stage == Stage::All);
    }
}

#[test]
fn tight_state_limit_is_a_resource_skip() {
    let g = grid(3, 3, 1);
    let cfg = SolveConfig {
        max_states: 1,
        ..SolveConfig::default()
    };
    assert!(matches!(
        solve(&g, cost(1, 2), cost(1, 4), &cfg),
        Err(Error::NoFeasibleLambda(_))
    ));
}

fn random_graph() -> impl Strategy<Value = WeightedGraph> {
    (2usize..9).prop_flat_map(|n| {
        let edges = prop::collection::vec((0..n, 0..n, 0i128..4), 0..16);
        let weights = prop::collection::vec(0u64..4, n);
        (weights, edges)
            .prop_map(|(w, e)| WeightedGraph::new(w, e.into_iter().map(|(u, v, c)| (u, v, int(c))).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn thinning_bounds(g in random_graph(), k in 1usize..5) {
        let t = thin(&g, k).unwrap();
        prop_assert!(t.cost * Cost::from_integer(k as i128) <= g.total_cost());
        prop_assert!(t.max_span <= k + 1);
    }

    #[test]
    fn random_orders_give_valid_decompositions(g in random_graph(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.num_vertices()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let td = TreeDecomposition::from_elimination_order(&g, &order).unwrap();
        prop_assert!(td.validate(&g).is_ok());
    }

    #[test]
    fn dp_equals_enumeration_on_random_multigraphs(g in random_graph(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.num_vertices()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let td = TreeDecomposition::from_elimination_order(&g, &order).unwrap();
        let prof = profile(&g, None);
        for (w, c) in prof.iter().enumerate() {
            let r = dp_bipartition(&g, &td, w as u64, w as u64, None, DEFAULT_MAX_STATES);
            prop_assert_eq!(r.ok().map(|r| r.solution.cost), *c);
        }
    }
}
