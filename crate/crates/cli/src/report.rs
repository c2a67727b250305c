//! JSON renderings of the core results.

use planar_bisect_core::clustering::{ClusterEvent, WellConnectedCover};
use planar_bisect_core::cycles::WeightCycleTable;
use planar_bisect_core::framework::{BipartitionSolution, LambdaRun, RunOutcome, SolveReport};
use planar_bisect_core::harness::VerifyReport;
use planar_bisect_core::skeleton::{Skeleton, SkeletonEvent};
use planar_bisect_core::spanner::{SpannerEdges, Tag};
use planar_bisect_core::{Cost, Cycle, Dart, EmbeddedGraph};
use serde_json::{json, Value};

fn c(x: Cost) -> Value {
    Value::String(x.to_string())
}

fn oc(x: Option<Cost>) -> Value {
    x.map_or(Value::Null, c)
}

fn darts(ds: &[Dart]) -> Value {
    ds.iter().map(|d| json!([d.edge(), d.end()])).collect()
}

fn cycle(cy: &Cycle) -> Value {
    darts(cy.darts())
}

pub fn solution(s: &BipartitionSolution) -> Value {
    let u: Vec<usize> = (0..s.side_u.len()).filter(|&v| s.side_u[v]).collect();
    json!({
        "cost": c(s.cost),
        "weight_u": s.weight_u,
        "total_weight": s.total_weight,
        "b_prime": c(s.b_prime()),
        "u": u,
    })
}

fn outcome(o: &RunOutcome) -> Value {
    match o {
        RunOutcome::Completed => json!("completed"),
        RunOutcome::Infeasible => json!("infeasible-window"),
        RunOutcome::ResourceSkip(why) => json!({ "resource-skip": why }),
    }
}

fn run(r: &LambdaRun) -> Value {
    let tags: serde_json::Map<String, Value> = Tag::ALL
        .iter()
        .zip(&r.tag_costs)
        .map(|(t, &x)| (t.name().to_string(), c(x)))
        .collect();
    json!({
        "lambda": c(r.lambda),
        "outcome": outcome(&r.outcome),
        "spanner_cost": c(r.spanner_cost),
        "tag_costs": tags,
        "contracted_vertices": r.contracted_vertices,
        "contracted_cost": c(r.contracted_cost),
        "rho": c(r.rho),
        "k_raw": r.k_raw,
        "k": r.k,
        "k_clamped": r.k_clamped,
        "thinning_cost": oc(r.thinning_cost),
        "max_span": r.max_span,
        "width": r.width,
        "dp_states": r.dp_states,
        "dp_cost": oc(r.dp_cost),
        "dp_weight": r.dp_weight,
        "contracted_opt": oc(r.contracted_opt),
        "cost_chain": r.cost_chain,
        "lifted": r.lifted.as_ref().map(solution),
    })
}

pub fn solve(r: &SolveReport) -> Value {
    json!({
        "b": c(r.b),
        "epsilon": c(r.epsilon),
        "stage": r.stage.name(),
        "vertices": r.num_vertices,
        "total_weight": r.total_weight,
        "scaled_total": r.scaled_total,
        "unit": c(r.unit),
        "dp_window": [r.dp_window.0, r.dp_window.1],
        "aggregate_epsilon": c(r.aggregate_epsilon),
        "aggregate_window": [c(r.aggregate_window.0), c(r.aggregate_window.1)],
        "within_aggregate_window": r.within_aggregate_window(),
        "best_run": r.best,
        "solution": r.solution.as_ref().map(solution),
        "runs": r.runs.iter().map(run).collect::<Vec<_>>(),
    })
}

pub fn skeleton(g: &EmbeddedGraph, s: &Skeleton) -> Value {
    let t = &s.tree;
    let cycles: Vec<Value> = s
        .cycles()
        .map(|sc| {
            json!({
                "id": sc.id,
                "cost": c(sc.cost),
                "weight": sc.weight,
                "region_weight": sc.region_weight,
                "found_in": sc.found_in,
                "darts": cycle(&sc.cycle),
            })
        })
        .collect();
    let events: Vec<Value> = s
        .events
        .iter()
        .map(|e| match e {
            SkeletonEvent::Insert { id, region } => json!({ "insert": id, "region": region }),
            SkeletonEvent::Pointer { ptr, splice } => {
                json!({ "pointer": ptr, "p": splice.p, "q": splice.q, "removed": splice.removed })
            }
        })
        .collect();
    let counts = s.charge_counts(g.num_faces());
    let mut histogram = vec![0u64; counts.iter().copied().max().unwrap_or(0) as usize + 1];
    for &k in &counts {
        histogram[k as usize] += 1;
    }
    json!({
        "alpha": c(s.alpha),
        "total_weight": s.total_weight,
        "cost": c(s.total_cost()),
        "cost_bound": c(s.cost_bound()),
        "cycles": cycles,
        "parent": (0..t.len()).map(|i| t.parent(i)).collect::<Vec<_>>(),
        "preorder": t.preorder(),
        "events": events,
        "charge_histogram": histogram,
    })
}

pub fn spanner(s: &SpannerEdges) -> Value {
    let tags: serde_json::Map<String, Value> = Tag::ALL
        .iter()
        .map(|&t| {
            let edges: Vec<usize> = (0..s.edges.len()).filter(|&e| s.tag_mask(t)[e]).collect();
            (
                t.name().to_string(),
                json!({ "cost": c(s.tag_cost(t)), "edges": edges }),
            )
        })
        .collect();
    let regions: Vec<Value> = s
        .regions
        .iter()
        .map(|r| {
            json!({
                "node": r.node,
                "holes": r.holes,
                "boundary_cost": c(r.boundary_cost),
                "shortcut_cost": c(r.shortcut_cost),
                "cover_components": r.cover_components,
                "enclosing_cycle": r.enclosing_cycle.as_ref().map(cycle),
            })
        })
        .collect();
    json!({
        "lambda": c(s.lambda),
        "epsilon": c(s.epsilon),
        "cost": c(s.cost),
        "cost_ratio": oc(s.cost_ratio()),
        "edges": s.edge_list(),
        "tags": tags,
        "regions": regions,
    })
}

pub fn cluster(node: usize, w: &WellConnectedCover) -> Value {
    let z = &w.clustering;
    let events: Vec<Value> = z
        .events
        .iter()
        .map(|e| match e {
            ClusterEvent::Tight { time, edge } => json!({ "tight": edge, "time": c(*time) }),
            ClusterEvent::Inactive { time, members } => json!({ "inactive": members, "time": c(*time) }),
            ClusterEvent::Pruned { members, edges } => json!({ "pruned": edges, "members": members }),
        })
        .collect();
    json!({
        "region": node,
        "potentials": w.potentials.iter().map(|&p| c(p)).collect::<Vec<_>>(),
        "z": z.z,
        "z_cost": c(z.cost),
        "total_potential": c(z.total_potential),
        "within_twice_potential": z.cost <= Cost::from_integer(2) * z.total_potential,
        "events": events,
        "cover_edges": (0..w.edges.len()).filter(|&e| w.edges[e]).collect::<Vec<_>>(),
        "components": w.num_components,
        "cost": c(w.cost),
    })
}

pub fn table(t: &WeightCycleTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|(w, (cost, cy))| json!({ "weight": w, "cost": c(*cost), "darts": cycle(cy) }))
        .collect();
    json!({ "root": t.root, "rows": rows })
}

pub fn verify(r: &VerifyReport) -> Value {
    json!({
        "lambda": oc(r.lambda),
        "passed": r.passed(),
        "checks": r.checks.iter().map(|k| json!({
            "name": k.name,
            "status": k.status.name(),
            "detail": k.detail,
        })).collect::<Vec<_>>(),
    })
}
