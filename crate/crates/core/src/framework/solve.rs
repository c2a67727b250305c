//! The end-to-end solver: a sweep over lambda, and for each value spanner,
//! contraction, thinning, decomposition, DP and lifting.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::framework::{
    dp_bipartition, scale_weights, thin, BipartitionSolution, TreeDecomposition, DEFAULT_MAX_STATES,
};
use crate::harness::oracle::exact_bipartition;
use crate::planar::{contract_edges, Contraction, EmbeddedGraph, VertexId, WeightedGraph};
use crate::skeleton::SkeletonConfig;
use crate::spanner::{build_spanner_with, window, SpannerEdges};
use crate::{Cost, Error, Result};

/// How far each lambda run goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Spanner,
    Thin,
    Dp,
    All,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Spanner => "spanner",
            Stage::Thin => "thin",
            Stage::Dp => "dp",
            Stage::All => "all",
        }
    }
}

impl core::str::FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Stage> {
        match s {
            "spanner" => Ok(Stage::Spanner),
            "thin" => Ok(Stage::Thin),
            "dp" => Ok(Stage::Dp),
            "all" => Ok(Stage::All),
            _ => Err(Error::Invalid(format!("unknown stage {s}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Run a single lambda instead of the sweep.
    pub lambda: Option<Cost>,
    pub k_max: usize,
    pub max_states: usize,
    pub stage: Stage,
    /// Largest contracted graph on which the cost chain is checked against
    /// enumeration.
    pub chain_check_vertices: usize,
    pub skeleton: SkeletonConfig,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            lambda: None,
            k_max: 8,
            max_states: DEFAULT_MAX_STATES,
            stage: Stage::All,
            chain_check_vertices: 20,
            skeleton: SkeletonConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    /// Went through every requested stage.
    Completed,
    /// The DP window had no achievable weight.
    Infeasible,
    /// Abandoned on a resource limit.
    ResourceSkip(String),
}

/// Measurements of one lambda run. Costs are in original units.
#[derive(Clone, Debug)]
pub struct LambdaRun {
    pub lambda: Cost,
    pub spanner_cost: Cost,
    pub tag_costs: Vec<Cost>,
    pub contracted_vertices: usize,
    /// `c(G^)`; below the spanner cost when spanner edges close loops.
    pub contracted_cost: Cost,
    /// Measured `c(S) / (lambda W)`.
    pub rho: Cost,
    /// `ceil(rho / eps)` before clamping (saturating).
    pub k_raw: u64,
    pub k: usize,
    pub k_clamped: bool,
    pub thinning_cost: Option<Cost>,
    pub max_span: Option<usize>,
    pub width: Option<usize>,
    pub dp_states: Option<usize>,
    pub dp_cost: Option<Cost>,
    pub dp_weight: Option<u64>,
    /// Exact optimum on the contracted graph in the DP window.
    pub contracted_opt: Option<Cost>,
    /// `dp + c(S_thin) <= contracted_opt + c(G^)/k`, when checked.
    pub cost_chain: Option<bool>,
    pub lifted: Option<BipartitionSolution>,
    pub outcome: RunOutcome,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub b: Cost,
    pub epsilon: Cost,
    pub stage: Stage,
    pub num_vertices: usize,
    pub total_weight: u64,
    pub scaled_total: u64,
    /// Original weight of one scaled unit.
    pub unit: Cost,
    /// DP window in scaled units.
    pub dp_window: (u64, u64),
    /// Scaling, containment and DP slack added up: `8 eps`.
    pub aggregate_epsilon: Cost,
    /// `[b - 8 eps, b + 8 eps]` clipped to `[0, 1]`.
    pub aggregate_window: (Cost, Cost),
    pub runs: Vec<LambdaRun>,
    /// Index into `runs` of the cheapest lifted solution.
    pub best: Option<usize>,
    pub solution: Option<BipartitionSolution>,
}

impl SolveReport {
    pub fn within_aggregate_window(&self) -> Option<bool> {
        self.solution.as_ref().map(|s| {
            let bp = s.b_prime();
            self.aggregate_window.0 <= bp && bp <= self.aggregate_window.1
        })
    }
}

/// Powers of two from `c_min / W` up to the first value `>= 2 c(G) / W`.
pub fn lambda_grid(g: &WeightedGraph) -> Vec<Cost> {
    let w = Cost::from_integer(g.total_weight().max(1) as i128);
    let c_min = g.edges.iter().map(|e| e.2).filter(|c| !c.is_zero()).min();
    let Some(c_min) = c_min else {
        return vec![Cost::from_integer(1) / w];
    };
    let top = Cost::from_integer(2) * g.total_cost() / w;
    let mut out = vec![c_min / w];
    while *out.last().unwrap() < top {
        let next = *out.last().unwrap() * Cost::from_integer(2);
        out.push(next);
    }
    out
}

/// Contracts every primal edge whose dual is not in the spanner.
pub fn contract_to_spanner(primal: &WeightedGraph, spanner: &SpannerEdges) -> Contraction {
    let drop: Vec<bool> = spanner.edges.iter().map(|s| !s).collect();
    contract_edges(primal, &drop)
}

struct Prepared {
    original: WeightedGraph,
    dual: EmbeddedGraph,
    /// Working primal: the dual's dual, scaled weights.
    scaled: WeightedGraph,
    outer: VertexId,
}

fn prepare(gstar: &EmbeddedGraph, eps: Cost) -> Result<(Prepared, crate::framework::ScaledInstance)> {
    let original = gstar.to_weighted();
    let scaled = scale_weights(&original, eps)?;
    let dual = gstar.dualize().normalize_outer().0;
    let outer = dual.outer_face().ok_or(Error::NoOuterFace)?;
    let mut working = dual.dualize().to_weighted();
    for (w, &s) in working.weights.iter_mut().zip(&scaled.scaled.weights) {
        *w = s;
    }
    Ok((
        Prepared {
            original,
            dual,
            scaled: working,
            outer,
        },
        scaled,
    ))
}

fn resource(e: &Error) -> bool {
    matches!(e, Error::TooLarge(_) | Error::SearchBudget(_))
}

fn run_lambda(p: &Prepared, lambda: Cost, eps: Cost, win: (u64, u64), cfg: &SolveConfig) -> Result<LambdaRun> {
    let n = p.original.num_vertices();
    let w = Cost::from_integer(p.original.total_weight() as i128);
    let spanner = match build_spanner_with(&p.dual, lambda, eps, cfg.skeleton) {
        Ok(s) => s,
        Err(e) if resource(&e) => {
            return Ok(LambdaRun::skipped(lambda, format!("spanner: {e}")));
        }
        Err(e) => return Err(e),
    };
    let c = contract_to_spanner(&p.scaled, &spanner);
    let ghat = &c.graph;
    let rho = spanner.cost / (lambda * w);
    let k_real = (rho / eps).ceil().to_integer();
    let k_raw = k_real.to_u64().unwrap_or(u64::MAX);
    let k = (k_raw.max(1) as usize).min(cfg.k_max);
    let mut run = LambdaRun {
        lambda,
        spanner_cost: spanner.cost,
        tag_costs: spanner.tag_costs.clone(),
        contracted_vertices: ghat.num_vertices(),
        contracted_cost: ghat.total_cost(),
        rho,
        k_raw,
        k,
        k_clamped: k_raw > cfg.k_max as u64,
        thinning_cost: None,
        max_span: None,
        width: None,
        dp_states: None,
        dp_cost: None,
        dp_weight: None,
        contracted_opt: None,
        cost_chain: None,
        lifted: None,
        outcome: RunOutcome::Completed,
    };
    if run.contracted_cost > spanner.cost {
        return Err(Error::InvariantViolation(format!(
            "contracted cost {} exceeds spanner cost {}",
            run.contracted_cost, spanner.cost
        )));
    }
    if cfg.stage == Stage::Spanner {
        return Ok(run);
    }
    let t = thin(ghat, k)?;
    run.thinning_cost = Some(t.cost);
    run.max_span = Some(t.max_span);
    if cfg.stage == Stage::Thin {
        return Ok(run);
    }
    let (h, _) = ghat.without_edges(&t.deleted);
    let td = TreeDecomposition::min_fill(&h)?;
    run.width = Some(td.width);
    let fixed = Some(c.vertex_map[p.outer]);
    let dp = match dp_bipartition(&h, &td, win.0, win.1, fixed, cfg.max_states) {
        Ok(r) => r,
        Err(Error::InfeasibleWindow { .. }) => {
            run.outcome = RunOutcome::Infeasible;
            return Ok(run);
        }
        Err(e) if resource(&e) => {
            run.outcome = RunOutcome::ResourceSkip(format!("dp: {e}"));
            return Ok(run);
        }
        Err(e) => return Err(e),
    };
    run.dp_states = Some(dp.states);
    run.dp_cost = Some(dp.solution.cost);
    run.dp_weight = Some(dp.solution.weight_u);
    if ghat.num_vertices() <= cfg.chain_check_vertices {
        let opt = exact_bipartition(ghat, win.0, win.1, fixed)?;
        let bound = opt.cost + t.total_cost / Cost::from_integer(k as i128);
        run.contracted_opt = Some(opt.cost);
        run.cost_chain = Some(dp.solution.cost + t.cost <= bound);
    }
    if cfg.stage == Stage::Dp {
        return Ok(run);
    }
    let on_ghat = BipartitionSolution::from_side(ghat, dp.solution.side_u.clone());
    if on_ghat.cost > dp.solution.cost + t.cost {
        return Err(Error::InvariantViolation(
            "lifted cut exceeds dp cost plus thinning cost".into(),
        ));
    }
    let working = c.lift_side(&on_ghat.side_u);
    let lifted = BipartitionSolution::from_side(&p.original, working[..n].to_vec());
    if lifted.cost != on_ghat.cost {
        return Err(Error::InvariantViolation(format!(
            "lifted cost {} differs from contracted cut {}",
            lifted.cost, on_ghat.cost
        )));
    }
    run.lifted = Some(lifted);
    Ok(run)
}

impl LambdaRun {
    fn skipped(lambda: Cost, why: String) -> LambdaRun {
        LambdaRun {
            lambda,
            spanner_cost: Cost::zero(),
            tag_costs: Vec::new(),
            contracted_vertices: 0,
            contracted_cost: Cost::zero(),
            rho: Cost::zero(),
            k_raw: 0,
            k: 0,
            k_clamped: false,
            thinning_cost: None,
            max_span: None,
            width: None,
            dp_states: None,
            dp_cost: None,
            dp_weight: None,
            contracted_opt: None,
            cost_chain: None,
            lifted: None,
            outcome: RunOutcome::ResourceSkip(why),
        }
    }
}

/// Runs the whole sweep and reports every lambda. Fails only on invalid
/// input or a broken invariant; an empty result is reported, not raised.
pub fn solve_report(gstar: &EmbeddedGraph, b: Cost, eps: Cost, cfg: &SolveConfig) -> Result<SolveReport> {
    let one = Cost::from_integer(1);
    if b < Cost::zero() || b > one {
        return Err(Error::Invalid(format!("b = {b} outside [0, 1]")));
    }
    if cfg.k_max == 0 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let (p, scaled) = prepare(gstar, eps)?;
    let scaled_total = scaled.scaled.total_weight();
    let dp_window = window(b, eps, scaled_total);
    let lambdas = match cfg.lambda {
        Some(l) if l > Cost::zero() => vec![l],
        Some(l) => return Err(Error::Invalid(format!("lambda = {l} must be positive"))),
        None => lambda_grid(&p.original),
    };
    let mut runs = Vec::new();
    for lambda in lambdas {
        runs.push(run_lambda(&p, lambda, eps, dp_window, cfg)?);
    }
    // cheapest, then closest to b, then earliest lambda
    let best = (0..runs.len())
        .filter_map(|i| runs[i].lifted.as_ref().map(|s| ((s.cost, (s.b_prime() - b).abs()), i)))
        .min()
        .map(|(_, i)| i);
    let solution = best.and_then(|i| runs[i].lifted.clone());
    let agg = Cost::from_integer(8) * eps;
    Ok(SolveReport {
        b,
        epsilon: eps,
        stage: cfg.stage,
        num_vertices: p.original.num_vertices(),
        total_weight: scaled.total_weight,
        scaled_total,
        unit: scaled.unit,
        dp_window,
        aggregate_epsilon: agg,
        aggregate_window: ((b - agg).max(Cost::zero()), (b + agg).min(one)),
        runs,
        best,
        solution,
    })
}

/// Cheapest lifted bipartition over the lambda sweep.
pub fn solve(gstar: &EmbeddedGraph, b: Cost, eps: Cost, cfg: &SolveConfig) -> Result<BipartitionSolution> {
    let cfg = SolveConfig {
        stage: Stage::All,
        ..cfg.clone()
    };
    let report = solve_report(gstar, b, eps, &cfg)?;
    report.solution.ok_or_else(|| {
        let why: Vec<String> = report
            .runs
            .iter()
            .map(|r| format!("lambda {}: {:?}", r.lambda, r.outcome))
            .collect();
        Error::NoFeasibleLambda(format!("window {:?}; {}", report.dp_window, why.join(", ")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{cost, int};
    use crate::planar::fixtures::square;

    #[test]
    fn square_half() {
        let s = solve(&square(), cost(1, 2), cost(3, 10), &SolveConfig::default()).unwrap();
        assert_eq!(s.cost, int(2));
        assert_eq!(s.b_prime(), cost(1, 2));
    }

    #[test]
    fn empty_side() {
        let s = solve(&square(), int(0), cost(3, 10), &SolveConfig::default()).unwrap();
        assert_eq!(s.cost, int(0));
        assert_eq!(s.weight_u, 0);
    }

    #[test]
    fn grid_powers_of_two() {
        let g = square().to_weighted();
        // c_min / W = 1/4, 2 c / W = 2
        assert_eq!(lambda_grid(&g), [cost(1, 4), cost(1, 2), int(1), int(2)]);
    }

    #[test]
    fn stage_stops_early() {
        let cfg = SolveConfig {
            stage: Stage::Thin,
            ..SolveConfig::default()
        };
        let r = solve_report(&square(), cost(1, 2), cost(3, 10), &cfg).unwrap();
        assert!(r.solution.is_none());
        assert!(r.runs.iter().all(|x| x.thinning_cost.is_some() && x.width.is_none()));
    }
}
