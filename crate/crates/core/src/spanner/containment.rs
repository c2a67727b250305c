//! Checking that the spanner still carries a good solution.
//!
//! Two checks: an enumeration of every bipartition whose cut uses spanner
//! edges only, and a constructive one that takes the cut cycles of an
//! optimal solution and replaces their pieces by spanner paths, measuring
//! each replacement.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::SpannerEdges;
use crate::cost::{ceil_u64, floor_u64, ScaledCosts};
use crate::cover::DoubleCover;
use crate::framework::BipartitionSolution;
use crate::harness::oracle::{exact_bipartition, MAX_ENUMERATION_VERTICES};
use crate::planar::paths::dijkstra;
use crate::planar::{
    bipartition_to_cut_cycles, contract_edges, cycles_cross, enclosed_faces, Cycle, Dart, EmbeddedGraph, RegionGraph,
};
use crate::{Cost, Error, Result};

#[derive(Clone, Debug)]
pub struct ContainmentReport {
    /// Optimum with `weight(U)` in `[floor(bW), ceil(bW)]`.
    pub opt: BipartitionSolution,
    pub opt_window: (u64, u64),
    /// `[(b - 6 eps) W, (b + 6 eps) W]` clipped to `[0, W]`.
    pub window: (u64, u64),
    /// Best spanner-restricted solution in `window`.
    pub best: Option<BipartitionSolution>,
    /// Best spanner-restricted solution in `opt_window`.
    pub strict: Option<BipartitionSolution>,
    /// `(1 + 4 eps) OPT`.
    pub cost_bound: Cost,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub enum Containment {
    Checked(ContainmentReport),
    Skipped(String),
}

impl Containment {
    pub fn passed(&self) -> Option<bool> {
        match self {
            Containment::Checked(r) => Some(r.passed),
            Containment::Skipped(_) => None,
        }
    }
}

/// The primal graph of a normalized dual: vertex `f` is face `f`.
pub(crate) fn primal_of(g: &EmbeddedGraph) -> crate::planar::WeightedGraph {
    g.dualize().to_weighted()
}

/// `weight(U)` window `[lo, hi]` for `[x - slack, x + slack] W` clipped to
/// `[0, W]`.
pub(crate) fn window(b: Cost, slack: Cost, total: u64) -> (u64, u64) {
    let w = Cost::from_integer(total as i128);
    let lo = (b - slack).max(Cost::zero()) * w;
    let hi = (b + slack).min(Cost::from_integer(1)) * w;
    (ceil_u64(lo), floor_u64(hi))
}

/// Enumerates the bipartitions of the primal of `g` whose cut lies in
/// `spanner` and compares the best one with the optimum.
pub fn verify_containment(g: &EmbeddedGraph, spanner: &[bool], b: Cost, eps: Cost) -> Result<Containment> {
    let outer = g.outer_face().ok_or(Error::NoOuterFace)?;
    let primal = primal_of(g);
    if primal.num_vertices() > MAX_ENUMERATION_VERTICES {
        return Ok(Containment::Skipped(format!(
            "{} primal vertices",
            primal.num_vertices()
        )));
    }
    let total = primal.total_weight();
    let bw = b * Cost::from_integer(total as i128);
    let opt_window = (floor_u64(bw), ceil_u64(bw));
    let opt = match exact_bipartition(&primal, opt_window.0, opt_window.1, Some(outer)) {
        Ok(s) => s,
        Err(Error::InfeasibleWindow { .. }) => return Ok(Containment::Skipped("no b-bipartition".into())),
        Err(e) => return Err(e),
    };
    let drop: Vec<bool> = spanner.iter().map(|s| !s).collect();
    let c = contract_edges(&primal, &drop);
    let fixed = Some(c.vertex_map[outer]);
    let lifted = |lo, hi| -> Result<Option<BipartitionSolution>> {
        match exact_bipartition(&c.graph, lo, hi, fixed) {
            Ok(s) => Ok(Some(BipartitionSolution::from_side(&primal, c.lift_side(&s.side_u)))),
            Err(Error::InfeasibleWindow { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let win = window(b, Cost::from_integer(6) * eps, total);
    let best = lifted(win.0, win.1)?;
    let strict = lifted(opt_window.0, opt_window.1)?;
    let cost_bound = (Cost::from_integer(1) + Cost::from_integer(4) * eps) * opt.cost;
    let passed = best.as_ref().is_some_and(|s| s.cost <= cost_bound);
    Ok(Containment::Checked(ContainmentReport {
        opt,
        opt_window,
        window: win,
        best,
        strict,
        cost_bound,
        passed,
    }))
}

/// A maximal run of a cycle lying in one skeleton region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPiece {
    /// Global darts, in cycle order.
    pub darts: Vec<Dart>,
    /// Region tree node.
    pub region: usize,
}

fn region_sets(g: &EmbeddedGraph, regions: &[RegionGraph]) -> Vec<BTreeSet<usize>> {
    let mut sets = vec![BTreeSet::new(); g.num_edges()];
    for (i, r) in regions.iter().enumerate() {
        for &e in &r.edge_map {
            sets[e].insert(i);
        }
    }
    sets
}

/// Splits `cycle` into the fewest paths each lying in a single region. A
/// cycle inside one region comes back as one piece.
pub fn decompose_at_skeleton(g: &EmbeddedGraph, regions: &[RegionGraph], cycle: &Cycle) -> Vec<PathPiece> {
    let sets = region_sets(g, regions);
    decompose(&sets, cycle.darts())
}

fn decompose(sets: &[BTreeSet<usize>], darts: &[Dart]) -> Vec<PathPiece> {
    let n = darts.len();
    let whole: BTreeSet<usize> = darts.iter().fold(sets[darts[0].edge()].clone(), |acc, d| {
        acc.intersection(&sets[d.edge()]).copied().collect()
    });
    if let Some(&r) = whole.iter().next() {
        return vec![PathPiece {
            darts: darts.to_vec(),
            region: r,
        }];
    }
    // greedy maximal runs are optimal for a fixed start; try every start
    let mut best: Option<Vec<PathPiece>> = None;
    for start in 0..n {
        let mut pieces = Vec::new();
        let mut i = 0;
        while i < n {
            let mut common = sets[darts[(start + i) % n].edge()].clone();
            let mut run = vec![darts[(start + i) % n]];
            i += 1;
            while i < n {
                let d = darts[(start + i) % n];
                let next: BTreeSet<usize> = common.intersection(&sets[d.edge()]).copied().collect();
                if next.is_empty() {
                    break;
                }
                common = next;
                run.push(d);
                i += 1;
            }
            pieces.push(PathPiece {
                darts: run,
                region: *common.iter().next().expect("edge lies in a region"),
            });
        }
        if best.as_ref().is_none_or(|b| pieces.len() < b.len()) {
            best = Some(pieces);
        }
    }
    best.expect("nonempty cycle")
}

/// What a replacement did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Replacement {
    /// Cycle or piece already in the spanner.
    Kept,
    /// High-ratio cycle inside one region, dropped.
    Removed,
    /// Low-ratio cycle replaced by the region's cheapest enclosing cycle.
    Enclosing,
    /// Piece in a hole-free region replaced by a spanner path.
    Shortcut,
    /// Piece in a region with holes replaced by the projection of a cover
    /// path in the spanner.
    CoverShortcut,
    /// No spanner path with the right endpoints exists.
    Missing,
}

#[derive(Clone, Debug)]
pub struct ReplacementStep {
    pub kind: Replacement,
    pub region: usize,
    pub old_cost: Cost,
    pub new_cost: Cost,
    /// Weight of the faces that switch sides.
    pub weight_change: u64,
    /// Allowed weight change (`eps c / lambda`, or three times that for
    /// pieces).
    pub weight_allowance: Cost,
    /// Allowed cost.
    pub cost_allowance: Cost,
}

impl ReplacementStep {
    pub fn within_bounds(&self) -> bool {
        self.kind != Replacement::Missing
            && Cost::from_integer(self.weight_change as i128) <= self.weight_allowance
            && self.new_cost <= self.cost_allowance
    }
}

#[derive(Clone, Debug)]
pub struct ReplacementReport {
    pub steps: Vec<ReplacementStep>,
    /// Closed walks of the rebuilt solution, global darts.
    pub walks: Vec<Vec<Dart>>,
    /// The rebuilt bipartition (faces enclosed by the walks).
    pub solution: BipartitionSolution,
    pub cost_before: Cost,
}

impl ReplacementReport {
    pub fn all_within_bounds(&self) -> bool {
        self.steps.iter().all(|s| s.within_bounds())
    }

    pub fn pieces_in_spanner(&self, spanner: &[bool]) -> bool {
        self.walks.iter().flatten().all(|d| spanner[d.edge()])
    }
}

fn parity_weight(g: &EmbeddedGraph, darts: &[Dart]) -> Result<u64> {
    let inside = enclosed_faces(g, darts)?;
    Ok((0..g.num_faces())
        .filter(|&f| inside[f])
        .map(|f| g.face_weight(f))
        .sum())
}

fn rev_walk(w: &[Dart]) -> impl Iterator<Item = Dart> + '_ {
    w.iter().rev().map(|d| d.rev())
}

/// Rewrites the cut cycles of `side_u` (indexed by face of `g`) so that
/// they use spanner edges only, following the replacement rules, and
/// measures every step.
pub fn replace_paths(g: &EmbeddedGraph, spanner: &SpannerEdges, side_u: &[bool]) -> Result<ReplacementReport> {
    let sk = &spanner.skeleton;
    let eps = spanner.epsilon;
    let per = eps / spanner.lambda;
    let in_s = &spanner.edges;
    let regions: Vec<RegionGraph> = (0..sk.tree.len()).map(|i| sk.region(g, i)).collect::<Result<_>>()?;
    let mut covers: Vec<Option<DoubleCover>> = vec![None; regions.len()];
    let sets = region_sets(g, &regions);
    let skeleton_cycles: Vec<Cycle> = sk.cycles().map(|c| c.cycle.clone()).collect();
    let primal = primal_of(g);
    let cost_before = primal.cut_cost(side_u);
    let mut steps = Vec::new();
    let mut walks = Vec::new();

    for k in bipartition_to_cut_cycles(g, side_u) {
        let c_k = k.cost(g);
        let crosses = skeleton_cycles.iter().any(|s| cycles_cross(g, &k, s));
        let pieces = decompose(&sets, k.darts());
        if !crosses && pieces.len() == 1 {
            let node = pieces[0].region;
            let region = &regions[node];
            if k.edges().all(|e| in_s[e]) {
                steps.push(step(Replacement::Kept, node, c_k, c_k, 0, Cost::zero(), c_k));
                walks.push(k.darts().to_vec());
                continue;
            }
            let w_k = parity_weight(g, k.darts())?;
            if w_k == 0 || c_k > spanner.skeleton.alpha * Cost::from_integer(w_k as i128) {
                steps.push(step(Replacement::Removed, node, c_k, Cost::zero(), w_k, per * c_k, c_k));
                continue;
            }
            let line6 = spanner.regions[node].enclosing_cycle.as_ref();
            match line6.filter(|_| !region.holes.is_empty()) {
                Some(c) => {
                    let mut both: Vec<Dart> = k.darts().to_vec();
                    both.extend(c.darts());
                    let dw = parity_weight(g, &both)?;
                    let new_cost = c.cost(g);
                    steps.push(step(Replacement::Enclosing, node, c_k, new_cost, dw, per * c_k, c_k));
                    walks.push(c.darts().to_vec());
                }
                None => {
                    steps.push(step(Replacement::Missing, node, c_k, c_k, 0, per * c_k, c_k));
                    walks.push(k.darts().to_vec());
                }
            }
            continue;
        }
        let mut walk = Vec::new();
        for p in pieces {
            let c_p = g.walk_cost(&p.darts);
            if p.darts.iter().all(|d| in_s[d.edge()]) {
                steps.push(step(Replacement::Kept, p.region, c_p, c_p, 0, Cost::zero(), c_p));
                walk.extend(&p.darts);
                continue;
            }
            let region = &regions[p.region];
            let cost_allowance = (Cost::from_integer(1) + eps) * c_p;
            let allowance = Cost::from_integer(3) * per * c_p;
            let (kind, replacement) = if region.holes.is_empty() {
                (Replacement::Shortcut, region_shortcut(region, in_s, &p.darts))
            } else {
                let cover = match &covers[p.region] {
                    Some(c) => c,
                    None => covers[p.region].insert(DoubleCover::new(region.clone())?),
                };
                (Replacement::CoverShortcut, cover_shortcut(cover, in_s, &p.darts)?)
            };
            match replacement {
                Some(q) => {
                    let mut loop_walk = p.darts.clone();
                    loop_walk.extend(rev_walk(&q));
                    let dw = parity_weight(g, &loop_walk)?;
                    steps.push(step(
                        kind,
                        p.region,
                        c_p,
                        g.walk_cost(&q),
                        dw,
                        allowance,
                        cost_allowance,
                    ));
                    walk.extend(q);
                }
                None => {
                    steps.push(step(
                        Replacement::Missing,
                        p.region,
                        c_p,
                        c_p,
                        0,
                        allowance,
                        cost_allowance,
                    ));
                    walk.extend(&p.darts);
                }
            }
        }
        walks.push(walk);
    }
    let all: Vec<Dart> = walks.iter().flatten().copied().collect();
    let inside = enclosed_faces(g, &all)?;
    let solution = BipartitionSolution::from_side(&primal, inside);
    Ok(ReplacementReport {
        steps,
        walks,
        solution,
        cost_before,
    })
}

fn step(
    kind: Replacement,
    region: usize,
    old_cost: Cost,
    new_cost: Cost,
    weight_change: u64,
    weight_allowance: Cost,
    cost_allowance: Cost,
) -> ReplacementStep {
    ReplacementStep {
        kind,
        region,
        old_cost,
        new_cost,
        weight_change,
        weight_allowance,
        cost_allowance,
    }
}

/// Shortest spanner path in a hole-free region between the ends of `p`.
fn region_shortcut(region: &RegionGraph, in_s: &[bool], p: &[Dart]) -> Option<Vec<Dart>> {
    let rg = &region.graph;
    let allowed: Vec<bool> = region.edge_map.iter().map(|&e| in_s[e]).collect();
    let costs = ScaledCosts::new(&rg.costs()).scaled;
    let u = region.local_vertex[&g_tail(region, p[0])];
    let v = region.local_vertex[&g_head(region, p[p.len() - 1])];
    let tree = dijkstra(rg, &costs, u, Some(&allowed));
    Some(tree.path_to(rg, v)?.into_iter().map(|d| region.to_global(d)).collect())
}

fn g_tail(region: &RegionGraph, d: Dart) -> usize {
    let l = region.to_local(d).expect("piece lies in its region");
    region.vertex_map[region.graph.tail(l)]
}

fn g_head(region: &RegionGraph, d: Dart) -> usize {
    let l = region.to_local(d).expect("piece lies in its region");
    region.vertex_map[region.graph.head(l)]
}

/// Lift `p` to the cover, take the shortest cover path between the ends of
/// the lift over edges projecting into the spanner, and project it back.
fn cover_shortcut(cover: &DoubleCover, in_s: &[bool], p: &[Dart]) -> Result<Option<Vec<Dart>>> {
    let region = &cover.region;
    let lift = cover.lift_global_walk(p)?;
    let cg = &cover.graph;
    let allowed: Vec<bool> = (0..cg.num_edges())
        .map(|e| in_s[region.edge_map[DoubleCover::project_edge(e)]])
        .collect();
    let costs = ScaledCosts::new(&cg.costs()).scaled;
    let tree = dijkstra(cg, &costs, cg.tail(lift[0]), Some(&allowed));
    Ok(tree.path_to(cg, cg.head(lift[lift.len() - 1])).map(|q| {
        q.into_iter()
            .map(|d| region.to_global(DoubleCover::project_dart(d)))
            .collect()
    }))
}
