//! Runs the invariant checks of every module on one instance and collects a
//! pass/fail line per property, with a witness on failure.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::clustering::build_well_connected_cover;
use crate::cost::ScaledCosts;
use crate::cover::DoubleCover;
use crate::cycles::{cheapest_enclosing_cycle, min_cycle_exact_weight};
use crate::framework::{lambda_grid, solve_report, RunOutcome, SolveConfig};
use crate::harness::oracle::{brute_force_cheapest_enclosing, brute_force_table};
use crate::planar::paths::dijkstra;
use crate::planar::{enclosed_faces, Dart, EmbeddedGraph, RegionGraph};
use crate::skeleton::{charge_bound, verify_no_low_ratio_remaining, CheckStatus};
use crate::spanner::{build_spanner, verify_containment, Containment};
use crate::{Cost, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The instance has nothing the check applies to.
    NotApplicable,
    /// Beyond the enumeration bounds.
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "n/a",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub lambda: Option<Cost>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    fn push(&mut self, name: &'static str, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            status,
            detail: detail.into(),
        });
    }

    fn result(&mut self, name: &'static str, r: Result<String>) {
        match r {
            Ok(d) => self.push(name, Status::Pass, d),
            Err(e) => self.push(name, Status::Fail, e.to_string()),
        }
    }

    /// Single failing check, for inputs that could not be read.
    pub fn ingestion_failure(detail: impl Into<String>) -> Self {
        let mut r = VerifyReport::default();
        r.push("ingest", Status::Fail, detail);
        r
    }
}

const MAX_FACES_TABLE: usize = 9;
const MAX_REGION_EDGES_ENUM: usize = 20;
const MAX_COVER_EDGES: usize = 10;
const COVER_WALK_LEN: usize = 8;

fn closed_walks(g: &EmbeddedGraph, max_len: usize, visit: &mut dyn FnMut(&[Dart]) -> bool) -> bool {
    fn go(
        g: &EmbeddedGraph,
        s: usize,
        max_len: usize,
        walk: &mut Vec<Dart>,
        visit: &mut dyn FnMut(&[Dart]) -> bool,
    ) -> bool {
        let v = walk.last().map_or(s, |&d| g.head(d));
        if !walk.is_empty() && v == s && !visit(walk) {
            return false;
        }
        if walk.len() == max_len {
            return true;
        }
        for &d in g.rotation(v) {
            walk.push(d);
            let ok = go(g, s, max_len, walk, visit);
            walk.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    (0..g.num_vertices()).all(|s| go(g, s, max_len, &mut Vec::new(), visit))
}

fn cover_walks(region: &RegionGraph) -> Result<(u64, Option<Vec<Dart>>)> {
    let cover = DoubleCover::new(region.clone())?;
    let hole = cover.hole_face();
    let mut count = 0u64;
    let mut bad = None;
    let mut err = None;
    closed_walks(&cover.graph, COVER_WALK_LEN, &mut |w| {
        let p = cover.project_walk(w);
        count += 1;
        match enclosed_faces(&region.graph, &p) {
            Ok(inside) if !region.graph.is_walk(&p, true) || inside[hole] => {
                bad = Some(p);
                false
            }
            Ok(_) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok((count, bad)),
    }
}

/// Runs every applicable check. `lambda` defaults to the middle of the
/// solver's lambda grid.
pub fn verify(gstar: &EmbeddedGraph, b: Cost, eps: Cost, lambda: Option<Cost>) -> Result<VerifyReport> {
    let g = gstar.dualize().normalize_outer().0;
    let grid = lambda_grid(&gstar.to_weighted());
    let lambda = lambda.unwrap_or(grid[grid.len() / 2]);
    let mut rep = VerifyReport {
        lambda: Some(lambda),
        checks: Vec::new(),
    };

    let spanner = match build_spanner(&g, lambda, eps) {
        Ok(s) => s,
        Err(e @ (Error::InvariantViolation(_) | Error::CyclesCross)) => {
            rep.push("spanner-construction", Status::Fail, e.to_string());
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    rep.push("spanner-construction", Status::Pass, format!("cost {}", spanner.cost));
    let s = &spanner.skeleton;

    let counts = s.charge_counts(g.num_faces());
    let max = counts.iter().copied().max().unwrap_or(0);
    let bound = charge_bound(s.total_weight);
    rep.push(
        "skeleton-charge-bound",
        if max <= bound { Status::Pass } else { Status::Fail },
        format!("max |C(f)| = {max}, bound {bound}"),
    );
    let cost = s.total_cost();
    rep.push(
        "skeleton-cost-bound",
        if cost <= s.cost_bound() {
            Status::Pass
        } else {
            Status::Fail
        },
        format!("c = {cost}, bound {}", s.cost_bound()),
    );
    let order: Vec<usize> = s.tree.preorder().iter().map(|&n| s.live[n]).collect();
    let broken = s.snapshots.iter().find(|(ptr, suffix)| {
        order
            .iter()
            .position(|x| x == ptr)
            .is_none_or(|p| order[p..] != suffix[..])
    });
    match broken {
        None => rep.push(
            "skeleton-fixed-suffix",
            Status::Pass,
            format!("{} snapshots", s.snapshots.len()),
        ),
        Some((ptr, _)) => rep.push(
            "skeleton-fixed-suffix",
            Status::Fail,
            format!("suffix from cycle {ptr} changed"),
        ),
    }
    let cycles: Vec<_> = s.cycles().map(|c| c.cycle.clone()).collect();
    match verify_no_low_ratio_remaining(&g, &cycles, s.alpha, MAX_REGION_EDGES_ENUM)? {
        CheckStatus::Pass => rep.push("skeleton-no-low-ratio-left", Status::Pass, ""),
        CheckStatus::Fail(c) => rep.push("skeleton-no-low-ratio-left", Status::Fail, format!("{:?}", c.darts())),
        CheckStatus::Skipped(w) => rep.push("skeleton-no-low-ratio-left", Status::Skipped, w),
    }

    if g.num_faces() <= MAX_FACES_TABLE {
        let costs = ScaledCosts::new(&g.costs());
        let mut bad = None;
        for r in 0..g.num_vertices() {
            let tree = dijkstra(&g, &costs.scaled, r, None);
            let table = min_cycle_exact_weight(&g, r, &tree)?;
            let want = brute_force_table(&g, r, &tree)?;
            let got: alloc::collections::BTreeMap<u64, Cost> = table.rows.iter().map(|(w, (c, _))| (*w, *c)).collect();
            if got != want {
                bad = Some(r);
                break;
            }
        }
        match bad {
            None => rep.push(
                "weight-cycle-table",
                Status::Pass,
                format!("{} roots", g.num_vertices()),
            ),
            Some(r) => rep.push("weight-cycle-table", Status::Fail, format!("root {r}")),
        }
    } else {
        rep.push(
            "weight-cycle-table",
            Status::Skipped,
            format!("{} faces", g.num_faces()),
        );
    }

    let regions: Vec<RegionGraph> = (0..s.tree.len()).map(|n| s.region(&g, n)).collect::<Result<_>>()?;
    let holed: Vec<&RegionGraph> = regions.iter().filter(|r| !r.holes.is_empty()).collect();
    if holed.is_empty() {
        for name in [
            "cheapest-enclosing-cycle",
            "cover-closed-walks",
            "pc-clustering-cost",
            "hole-enclosing-cycles",
        ] {
            rep.push(name, Status::NotApplicable, "no region has holes");
        }
    } else {
        let mut enclosing = Ok(0usize);
        let mut walks = (0u64, 0usize, None);
        let mut clustering = Ok(0usize);
        let mut line6 = 0usize;
        for r in &holed {
            let h = r.heaviest_hole().expect("has holes");
            let fast = match cheapest_enclosing_cycle(r, h) {
                Ok(c) => Some(c.cost),
                Err(Error::NoInteriorEnclosingCycle) => None,
                Err(e) => return Err(e),
            };
            line6 += usize::from(fast.is_some());
            if r.graph.num_edges() <= MAX_REGION_EDGES_ENUM {
                match (brute_force_cheapest_enclosing(r, h), &mut enclosing) {
                    (Ok(want), Ok(n)) if want == fast => *n += 1,
                    (Ok(want), e @ Ok(_)) => {
                        *e = Err(format!("region {}: {fast:?} vs brute force {want:?}", r.node));
                    }
                    (Err(Error::TooLarge(_)), _) | (_, Err(_)) => {}
                    (Err(e), _) => return Err(e),
                }
            }
            if r.graph.num_edges() <= MAX_COVER_EDGES && walks.2.is_none() {
                let (n, bad) = cover_walks(r)?;
                walks.0 += n;
                walks.1 += 1;
                walks.2 = bad;
            }
            let cover = DoubleCover::new((*r).clone())?;
            let wcc = build_well_connected_cover(&cover, eps)?;
            let c = &wcc.clustering;
            if let Ok(n) = &mut clustering {
                if c.cost <= Cost::from_integer(2) * c.total_potential {
                    *n += 1;
                } else {
                    clustering = Err(format!(
                        "region {}: c(Z) = {} > 2 * {}",
                        r.node, c.cost, c.total_potential
                    ));
                }
            }
        }
        match enclosing {
            Ok(0) => rep.push("cheapest-enclosing-cycle", Status::Skipped, "regions too large"),
            Ok(n) => rep.push("cheapest-enclosing-cycle", Status::Pass, format!("{n} regions")),
            Err(w) => rep.push("cheapest-enclosing-cycle", Status::Fail, w),
        }
        match walks {
            (_, 0, _) => rep.push("cover-closed-walks", Status::Skipped, "regions too large"),
            (n, k, None) => rep.push("cover-closed-walks", Status::Pass, format!("{n} walks in {k} covers")),
            (_, _, Some(w)) => rep.push("cover-closed-walks", Status::Fail, format!("projects to {w:?}")),
        }
        match clustering {
            Ok(n) => rep.push("pc-clustering-cost", Status::Pass, format!("{n} regions")),
            Err(w) => rep.push("pc-clustering-cost", Status::Fail, w),
        }
        rep.push(
            "hole-enclosing-cycles",
            Status::Pass,
            format!("{line6} of {} regions", holed.len()),
        );
    }

    match verify_containment(&g, &spanner.edges, b, eps)? {
        Containment::Checked(c) => rep.push(
            "spanner-containment",
            if c.passed { Status::Pass } else { Status::Fail },
            match &c.best {
                Some(s) => format!("best {} <= {}, OPT {}", s.cost, c.cost_bound, c.opt.cost),
                None => "no spanner-restricted solution in the window".into(),
            },
        ),
        Containment::Skipped(w) => rep.push("spanner-containment", Status::Skipped, w),
    }

    let cfg = SolveConfig {
        lambda: Some(lambda),
        ..SolveConfig::default()
    };
    let solved = solve_report(gstar, b, eps, &cfg);
    rep.result(
        "thinning",
        solved.as_ref().map_err(Clone::clone).map(|r| {
            let run = &r.runs[0];
            match (run.max_span, run.thinning_cost) {
                (Some(span), Some(c)) => format!("k = {}, span {span}, c(S) = {c}", run.k),
                _ => format!("not reached: {:?}", run.outcome),
            }
        }),
    );
    match &solved {
        Ok(r) => {
            let run = &r.runs[0];
            match (&run.outcome, run.cost_chain) {
                (RunOutcome::ResourceSkip(w), _) => rep.push("cost-chain", Status::Skipped, w.clone()),
                (_, Some(true)) => rep.push(
                    "cost-chain",
                    Status::Pass,
                    format!("OPT(G^) = {}", run.contracted_opt.unwrap_or_default()),
                ),
                (_, Some(false)) => rep.push(
                    "cost-chain",
                    Status::Fail,
                    format!("dp {}", run.dp_cost.unwrap_or_default()),
                ),
                (_, None) => rep.push(
                    "cost-chain",
                    Status::Skipped,
                    format!("{} vertices", run.contracted_vertices),
                ),
            }
            match (&r.solution, r.within_aggregate_window()) {
                (Some(s), Some(true)) => rep.push(
                    "solve-window",
                    Status::Pass,
                    format!("cost {}, b' {}", s.cost, s.b_prime()),
                ),
                (Some(s), _) => rep.push("solve-window", Status::Fail, format!("b' {}", s.b_prime())),
                (None, _) => rep.push("solve-window", Status::Skipped, format!("{:?}", run.outcome)),
            }
        }
        Err(_) => rep.push("cost-chain", Status::Fail, "solver failed"),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::cost;
    use crate::harness::generate::{generate, Family, GeneratorSpec};
    use crate::planar::fixtures::square;

    #[test]
    fn square_passes_without_holes() {
        let r = verify(&square(), cost(1, 2), cost(1, 2), Some(cost(1, 100))).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.iter().any(|c| c.status == Status::NotApplicable));
    }

    #[test]
    fn annulus_exercises_the_hole_checks() {
        let g = generate(&GeneratorSpec {
            family: Family::Annulus { rings: 2, spokes: 4 },
            max_weight: 3,
            max_cost: 3,
            seed: 0,
        })
        .unwrap();
        let r = verify(&g, cost(1, 2), cost(1, 20), Some(cost(1, 16))).unwrap();
        assert!(r.passed(), "{r:?}");
        let hole = r.checks.iter().find(|c| c.name == "pc-clustering-cost").unwrap();
        assert_eq!(hole.status, Status::Pass);
    }
}
