//! Greedy family of non-crossing low-ratio cycles with splicing.
//!
//! Starting from the outer-face boundary, the builder repeatedly adds a
//! maximally face-enclosing cycle of ratio at most `lambda / epsilon` found
//! in some region. When no region has one, a pointer walks the preorder of
//! the region tree right to left; at each step, with `C_q` the pointer
//! cycle, the rootward-most ancestor `C_p` of weight below `2 w(C_q)` is
//! found and the cycles strictly between them in preorder are removed.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cycles::enumerate::simple_cycles;
use crate::cycles::{max_enclosing_low_ratio_cycle, search::DEFAULT_BUDGET};
use crate::planar::{enclosed_faces, Cycle, EmbeddedGraph, FaceId, FaceKind, RegionGraph, RegionTree};
use crate::{Cost, Error, Result};

/// A cycle ever inserted into the skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonCycle {
    pub id: usize,
    pub cycle: Cycle,
    pub cost: Cost,
    /// Weight enclosed in the whole graph.
    pub weight: u64,
    /// Faces of the region it was found in that it encloses, fixed at
    /// insertion.
    pub recorded_faces: Vec<FaceId>,
    /// Weight of `recorded_faces`.
    pub region_weight: u64,
    /// Id of the outer boundary of the region it was found in.
    pub found_in: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splice {
    pub p: usize,
    pub q: usize,
    pub removed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonEvent {
    Insert { id: usize, region: usize },
    Pointer { ptr: usize, splice: Splice },
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub alpha: Cost,
    /// Every cycle ever inserted, indexed by id; id 0 is the outer boundary.
    pub history: Vec<SkeletonCycle>,
    /// Ids of the final cycles; `tree` node `i` is `live[i]`.
    pub live: Vec<usize>,
    pub tree: RegionTree,
    pub events: Vec<SkeletonEvent>,
    /// Preorder suffix from the pointer, recorded at each pointer event.
    pub snapshots: Vec<(usize, Vec<usize>)>,
    pub total_weight: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct SkeletonConfig {
    pub budget: usize,
}

impl Default for SkeletonConfig {
    fn default() -> Self {
        SkeletonConfig { budget: DEFAULT_BUDGET }
    }
}

/// `2 ceil(log2 W) + 2`.
pub fn charge_bound(total_weight: u64) -> u64 {
    let log = if total_weight <= 1 {
        0
    } else {
        64 - (total_weight - 1).leading_zeros() as u64
    };
    2 * log + 2
}

fn tree_of(g: &EmbeddedGraph, history: &[SkeletonCycle], live: &[usize]) -> Result<RegionTree> {
    RegionTree::new(g, live.iter().map(|&id| history[id].cycle.clone()).collect())
}

fn preorder_ids(tree: &RegionTree, live: &[usize]) -> Vec<usize> {
    tree.preorder().iter().map(|&i| live[i]).collect()
}

fn region_key(tree: &RegionTree, live: &[usize], node: usize) -> (usize, Vec<usize>) {
    let mut holes: Vec<usize> = tree.children(node).iter().map(|&c| live[c]).collect();
    holes.sort_unstable();
    (live[node], holes)
}

pub fn build_skeleton(g: &EmbeddedGraph, lambda: Cost, epsilon: Cost) -> Result<Skeleton> {
    build_skeleton_with(g, lambda, epsilon, SkeletonConfig::default())
}

pub fn build_skeleton_with(g: &EmbeddedGraph, lambda: Cost, epsilon: Cost, cfg: SkeletonConfig) -> Result<Skeleton> {
    if lambda <= Cost::zero() || epsilon <= Cost::zero() {
        return Err(Error::Invalid("lambda and epsilon must be positive".into()));
    }
    let outer = g.outer_face().ok_or(Error::NoOuterFace)?;
    if g.face_weight(outer) != 0 || !g.walk_cost(g.face_boundary(outer)).is_zero() {
        return Err(Error::Invalid(
            "outer face must have zero weight and zero-cost boundary".into(),
        ));
    }
    let alpha = lambda / epsilon;
    let nf = g.num_faces();
    let root = Cycle::new(g, g.face_boundary(outer).to_vec())?.canonical();
    let total_weight = g.total_face_weight();
    let mut history = vec![SkeletonCycle {
        id: 0,
        cost: Cost::zero(),
        weight: total_weight,
        cycle: root,
        recorded_faces: Vec::new(),
        region_weight: 0,
        found_in: None,
    }];
    let mut live = vec![0usize];
    let mut ptr: Option<usize> = None;
    let mut events = Vec::new();
    let mut snapshots: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut barren: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let max_insertions = nf * nf;
    let mut insertions = 0usize;
    let mut pointer_events = 0usize;

    loop {
        let tree = tree_of(g, &history, &live)?;
        let mut found = None;
        for &node in tree.preorder() {
            let key = region_key(&tree, &live, node);
            if barren.contains(&key) {
                continue;
            }
            let region = tree.region(g, node)?;
            match max_enclosing_low_ratio_cycle(&region, alpha, nf, cfg.budget)? {
                Some(c) => {
                    found = Some((node, region, c));
                    break;
                }
                None => {
                    barren.insert(key);
                }
            }
        }
        if let Some((node, region, c)) = found {
            insertions += 1;
            if insertions > max_insertions {
                return Err(Error::InvariantViolation(format!(
                    "more than {max_insertions} insertions"
                )));
            }
            let inside = enclosed_faces(g, c.global.darts())?;
            let recorded_faces: Vec<FaceId> = (0..nf).filter(|&f| inside[f] && region.region_faces[f]).collect();
            let region_weight: u64 = recorded_faces.iter().map(|&f| g.face_weight(f)).sum();
            debug_assert_eq!(region_weight, c.weight);
            let weight = inside
                .iter()
                .zip(g.face_weights())
                .filter(|(i, _)| **i)
                .map(|(_, w)| w)
                .sum();
            let id = history.len();
            history.push(SkeletonCycle {
                id,
                cycle: c.global.clone(),
                cost: c.cost,
                weight,
                recorded_faces,
                region_weight,
                found_in: Some(live[node]),
            });
            live.push(id);
            events.push(SkeletonEvent::Insert { id, region: live[node] });
            check_suffixes(g, &history, &live, &snapshots)?;
            continue;
        }

        let order = preorder_ids(&tree, &live);
        let q = match ptr {
            None => *order.last().unwrap(),
            Some(old) => {
                let pos = order
                    .iter()
                    .position(|&x| x == old)
                    .ok_or_else(|| Error::InvariantViolation(format!("pointer cycle {old} was removed")))?;
                if pos == 0 {
                    return Err(Error::InvariantViolation("pointer moved past the root".into()));
                }
                order[pos - 1]
            }
        };
        ptr = Some(q);
        pointer_events += 1;
        if pointer_events > nf + 1 {
            return Err(Error::InvariantViolation("more pointer steps than faces".into()));
        }
        let qpos = order.iter().position(|&x| x == q).unwrap();
        snapshots.push((q, order[qpos..].to_vec()));
        let node_of: BTreeMap<usize, usize> = live.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let qn = node_of[&q];
        let wq = tree.weight(qn);
        let ppos = (0..=qpos)
            .find(|&i| {
                let n = node_of[&order[i]];
                (n == qn || tree.is_ancestor(n, qn)) && tree.weight(n) < 2 * wq
            })
            .unwrap_or(qpos);
        let removed: Vec<usize> = if ppos < qpos {
            order[ppos + 1..qpos].to_vec()
        } else {
            Vec::new()
        };
        live.retain(|id| !removed.contains(id));
        events.push(SkeletonEvent::Pointer {
            ptr: q,
            splice: Splice {
                p: order[ppos],
                q,
                removed,
            },
        });
        check_suffixes(g, &history, &live, &snapshots)?;
        if q == 0 {
            break;
        }
    }
    let tree = tree_of(g, &history, &live)?;
    let skeleton = Skeleton {
        alpha,
        history,
        live,
        tree,
        events,
        snapshots,
        total_weight,
    };
    skeleton.check()?;
    Ok(skeleton)
}

fn check_suffixes(
    g: &EmbeddedGraph,
    history: &[SkeletonCycle],
    live: &[usize],
    snapshots: &[(usize, Vec<usize>)],
) -> Result<()> {
    if snapshots.is_empty() {
        return Ok(());
    }
    let tree = tree_of(g, history, live)?;
    let order = preorder_ids(&tree, live);
    for (ptr, suffix) in snapshots {
        let ok = order
            .iter()
            .position(|x| x == ptr)
            .is_some_and(|pos| order[pos..] == suffix[..]);
        if !ok {
            return Err(Error::InvariantViolation(format!(
                "preorder suffix from cycle {ptr} changed"
            )));
        }
    }
    Ok(())
}

impl Skeleton {
    pub fn cycles(&self) -> impl Iterator<Item = &SkeletonCycle> {
        self.live.iter().map(|&id| &self.history[id])
    }

    pub fn total_cost(&self) -> Cost {
        self.cycles().fold(Cost::zero(), |a, c| a + c.cost)
    }

    /// Edge mask of all skeleton edges.
    pub fn edge_mask(&self, num_edges: usize) -> Vec<bool> {
        let mut m = vec![false; num_edges];
        for c in self.cycles() {
            for e in c.cycle.edges() {
                m[e] = true;
            }
        }
        m
    }

    /// `|C(f)|`: number of final cycles whose recorded faces contain `f`.
    pub fn charge_counts(&self, num_faces: usize) -> Vec<u64> {
        let mut counts = vec![0u64; num_faces];
        for c in self.cycles() {
            for &f in &c.recorded_faces {
                counts[f] += 1;
            }
        }
        counts
    }

    pub fn splices(&self) -> impl Iterator<Item = &Splice> {
        self.events.iter().filter_map(|e| match e {
            SkeletonEvent::Pointer { splice, .. } => Some(splice),
            _ => None,
        })
    }

    pub fn insertions(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, SkeletonEvent::Insert { .. }))
            .count()
    }

    pub fn region(&self, g: &EmbeddedGraph, node: usize) -> Result<RegionGraph> {
        self.tree.region(g, node)
    }

    /// Charge bound, cost bounds and ratio certificates.
    pub fn check(&self) -> Result<()> {
        let nf = self.tree.enclosed(0).len();
        let counts = self.charge_counts(nf);
        let bound = charge_bound(self.total_weight);
        if let Some(m) = counts.iter().max().filter(|&&m| m > bound) {
            return Err(Error::InvariantViolation(format!(
                "face charged {m} times, bound {bound}"
            )));
        }
        for c in self.cycles().filter(|c| c.id != 0) {
            if c.region_weight == 0 || c.cost > self.alpha * Cost::from_integer(c.region_weight as i128) {
                return Err(Error::InvariantViolation(format!(
                    "cycle {} exceeds the ratio bound",
                    c.id
                )));
            }
        }
        // sum over f of |C(f)| w(f)
        let charged: u64 = self.cycles().map(|c| c.region_weight).sum();
        let cost = self.total_cost();
        if cost > self.alpha * Cost::from_integer(charged as i128) {
            return Err(Error::InvariantViolation("skeleton cost exceeds its charges".into()));
        }
        if cost > self.cost_bound() {
            return Err(Error::InvariantViolation(
                "skeleton cost exceeds alpha W (2 log W + 2)".into(),
            ));
        }
        Ok(())
    }

    /// `alpha * W * (2 ceil(log2 W) + 2)`.
    pub fn cost_bound(&self) -> Cost {
        self.alpha * Cost::from_integer((self.total_weight * charge_bound(self.total_weight)) as i128)
    }
}

/// Outcome of a check that may be skipped on large instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus<W> {
    Pass,
    Fail(W),
    Skipped(alloc::string::String),
}

/// Brute-force check that every remaining low-ratio cycle strictly contained
/// in a final region encloses its heaviest hole and has ratio above `alpha` once that hole's
/// weight is discounted.
pub fn verify_no_low_ratio_remaining(
    g: &EmbeddedGraph,
    cycles: &[Cycle],
    alpha: Cost,
    max_edges: usize,
) -> Result<CheckStatus<Cycle>> {
    let tree = RegionTree::new(g, cycles.to_vec())?;
    let known: BTreeSet<Vec<bool>> = cycles.iter().map(|c| c.edge_mask(g.num_edges())).collect();
    for node in 0..tree.len() {
        let region = tree.region(g, node)?;
        let lg = &region.graph;
        if lg.num_edges() > max_edges {
            return Ok(CheckStatus::Skipped(format!("region with {} edges", lg.num_edges())));
        }
        let heaviest = region.heaviest_hole();
        let all = match simple_cycles(lg, None, crate::harness::oracle::MAX_CYCLES) {
            Ok(all) => all,
            Err(Error::TooLarge(s)) => return Ok(CheckStatus::Skipped(s)),
            Err(e) => return Err(e),
        };
        for c in all {
            let global = Cycle::from_darts(c.darts().iter().map(|&d| region.to_global(d)).collect());
            // cycles made only of boundary edges lie in the skeleton already
            if known.contains(&global.edge_mask(g.num_edges())) || !c.edges().any(|e| region.is_strict(e)) {
                continue;
            }
            let inside = crate::harness::oracle::flood_fill_enclosed(lg, c.darts())?;
            let mut w_g = 0u64;
            let mut encloses_heaviest = false;
            for (f, kind) in region.face_kind.iter().enumerate() {
                if !inside[f] {
                    continue;
                }
                match kind {
                    FaceKind::Interior(_) => w_g += lg.face_weight(f),
                    FaceKind::Hole(h) => {
                        w_g += region.hole_weights[*h];
                        encloses_heaviest |= Some(*h) == heaviest;
                    }
                    FaceKind::Exterior => {}
                }
            }
            let cost = c.cost(lg);
            let low = w_g > 0 && cost <= alpha * Cost::from_integer(w_g as i128);
            if !low {
                continue;
            }
            if !encloses_heaviest {
                return Ok(CheckStatus::Fail(global));
            }
            let w_s = w_g - region.hole_weights[heaviest.unwrap()];
            if w_s > 0 && cost <= alpha * Cost::from_integer(w_s as i128) {
                return Ok(CheckStatus::Fail(global));
            }
        }
    }
    Ok(CheckStatus::Pass)
}
