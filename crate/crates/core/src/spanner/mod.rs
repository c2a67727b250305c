//! The spanner: a cheap edge set of the dual that keeps a near-optimal,
//! near-balanced solution.
//!
//! Starting from the skeleton, every hole-free region gets boundary
//! shortcuts; every region with holes gets its well-connected cover graph,
//! shortcuts between the vertices of each component of that graph (both
//! projected back from the double cover), and the cheapest cycle enclosing
//! its heaviest hole.

mod containment;
mod shortcut;

pub(crate) use containment::window;
pub use containment::{
    decompose_at_skeleton, replace_paths, verify_containment, Containment, ContainmentReport, PathPiece, Replacement,
    ReplacementReport, ReplacementStep,
};
pub use shortcut::{boundary_spanner, component_spanner, distance_violation, Shortcuts};

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::clustering::build_well_connected_cover;
use crate::cover::DoubleCover;
use crate::cycles::cheapest_enclosing_cycle;
use crate::planar::{Cycle, EdgeId, EmbeddedGraph};
use crate::skeleton::{build_skeleton_with, charge_bound, Skeleton, SkeletonConfig};
use crate::{Cost, Error, Result};

/// Why an edge is in the spanner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Skeleton,
    HoleFreeShortcut,
    CoverClustering,
    CoverShortcut,
    HoleEnclosingCycle,
}

impl Tag {
    pub const ALL: [Tag; 5] = [
        Tag::Skeleton,
        Tag::HoleFreeShortcut,
        Tag::CoverClustering,
        Tag::CoverShortcut,
        Tag::HoleEnclosingCycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Skeleton => "skeleton",
            Tag::HoleFreeShortcut => "hole-free-shortcut",
            Tag::CoverClustering => "cover-clustering",
            Tag::CoverShortcut => "cover-shortcut",
            Tag::HoleEnclosingCycle => "hole-enclosing-cycle",
        }
    }
}

/// What was built for one region of the skeleton.
#[derive(Clone, Debug)]
pub struct RegionSpanner {
    pub node: usize,
    pub holes: usize,
    pub boundary_cost: Cost,
    /// Cost of the hole-free shortcuts or of the cover shortcuts, in the
    /// region (cover costs are counted once per projected edge).
    pub shortcut_cost: Cost,
    pub cover_components: usize,
    /// Cheapest cycle enclosing the heaviest hole, global darts.
    pub enclosing_cycle: Option<Cycle>,
}

#[derive(Clone, Debug)]
pub struct SpannerEdges {
    pub skeleton: Skeleton,
    pub lambda: Cost,
    pub epsilon: Cost,
    /// Edge mask per tag, in `Tag::ALL` order.
    pub tagged: Vec<Vec<bool>>,
    /// Union of all tags.
    pub edges: Vec<bool>,
    pub tag_costs: Vec<Cost>,
    pub cost: Cost,
    pub regions: Vec<RegionSpanner>,
}

impl SpannerEdges {
    pub fn tag_mask(&self, t: Tag) -> &[bool] {
        &self.tagged[t as usize]
    }

    pub fn tag_cost(&self, t: Tag) -> Cost {
        self.tag_costs[t as usize]
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges[e]
    }

    pub fn edge_list(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.edges[e]).collect()
    }

    /// Union of every tag except `t`.
    pub fn edges_without(&self, t: Tag) -> Vec<bool> {
        let mut out = vec![false; self.edges.len()];
        for s in Tag::ALL.into_iter().filter(|&s| s != t) {
            for (o, &x) in out.iter_mut().zip(self.tag_mask(s)) {
                *o |= x;
            }
        }
        out
    }

    /// Tags carried by edge `e`.
    pub fn tags_of(&self, e: EdgeId) -> Vec<Tag> {
        Tag::ALL.into_iter().filter(|&t| self.tag_mask(t)[e]).collect()
    }

    /// `c(S) / (lambda W log W)`, the measured constant in front of the
    /// spanner cost bound.
    pub fn cost_ratio(&self) -> Option<Cost> {
        let w = self.skeleton.total_weight;
        let denom = self.lambda * Cost::from_integer((w * charge_bound(w)) as i128);
        (!denom.is_zero()).then(|| self.cost / denom)
    }
}

fn mark(mask: &mut [bool], e: EdgeId) {
    mask[e] = true;
}

pub fn build_spanner(g: &EmbeddedGraph, lambda: Cost, epsilon: Cost) -> Result<SpannerEdges> {
    build_spanner_with(g, lambda, epsilon, SkeletonConfig::default())
}

pub fn build_spanner_with(g: &EmbeddedGraph, lambda: Cost, epsilon: Cost, cfg: SkeletonConfig) -> Result<SpannerEdges> {
    let skeleton = build_skeleton_with(g, lambda, epsilon, cfg)?;
    let m = g.num_edges();
    let mut tagged = vec![vec![false; m]; Tag::ALL.len()];
    tagged[Tag::Skeleton as usize] = skeleton.edge_mask(m);
    let mut regions = Vec::new();
    for node in 0..skeleton.tree.len() {
        let region = skeleton.region(g, node)?;
        let rg = &region.graph;
        let boundary_cost = (0..rg.num_edges())
            .filter(|&e| region.on_boundary[e])
            .fold(Cost::zero(), |a, e| a + rg.cost(e));
        let mut report = RegionSpanner {
            node,
            holes: region.holes.len(),
            boundary_cost,
            shortcut_cost: Cost::zero(),
            cover_components: 0,
            enclosing_cycle: None,
        };
        if region.holes.is_empty() {
            let s = boundary_spanner(&region, epsilon)?;
            report.shortcut_cost = s.cost;
            for e in (0..rg.num_edges()).filter(|&e| s.edges[e]) {
                mark(&mut tagged[Tag::HoleFreeShortcut as usize], region.edge_map[e]);
            }
            regions.push(report);
            continue;
        }
        let heaviest = region.heaviest_hole().expect("region has holes");
        match cheapest_enclosing_cycle(&region, heaviest) {
            Ok(c) => {
                for e in c.global.edges() {
                    mark(&mut tagged[Tag::HoleEnclosingCycle as usize], e);
                }
                report.enclosing_cycle = Some(c.global);
            }
            Err(Error::NoInteriorEnclosingCycle) => {}
            Err(e) => return Err(e),
        }
        let cover = DoubleCover::new(region)?;
        let wcc = build_well_connected_cover(&cover, epsilon)?;
        let region = &cover.region;
        let project = |e: EdgeId| region.edge_map[DoubleCover::project_edge(e)];
        for e in (0..cover.graph.num_edges()).filter(|&e| wcc.edges[e]) {
            mark(&mut tagged[Tag::CoverClustering as usize], project(e));
        }
        let mut local = vec![false; region.graph.num_edges()];
        for comp in wcc.component_edges(&cover) {
            let mut a = vec![false; cover.graph.num_edges()];
            for e in comp {
                a[e] = true;
            }
            let s = component_spanner(&cover.graph, &a, epsilon)?;
            for e in (0..cover.graph.num_edges()).filter(|&e| s.edges[e]) {
                local[DoubleCover::project_edge(e)] = true;
                mark(&mut tagged[Tag::CoverShortcut as usize], project(e));
            }
        }
        report.cover_components = wcc.num_components;
        report.shortcut_cost = (0..region.graph.num_edges())
            .filter(|&e| local[e])
            .fold(Cost::zero(), |a, e| a + region.graph.cost(e));
        regions.push(report);
    }
    let mut edges = vec![false; m];
    for t in &tagged {
        for (o, &x) in edges.iter_mut().zip(t) {
            *o |= x;
        }
    }
    let cost_of = |mask: &[bool]| (0..m).filter(|&e| mask[e]).fold(Cost::zero(), |a, e| a + g.cost(e));
    let tag_costs = tagged.iter().map(|t| cost_of(t)).collect();
    let cost = cost_of(&edges);
    Ok(SpannerEdges {
        skeleton,
        lambda,
        epsilon,
        tagged,
        edges,
        tag_costs,
        cost,
        regions,
    })
}
