use planar_bisect_core::cost::cost;
use planar_bisect_core::cover::{CoverFace, DoubleCover};
use planar_bisect_core::harness::generate::{annular_region, dual_corpus};
use planar_bisect_core::planar::{enclosed_faces, FaceKind, RegionGraph};
use planar_bisect_core::skeleton::build_skeleton;
use planar_bisect_core::Dart;
use proptest::prelude::*;

/// Regions with holes taken from skeletons of the small dual corpus.
fn skeleton_regions(max_edges: usize) -> Vec<RegionGraph> {
    let mut out = Vec::new();
    for g in dual_corpus(9, 2) {
        for (lambda, eps) in [(cost(1, 2), cost(1, 2)), (cost(1, 1), cost(1, 3))] {
            let s = build_skeleton(&g, lambda, eps).unwrap();
            for node in 0..s.tree.len() {
                let r = s.region(&g, node).unwrap();
                if !r.holes.is_empty() && r.graph.num_edges() <= max_edges {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn closed_walks(g: &planar_bisect_core::EmbeddedGraph, max_len: usize, visit: &mut dyn FnMut(&[Dart])) {
    fn go(
        g: &planar_bisect_core::EmbeddedGraph,
        start: usize,
        max_len: usize,
        walk: &mut Vec<Dart>,
        visit: &mut dyn FnMut(&[Dart]),
    ) {
        let v = walk.last().map_or(start, |&d| g.head(d));
        if !walk.is_empty() && v == start {
            visit(walk);
        }
        if walk.len() == max_len {
            return;
        }
        for &d in g.rotation(v) {
            walk.push(d);
            go(g, start, max_len, walk, visit);
            walk.pop();
        }
    }
    for s in 0..g.num_vertices() {
        go(g, s, max_len, &mut Vec::new(), visit);
    }
}

#[test]
fn closed_cover_walks_never_enclose_the_hole() {
    let mut regions: Vec<RegionGraph> = (0..3).map(|seed| annular_region(2, 3, seed, &[]).unwrap()).collect();
    regions.extend(skeleton_regions(10));
    assert!(regions.len() > 3);
    let mut checked = 0u64;
    for r in regions {
        let cover = DoubleCover::new(r.clone()).unwrap();
        let hf = cover.hole_face();
        closed_walks(&cover.graph, 10, &mut |w| {
            let p = cover.project_walk(w);
            assert!(r.graph.is_walk(&p, true));
            assert!(!enclosed_faces(&r.graph, &p).unwrap()[hf], "{p:?}");
            checked += 1;
        });
    }
    assert!(checked > 1000);
}

#[test]
fn face_structure() {
    let r = annular_region(2, 4, 1, &[]).unwrap();
    let extra = (0..r.graph.num_faces())
        .find(|&f| matches!(r.face_kind[f], FaceKind::Interior(_)))
        .unwrap();
    let FaceKind::Interior(global_extra) = r.face_kind[extra] else {
        unreachable!()
    };
    let r = annular_region(2, 4, 1, &[global_extra]).unwrap();
    assert_eq!(r.holes.len(), 2);
    let cover = DoubleCover::new(r.clone()).unwrap();
    let kinds: Vec<CoverFace> = (0..cover.graph.num_faces()).map(|f| cover.classify_face(f)).collect();
    let count = |k: CoverFace| kinds.iter().filter(|&&x| x == k).count();
    assert_eq!(count(CoverFace::Double(FaceKind::Exterior)), 1);
    assert_eq!(count(CoverFace::Double(FaceKind::Hole(cover.hole))), 1);
    let other = 1 - cover.hole;
    assert_eq!(count(CoverFace::Single(FaceKind::Hole(other))), 2);
    // outer boundary edges appear twice on the cover's outer face
    let outer = cover.graph.outer_face().unwrap();
    let on_outer = r.on_outer.iter().filter(|x| **x).count();
    assert_eq!(cover.graph.face_boundary(outer).len(), 2 * on_outer);
}

#[test]
fn crossing_the_cut_switches_sheet() {
    let r = annular_region(2, 4, 0, &[]).unwrap();
    let cover = DoubleCover::new(r.clone()).unwrap();
    let swaps: Vec<usize> = (0..r.graph.num_edges()).filter(|&e| cover.swaps[e]).collect();
    assert!(!swaps.is_empty());
    for &e in &swaps {
        let d = Dart::new(e, 0);
        let l = cover.lift_walk(&[d]).unwrap();
        assert_eq!(DoubleCover::sheet(cover.graph.head(l[0])), 1);
    }
    for e in (0..r.graph.num_edges()).filter(|&e| !cover.swaps[e]) {
        let l = cover.lift_walk(&[Dart::new(e, 0)]).unwrap();
        assert_eq!(DoubleCover::sheet(cover.graph.head(l[0])), 0);
    }
}

#[test]
fn walks_outside_the_region_are_rejected() {
    let r = annular_region(2, 4, 0, &[]).unwrap();
    let cover = DoubleCover::new(r.clone()).unwrap();
    let bogus = Dart::new(r.graph.num_edges() + 3, 0);
    assert!(cover.lift_walk(&[bogus]).is_err());
}

#[test]
fn regions_without_holes_have_no_cover() {
    let g = &dual_corpus(6, 1)[0];
    let s = build_skeleton(g, cost(1, 1000), cost(1, 1)).unwrap();
    assert!(DoubleCover::new(s.region(g, 0).unwrap()).is_err());
}

fn random_walk(g: &planar_bisect_core::EmbeddedGraph, start: usize, choices: &[usize]) -> Vec<Dart> {
    let mut v = start % g.num_vertices();
    let mut out = Vec::new();
    for &c in choices {
        let rot = g.rotation(v);
        let d = rot[c % rot.len()];
        out.push(d);
        v = g.head(d);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn lift_then_project_is_identity(
        rings in 2usize..4, spokes in 3usize..6, seed in 0u64..50,
        start in 0usize..100, choices in proptest::collection::vec(0usize..8, 0..25),
    ) {
        let r = annular_region(rings, spokes, seed, &[]).unwrap();
        let cover = DoubleCover::new(r.clone()).unwrap();
        let p = random_walk(&r.graph, start, &choices);
        let lifted = cover.lift_walk(&p).unwrap();
        prop_assert_eq!(cover.project_walk(&lifted), p.clone());
        prop_assert!(lifted.is_empty() || cover.graph.is_walk(&lifted, false));
        prop_assert_eq!(cover.graph.walk_cost(&lifted), r.graph.walk_cost(&p));
        if let (Some(first), Some(last)) = (lifted.first(), lifted.last()) {
            prop_assert_eq!(DoubleCover::sheet(cover.graph.tail(*first)), 0);
            prop_assert_eq!(DoubleCover::sheet(cover.graph.head(*last)), cover.x2(&p));
        }
    }
}
