use planar_bisect_core::cost::cost;
use planar_bisect_core::harness::generate::{dual_corpus, generate, Family, GeneratorSpec};
use planar_bisect_core::planar::{cycles_cross, RegionTree};
use planar_bisect_core::skeleton::{
    build_skeleton, charge_bound, verify_no_low_ratio_remaining, CheckStatus, SkeletonEvent,
};
use planar_bisect_core::{Cost, Cycle, EmbeddedGraph};

fn params() -> Vec<(Cost, Cost)> {
    vec![
        (cost(1, 4), cost(1, 2)),
        (cost(1, 2), cost(1, 2)),
        (cost(1, 1), cost(1, 3)),
        (cost(3, 1), cost(1, 2)),
    ]
}

fn final_cycles(s: &planar_bisect_core::skeleton::Skeleton) -> Vec<Cycle> {
    s.cycles().map(|c| c.cycle.clone()).collect()
}

#[test]
fn skeleton_invariants_on_corpus() {
    let mut nontrivial = 0;
    for g in dual_corpus(9, 2) {
        for (lambda, eps) in params() {
            let s = build_skeleton(&g, lambda, eps).unwrap();
            let cycles = final_cycles(&s);
            for i in 0..cycles.len() {
                for j in i + 1..cycles.len() {
                    assert!(!cycles_cross(&g, &cycles[i], &cycles[j]));
                }
            }
            RegionTree::new(&g, cycles.clone()).unwrap();
            let counts = s.charge_counts(g.num_faces());
            assert!(counts.iter().all(|&c| c <= charge_bound(s.total_weight)));
            assert!(s.total_cost() <= s.cost_bound());
            let pointer_steps = s
                .events
                .iter()
                .filter(|e| matches!(e, SkeletonEvent::Pointer { .. }))
                .count();
            assert!(pointer_steps <= g.num_faces() + 1);
            assert!(s.insertions() <= g.num_faces() * g.num_faces());
            if cycles.len() > 1 {
                nontrivial += 1;
            }
            let status = verify_no_low_ratio_remaining(&g, &cycles, s.alpha, 40).unwrap();
            assert_eq!(status, CheckStatus::Pass, "lambda {lambda} eps {eps}");
        }
    }
    assert!(nontrivial > 10);
}

#[test]
fn first_pointer_pass_is_trivial_without_cycles() {
    // Ratio bound below every cycle: nothing is inserted.
    let g = dual_corpus(6, 1).remove(0);
    let s = build_skeleton(&g, cost(1, 1000), cost(1, 1)).unwrap();
    assert_eq!(s.live, vec![0]);
    assert_eq!(s.events.len(), 1);
    match &s.events[0] {
        SkeletonEvent::Pointer { ptr, splice } => {
            assert_eq!(*ptr, 0);
            assert!(splice.removed.is_empty());
        }
        e => panic!("unexpected event {e:?}"),
    }
}

fn nested() -> EmbeddedGraph {
    let spec = GeneratorSpec {
        family: Family::NestedCycles { depth: 4, spokes: 4 },
        max_weight: 1,
        max_cost: 3,
        seed: 0,
    };
    generate(&spec).unwrap().dualize().normalize_outer().0
}

#[test]
fn nested_rings_splice() {
    let g = nested();
    let s = build_skeleton(&g, cost(1, 1), cost(1, 1)).unwrap();
    assert!(s.live.len() > 1);
    let cycles = final_cycles(&s);
    assert_eq!(
        verify_no_low_ratio_remaining(&g, &cycles, s.alpha, 60).unwrap(),
        CheckStatus::Pass
    );
    // every splice removes only cycles strictly between p and q
    for sp in s.splices() {
        assert!(!sp.removed.contains(&sp.p) && !sp.removed.contains(&sp.q));
    }
}

#[test]
fn dropping_a_cycle_is_detected() {
    let mut detected = 0;
    for g in dual_corpus(9, 2) {
        let s = build_skeleton(&g, cost(1, 1), cost(1, 2)).unwrap();
        let cycles = final_cycles(&s);
        for drop in 1..cycles.len() {
            let mut rest = cycles.clone();
            rest.remove(drop);
            if let CheckStatus::Fail(w) = verify_no_low_ratio_remaining(&g, &rest, s.alpha, 40).unwrap() {
                assert!(w.cost(&g) > Cost::from_integer(0) || !w.is_empty());
                detected += 1;
            }
        }
    }
    assert!(detected > 0);
}
