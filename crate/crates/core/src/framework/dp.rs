//! Weight-indexed dynamic program over a rooted tree decomposition.
//!
//! A vertex's weight is counted at the shallowest bag holding it; an edge is
//! charged at the deeper of the two shallowest bags of its endpoints (that bag
//! holds both). Tables map (bag assignment, side-U weight) to the least scaled
//! cut cost in the subtree.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cost::ScaledCosts;
use crate::framework::{BipartitionSolution, TreeDecomposition};
use crate::planar::{VertexId, WeightedGraph};
use crate::{Error, Result};

const INF: u64 = u64::MAX;

/// Default cap on the total number of table entries.
pub const DEFAULT_MAX_STATES: usize = 1 << 24;

#[derive(Clone, Debug)]
pub struct DpResult {
    pub solution: BipartitionSolution,
    /// Optimum in scaled integer costs.
    pub scaled_cost: u64,
    pub states: usize,
}

struct Node {
    /// acc[j][mask * stride + w]: local part plus the first j children.
    acc: Vec<Vec<u64>>,
    /// Per child: best child mask for (parent mask restricted to shared, w).
    proj_arg: Vec<Vec<u32>>,
    proj: Vec<Vec<u64>>,
    shared: Vec<usize>,
}

fn convolve(a: &[u64], b: &[u64], out: &mut [u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == INF {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(out.len() - i) {
            if y != INF {
                let s = x + y;
                if s < out[i + j] {
                    out[i + j] = s;
                }
            }
        }
    }
}

/// Exact minimum-cost bipartition of `h` with `weight(U)` in `[lo, hi]`.
/// `fixed_out`, if given, stays in `V`. Fails with `TooLarge` once the
/// tables would exceed `max_states` entries.
pub fn dp_bipartition(
    h: &WeightedGraph,
    td: &TreeDecomposition,
    lo: u64,
    hi: u64,
    fixed_out: Option<VertexId>,
    max_states: usize,
) -> Result<DpResult> {
    let n = h.num_vertices();
    let total = h.total_weight();
    if n == 0 {
        return if lo == 0 {
            Ok(DpResult {
                solution: BipartitionSolution::from_side(h, Vec::new()),
                scaled_cost: 0,
                states: 0,
            })
        } else {
            Err(Error::InfeasibleWindow { lo, hi })
        };
    }
    td.validate(h)?;
    let stride = total as usize + 1;
    let states = td.bags.iter().try_fold(0usize, |a, b| {
        1usize
            .checked_shl(b.len() as u32)
            .and_then(|s| s.checked_mul(stride))
            .map(|s| a + s)
    });
    let states = match states {
        Some(s) if s <= max_states && td.width < 31 => s,
        _ => {
            return Err(Error::TooLarge(format!(
                "dp tables exceed {max_states} states (width {})",
                td.width
            )))
        }
    };
    let m = td.len();
    let children = td.children();
    let mut depth = vec![0usize; m];
    let mut order = Vec::with_capacity(m);
    let root = td.root().expect("validated");
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &c in &children[x] {
            depth[c] = depth[x] + 1;
            order.push(c);
        }
        i += 1;
    }
    let mut top = vec![usize::MAX; n];
    for (x, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if top[v] == usize::MAX || depth[x] < depth[top[v]] {
                top[v] = x;
            }
        }
    }
    let costs = ScaledCosts::new(&h.edges.iter().map(|e| e.2).collect::<Vec<_>>()).scaled;
    let mut charged = vec![Vec::new(); m];
    for (e, &(u, v, _)) in h.edges.iter().enumerate() {
        if u == v {
            continue;
        }
        let x = if depth[top[u]] >= depth[top[v]] { top[u] } else { top[v] };
        charged[x].push(e);
    }
    let pos = |x: usize, v: VertexId| td.bags[x].binary_search(&v).ok();

    let mut nodes: Vec<Option<Node>> = (0..m).map(|_| None).collect();
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let size = 1usize << bag.len();
        let mut local = vec![INF; size * stride];
        for mask in 0..size {
            if let Some(p) = fixed_out.and_then(|f| pos(x, f)) {
                if mask >> p & 1 == 1 {
                    continue;
                }
            }
            let in_u = |v: VertexId| mask >> pos(x, v).unwrap() & 1 == 1;
            let w: u64 = bag
                .iter()
                .filter(|&&v| top[v] == x && in_u(v))
                .map(|&v| h.weights[v])
                .sum();
            let c: u64 = charged[x]
                .iter()
                .filter(|&&e| in_u(h.edges[e].0) != in_u(h.edges[e].1))
                .map(|&e| costs[e])
                .sum();
            local[mask * stride + w as usize] = c;
        }
        let mut acc = vec![local];
        let mut proj_all = Vec::new();
        let mut proj_arg_all = Vec::new();
        let mut shared_all = Vec::new();
        for &c in &children[x] {
            let child = nodes[c].as_ref().expect("children first");
            let table = child.acc.last().unwrap();
            let cbag = &td.bags[c];
            // child bit -> parent bit for shared vertices
            let shared: Vec<(usize, usize)> = cbag
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| pos(x, v).map(|p| (i, p)))
                .collect();
            let shared_mask: usize = shared.iter().map(|&(_, p)| 1 << p).sum();
            let mut proj = vec![INF; size * stride];
            let mut arg = vec![0u32; size * stride];
            for cm in 0..1usize << cbag.len() {
                let key: usize = shared
                    .iter()
                    .filter(|&&(i, _)| cm >> i & 1 == 1)
                    .map(|&(_, p)| 1 << p)
                    .sum();
                for w in 0..stride {
                    let val = table[cm * stride + w];
                    if val < proj[key * stride + w] {
                        proj[key * stride + w] = val;
                        arg[key * stride + w] = cm as u32;
                    }
                }
            }
            let prev = acc.last().unwrap();
            let mut next = vec![INF; size * stride];
            for mask in 0..size {
                let key = mask & shared_mask;
                convolve(
                    &prev[mask * stride..(mask + 1) * stride],
                    &proj[key * stride..(key + 1) * stride],
                    &mut next[mask * stride..(mask + 1) * stride],
                );
            }
            acc.push(next);
            proj_all.push(proj);
            proj_arg_all.push(arg);
            shared_all.push(shared_mask);
        }
        nodes[x] = Some(Node {
            acc,
            proj_arg: proj_arg_all,
            proj: proj_all,
            shared: shared_all,
        });
    }

    let hi = hi.min(total);
    let root_node = nodes[root].as_ref().unwrap();
    let table = root_node.acc.last().unwrap();
    let mut best: Option<(u64, u64, u64, usize)> = None;
    for mask in 0..1usize << td.bags[root].len() {
        for w in lo..=hi {
            let c = table[mask * stride + w as usize];
            if c == INF {
                continue;
            }
            let key = (c, (2 * w).abs_diff(lo + hi), w);
            if best.is_none_or(|(bc, bd, bw, _)| key < (bc, bd, bw)) {
                best = Some((key.0, key.1, key.2, mask));
            }
        }
    }
    let (scaled_cost, _, w, mask) = best.ok_or(Error::InfeasibleWindow { lo, hi })?;

    let mut side = vec![false; n];
    let mut stack = vec![(root, mask, w as usize)];
    while let Some((x, mask, mut w)) = stack.pop() {
        for (i, &v) in td.bags[x].iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let node = nodes[x].as_ref().unwrap();
        let ch = &children[x];
        for j in (0..ch.len()).rev() {
            let target = node.acc[j + 1][mask * stride + w];
            let key = mask & node.shared[j];
            let prev = &node.acc[j][mask * stride..(mask + 1) * stride];
            let proj = &node.proj[j][key * stride..(key + 1) * stride];
            let wc = (0..=w)
                .find(|&wc| prev[w - wc] != INF && proj[wc] != INF && prev[w - wc] + proj[wc] == target)
                .expect("table entry has a witness");
            stack.push((ch[j], node.proj_arg[j][key * stride + wc] as usize, wc));
            w -= wc;
        }
    }
    let solution = BipartitionSolution::from_side(h, side);
    let recomputed: u64 = h
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| solution.side_u[e.0] != solution.side_u[e.1])
        .map(|(i, _)| costs[i])
        .sum();
    if recomputed != scaled_cost || solution.weight_u != w {
        return Err(Error::InvariantViolation(format!(
            "witness gives ({recomputed}, {}) for table entry ({scaled_cost}, {w})",
            solution.weight_u
        )));
    }
    Ok(DpResult {
        solution,
        scaled_cost,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::int;
    use crate::harness::oracle::exact_bipartition;
    use crate::planar::fixtures;

    fn square() -> WeightedGraph {
        fixtures::square().to_weighted()
    }

    fn solve(h: &WeightedGraph, lo: u64, hi: u64) -> Result<DpResult> {
        let td = TreeDecomposition::min_fill(h)?;
        dp_bipartition(h, &td, lo, hi, None, DEFAULT_MAX_STATES)
    }

    #[test]
    fn square_half() {
        assert_eq!(solve(&square(), 2, 2).unwrap().solution.cost, int(2));
    }

    #[test]
    fn empty_window() {
        let r = solve(&square(), 0, 0).unwrap();
        assert_eq!(r.solution.cost, int(0));
        assert!(r.solution.side_u.iter().all(|s| !s));
    }

    #[test]
    fn full_window_is_global_min_cut() {
        let h = square();
        let w = h.total_weight();
        let exact = exact_bipartition(&h, 0, w, None).unwrap();
        assert_eq!(solve(&h, 0, w).unwrap().solution.cost, exact.cost);
    }

    #[test]
    fn infeasible() {
        let h = WeightedGraph::new(vec![2, 2], vec![(0, 1, int(1))]);
        assert_eq!(solve(&h, 1, 1).unwrap_err(), Error::InfeasibleWindow { lo: 1, hi: 1 });
    }

    #[test]
    fn fixed_vertex_stays_out() {
        let h = WeightedGraph::new(vec![1, 1], vec![(0, 1, int(1))]);
        let td = TreeDecomposition::min_fill(&h).unwrap();
        let r = dp_bipartition(&h, &td, 1, 1, Some(0), DEFAULT_MAX_STATES).unwrap();
        assert_eq!(r.solution.side_u, [false, true]);
    }

    #[test]
    fn state_limit() {
        let h = square();
        let td = TreeDecomposition::min_fill(&h).unwrap();
        assert!(matches!(
            dp_bipartition(&h, &td, 2, 2, None, 4),
            Err(Error::TooLarge(_))
        ));
    }
}
