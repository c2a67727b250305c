//! Edmonds–Karp maximum flow on small undirected graphs.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// Minimum `s`-`t` cut of an undirected capacitated multigraph. Returns the
/// cut value and a source side where both sides induce connected subgraphs
/// (when the graph is connected), so the cut is a bond.
pub fn min_cut(n: usize, edges: &[(usize, usize, u64)], s: usize, t: usize) -> (u64, Vec<bool>) {
    assert_ne!(s, t);
    // arc 2i: u->v, arc 2i+1: v->u; both start with the edge capacity.
    let mut cap: Vec<u64> = edges.iter().flat_map(|&(_, _, c)| [c, c]).collect();
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        if u != v {
            adj[u].push(2 * i);
            adj[v].push(2 * i + 1);
        }
    }
    let head = |a: usize| {
        if a.is_multiple_of(2) {
            edges[a / 2].1
        } else {
            edges[a / 2].0
        }
    };
    let mut value = 0u64;
    loop {
        let mut prev: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &adj[u] {
                let h = head(a);
                if !seen[h] && cap[a] > 0 {
                    seen[h] = true;
                    prev[h] = Some(a);
                    q.push_back(h);
                }
            }
        }
        if !seen[t] {
            // seen = residual reachable set. Keep t's component of the rest
            // as the sink side; everything else joins the source side.
            let mut sink = vec![false; n];
            sink[t] = true;
            let mut q = VecDeque::from([t]);
            while let Some(u) = q.pop_front() {
                for &a in &adj[u] {
                    let h = head(a);
                    if !seen[h] && !sink[h] {
                        sink[h] = true;
                        q.push_back(h);
                    }
                }
            }
            let side = sink.iter().map(|x| !x).collect();
            return (value, side);
        }
        let mut bottleneck = u64::MAX;
        let mut v = t;
        while let Some(a) = prev[v] {
            bottleneck = bottleneck.min(cap[a]);
            v = head(a ^ 1);
        }
        let mut v = t;
        while let Some(a) = prev[v] {
            cap[a] -= bottleneck;
            cap[a ^ 1] += bottleneck;
            v = head(a ^ 1);
        }
        value += bottleneck;
    }
}
