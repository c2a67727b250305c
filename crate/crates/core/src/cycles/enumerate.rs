//! Brute-force enumeration of simple cycles, for oracles and small-instance
//! verification.

use alloc::vec;
use alloc::vec::Vec;

use crate::planar::{Cycle, Dart, EmbeddedGraph};
use crate::{Error, Result};

/// Every simple cycle (no repeated vertex; loops and two-edge cycles
/// included) once, in one orientation, using only edges with `ok[e]`.
/// Fails with `TooLarge` once more than `limit` cycles have been found.
pub fn simple_cycles(g: &EmbeddedGraph, ok: Option<&[bool]>, limit: usize) -> Result<Vec<Cycle>> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for r in 0..n {
        let mut path: Vec<Dart> = Vec::new();
        on_path[r] = true;
        // Iterative DFS: stack of (vertex, next rotation index).
        let mut stack: Vec<(usize, usize)> = vec![(r, 0)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let rot = g.rotation(v);
            if *i >= rot.len() {
                stack.pop();
                if let Some(d) = path.pop() {
                    on_path[g.head(d)] = false;
                }
                continue;
            }
            let d = rot[*i];
            *i += 1;
            if ok.is_some_and(|m| !m[d.edge()]) {
                continue;
            }
            let h = g.head(d);
            if h < r {
                continue;
            }
            if h == r {
                if path.last().is_some_and(|l| l.edge() == d.edge()) {
                    continue;
                }
                let mut darts = path.clone();
                darts.push(d);
                let c = Cycle::from_darts(darts).canonical();
                let rc = c.reversed().canonical();
                // A loop or any cycle is met in both orientations; keep one.
                if c.darts() <= rc.darts() {
                    out.push(c);
                    if out.len() > limit {
                        return Err(Error::TooLarge(alloc::format!("more than {limit} cycles")));
                    }
                }
                continue;
            }
            if on_path[h] {
                continue;
            }
            on_path[h] = true;
            path.push(d);
            stack.push((h, 0));
        }
        on_path[r] = false;
    }
    out.sort();
    Ok(out)
}
