use alloc::vec::Vec;

use super::{Cycle, Dart, EmbeddedGraph};

#[derive(Clone, Copy)]
struct Walk<'a> {
    darts: &'a [Dart],
    closed: bool,
}

impl Walk<'_> {
    fn at(&self, i: usize) -> Option<Dart> {
        if self.closed {
            Some(self.darts[i % self.darts.len()])
        } else {
            self.darts.get(i).copied()
        }
    }
}

/// `(x, y, z)` appear in this clockwise cyclic order among positions modulo
/// `n`; false if any two coincide.
fn cyclic(n: usize, x: usize, y: usize, z: usize) -> bool {
    if x == y || y == z || x == z {
        return false;
    }
    (y + n - x) % n < (z + n - x) % n
}

/// Clockwise order of three darts with a common head, read off the rotation
/// of their reverses.
fn in_order(g: &EmbeddedGraph, a: Dart, b: Dart, c: Dart) -> bool {
    let v = g.head(a);
    debug_assert!(g.head(b) == v && g.head(c) == v);
    let n = g.degree(v);
    cyclic(n, g.rot_pos(a.rev()), g.rot_pos(b.rev()), g.rot_pos(c.rev()))
}

fn out_order(g: &EmbeddedGraph, a: Dart, b: Dart, c: Dart) -> bool {
    let v = g.tail(a);
    debug_assert!(g.tail(b) == v && g.tail(c) == v);
    cyclic(g.degree(v), g.rot_pos(a), g.rot_pos(b), g.rot_pos(c))
}

/// Does `q` form a crossing configuration with `p` at some pair of positions?
fn configuration(g: &EmbeddedGraph, p: Walk, q: Walk, same: bool) -> bool {
    let (np, nq) = (p.darts.len(), q.darts.len());
    let last_p = if p.closed { np } else { np.saturating_sub(1) };
    let last_q = if q.closed { nq } else { nq.saturating_sub(1) };
    for i in 0..last_p {
        let a = p.darts[i];
        for j in 0..last_q {
            if same && i == j {
                continue;
            }
            let c = q.darts[j];
            if a == c || g.head(a) != g.head(c) {
                continue;
            }
            let mut k = 0;
            while k < np.min(nq) {
                match (p.at(i + 1 + k), q.at(j + 1 + k)) {
                    (Some(x), Some(y)) if x == y => k += 1,
                    _ => break,
                }
            }
            let (Some(b), Some(d)) = (p.at(i + 1 + k), q.at(j + 1 + k)) else {
                continue;
            };
            if b == d {
                continue;
            }
            let (a1, b1) = if k == 0 {
                (b, a)
            } else {
                (p.at(i + 1).unwrap(), p.at(i + k).unwrap())
            };
            if in_order(g, a, a1.rev(), c) && out_order(g, b, b1.rev(), d) {
                return true;
            }
        }
    }
    false
}

fn reverse(darts: &[Dart]) -> Vec<Dart> {
    darts.iter().rev().map(|d| d.rev()).collect()
}

/// Whether two walks cross, in either traversal direction of `q`.
pub fn walks_cross(g: &EmbeddedGraph, p: &[Dart], p_closed: bool, q: &[Dart], q_closed: bool) -> bool {
    if p.is_empty() || q.is_empty() {
        return false;
    }
    let rq = reverse(q);
    let pw = Walk {
        darts: p,
        closed: p_closed,
    };
    let qw = Walk {
        darts: q,
        closed: q_closed,
    };
    let rw = Walk {
        darts: &rq,
        closed: q_closed,
    };
    configuration(g, pw, qw, false) || configuration(g, pw, rw, false) || configuration(g, qw, pw, false)
}

pub fn cycles_cross(g: &EmbeddedGraph, a: &Cycle, b: &Cycle) -> bool {
    walks_cross(g, a.darts(), true, b.darts(), true)
}

/// Whether a closed walk forms a crossing configuration with itself.
pub fn self_crosses(g: &EmbeddedGraph, darts: &[Dart]) -> bool {
    let w = Walk { darts, closed: true };
    configuration(g, w, w, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::int;
    use crate::planar::Edge;
    use alloc::vec;

    /// Plus sign: centre 0, arms 1 (up), 2 (right), 3 (down), 4 (left).
    fn plus() -> EmbeddedGraph {
        let edges = (1..5).map(|v| Edge { u: 0, v, cost: int(1) }).collect();
        let rotation = vec![
            (0..4).map(|e| Dart::new(e, 0)).collect(),
            vec![Dart::new(0, 1)],
            vec![Dart::new(1, 1)],
            vec![Dart::new(2, 1)],
            vec![Dart::new(3, 1)],
        ];
        EmbeddedGraph::new(vec![0; 5], edges, rotation).unwrap()
    }

    fn inward(arm: usize) -> Dart {
        Dart::new(arm, 1)
    }

    fn outward(arm: usize) -> Dart {
        Dart::new(arm, 0)
    }

    #[test]
    fn interleaved_paths_cross() {
        let g = plus();
        // up->down and left->right
        let p = [inward(0), outward(2)];
        let q = [inward(3), outward(1)];
        assert!(walks_cross(&g, &p, false, &q, false));
        assert!(walks_cross(&g, &q, false, &p, false));
    }

    #[test]
    fn adjacent_slots_do_not_cross() {
        let g = plus();
        // up->right and left->down touch without crossing
        let p = [inward(0), outward(1)];
        let q = [inward(3), outward(2)];
        assert!(!walks_cross(&g, &p, false, &q, false));
    }

    #[test]
    fn reversed_direction_still_detected() {
        let g = plus();
        let p = [inward(0), outward(2)];
        let q = [inward(1), outward(3)];
        assert!(walks_cross(&g, &p, false, &q, false));
    }
}
