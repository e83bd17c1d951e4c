//! Closed forms for the two coarse parameters on catalog families.
//!
//! `f(n)` is the maximum number of edges induced by any `n`-vertex subset;
//! `g(r)` is the minimum ball volume `min_x |B(x, r)|`. Each closed form
//! below is derived from the family's construction and is cross-checked in
//! the test suites against exhaustive enumeration (for `f`) and truncated
//! ball sweeps (for `g`). Families without an entry return `None` and fall
//! back to enumeration or flagged bounds.
//!
//! Truncations are refused outright: clipping a graph at a radius shrinks
//! frontier balls and can remove the subsets a formula counts on, so the
//! parent family's forms do not transfer. Callers get `None` and fall back
//! to exact finite computation.
//!
//! Derivation sketches (geometry only, per family):
//!
//! * paths / rays / lines / trees / stars / star-rays are acyclic, so any
//!   `n`-subset induces at most `n − 1` edges, attained by a connected piece;
//! * cliques: any `n`-subset is complete;
//! * cycles: a strict arc gives `n − 1`; only the full cycle closes the loop;
//! * lollipop shapes (clique of order `q` with a path tail): for `n ≤ q` sit
//!   inside the clique; beyond that the best extra vertices are the path run
//!   attached to it, one edge each — `C(q,2) + (n − q)`;
//! * multiscale chains contain a complete subgraph on `floor(order / 2)`
//!   vertices for every block order, so `f(n) = C(n,2)` as long as some
//!   block's clique reaches `n` (and always for `n = 2`: an edge exists).
//!   Beyond the largest clique, subsets can straddle several blocks, so no
//!   simple form applies and enumeration takes over;
//! * ball minima: interior path vertices see `2r + 1` vertices, a ray/path
//!   endpoint sees `r + 1`, and around a clique of order `q` the ball picks
//!   up the whole clique at once but then only one path vertex per step —
//!   roughly `q + r`. The per-family forms take the minimum of the shapes
//!   the family actually contains. For multiscale chains the origin-side
//!   ball (computed exactly by walking the block spine) competes with the
//!   deep-path `2r + 1` shape.

use crate::exact::enumerate::binomial;
use crate::graph::{multiscale, Family, GraphHandle};

/// Closed-form `f(n)`, if this family has one. `n ≥ 1` and, on finite
/// graphs, `n ≤ |V|` must already be validated by the caller.
pub fn f_closed(g: &GraphHandle, n: u64) -> Option<u64> {
    if n == 0 || g.is_truncation() {
        return None;
    }
    let params = &g.meta().params;
    match g.family() {
        Family::Clique => Some(binomial(n, 2)),
        Family::Path | Family::Star | Family::Ray | Family::Line => Some(n - 1),
        Family::RegularTree | Family::StarRay => Some(n - 1),
        Family::Cycle => {
            let m = params[0];
            Some(if n < m { n - 1 } else { m })
        }
        Family::Lollipop | Family::InfiniteLollipop => {
            let q = params[0] / 2;
            Some(lollipop_f(q, n))
        }
        Family::MultiScale => {
            let orders = g.meta().scales.as_ref()?.orders();
            // The block of order m carries a complete subgraph on floor(m/2)
            // vertices; C(n,2) cannot be beaten, so the formula holds exactly
            // while some clique (or, for n = 2, any edge) is big enough.
            // Larger subsets can straddle blocks — no simple form.
            let max_clique = orders.iter().map(|&m| m / 2).max()?;
            if n <= max_clique.max(2) {
                Some(binomial(n, 2))
            } else {
                None
            }
        }
        Family::Grid | Family::Lattice => None,
    }
}

/// Clique of order `q` plus a path tail: fill the clique first, then the
/// attached run at one edge per vertex.
fn lollipop_f(q: u64, n: u64) -> u64 {
    if n <= q {
        binomial(n, 2)
    } else {
        binomial(q, 2) + (n - q)
    }
}

/// Closed-form `g(r)`, if this family has one.
pub fn g_closed(g: &GraphHandle, r: u64) -> Option<u64> {
    if g.is_truncation() {
        return None;
    }
    let params = &g.meta().params;
    match g.family() {
        Family::Clique => Some(if r == 0 { 1 } else { params[0] }),
        Family::Path => Some((r + 1).min(params[0])),
        Family::Cycle => Some((2 * r + 1).min(params[0])),
        Family::Star => {
            // The minimum sits at a leaf: itself, then the center, then
            // everything.
            let k = params[0];
            Some(match r {
                0 => 1,
                1 => 2,
                _ => k + 1,
            })
        }
        Family::Ray => Some(r + 1),
        Family::Line => Some(2 * r + 1),
        Family::Lattice => match params[0] {
            2 => Some(2 * r * (r + 1) + 1),
            3 => Some((2 * r + 1) * (2 * r * r + 2 * r + 3) / 3),
            _ => None,
        },
        Family::RegularTree => Some(tree_ball(params[0], r)),
        Family::InfiniteLollipop => {
            let q = params[0] / 2;
            if q <= 2 {
                // Degenerate clique: the whole graph is a ray from vertex 0.
                Some(r + 1)
            } else {
                // Deep-path shape 2r+1 vs. the clique-corner shape: a ball
                // around a non-attachment clique vertex holds the q clique
                // vertices after one step and then one path vertex per step.
                Some((2 * r + 1).min((q - 1).saturating_add(r)))
            }
        }
        Family::StarRay => {
            // Center of degree k: k−1 pendant leaves plus one infinite arm.
            let k = params[0];
            if k == 1 {
                // No leaves at all — the graph is a plain ray.
                return Some(r + 1);
            }
            Some(match r {
                0 => 1,
                1 => 2,
                // Leaf ball: leaf + center + the k−2 other leaves + a ray
                // prefix of length r−1, against the deep-ray 2r+1 shape.
                _ => (2 * r + 1).min((k - 1).saturating_add(r)),
            })
        }
        Family::MultiScale => {
            let orders = g.meta().scales.as_ref()?.orders();
            Some((2 * r + 1).min(multiscale::origin_ball_size(&orders, r)))
        }
        Family::Grid | Family::Lollipop => None,
    }
}

/// Ball volume in the infinite `d`-regular tree, saturating on overflow.
fn tree_ball(d: u64, r: u64) -> u64 {
    let mut total: u128 = 1;
    let mut shell: u128 = d as u128;
    for _ in 0..r {
        total += shell;
        if total > u64::MAX as u128 {
            return u64::MAX;
        }
        shell *= (d - 1) as u128;
    }
    total as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn tree_ball_matches_shell_sums() {
        assert_eq!(tree_ball(3, 0), 1);
        assert_eq!(tree_ball(3, 1), 4);
        assert_eq!(tree_ball(3, 2), 10);
        assert_eq!(tree_ball(3, 3), 22);
        assert_eq!(tree_ball(4, 2), 17); // 1 + 4 + 12
        assert_eq!(tree_ball(3, 200), u64::MAX, "saturates instead of wrapping");
    }

    #[test]
    fn lollipop_f_examples() {
        // Clique of order 5 with a tail.
        assert_eq!(lollipop_f(5, 5), 10);
        assert_eq!(lollipop_f(5, 8), 13);
        assert_eq!(lollipop_f(5, 10), 15);
        assert_eq!(lollipop_f(1, 4), 3); // degenerate: a path
    }

    #[test]
    fn ray_and_line_forms() {
        let ray = catalog::ray();
        let line = catalog::line();
        assert_eq!(g_closed(&ray, 5), Some(6));
        assert_eq!(g_closed(&line, 5), Some(11));
        assert_eq!(f_closed(&ray, 3), Some(2));
        assert_eq!(f_closed(&line, 1), Some(0));
    }

    #[test]
    fn infinite_lollipop_g_crosses_over() {
        // Order parameter 10 → clique of 5. Near shapes win for large r.
        let g = catalog::infinite_lollipop(10).unwrap();
        assert_eq!(g_closed(&g, 0), Some(1));
        assert_eq!(g_closed(&g, 1), Some(3));
        assert_eq!(g_closed(&g, 3), Some(7));
        // 2r+1 = 9 vs (q−1)+r = 8: the clique corner is smaller from r = 4.
        assert_eq!(g_closed(&g, 4), Some(8));
        assert_eq!(g_closed(&g, 10), Some(14));
    }

    #[test]
    fn lattice_ball_closed_forms() {
        assert_eq!(g_closed(&catalog::lattice(2).unwrap(), 0), Some(1));
        assert_eq!(g_closed(&catalog::lattice(2).unwrap(), 1), Some(5));
        assert_eq!(g_closed(&catalog::lattice(2).unwrap(), 2), Some(13));
        assert_eq!(g_closed(&catalog::lattice(3).unwrap(), 1), Some(7));
        assert_eq!(g_closed(&catalog::lattice(3).unwrap(), 2), Some(25));
        assert_eq!(g_closed(&catalog::lattice(3).unwrap(), 4), Some(129));
    }

    #[test]
    fn finite_family_forms() {
        let cycle = catalog::cycle(8).unwrap();
        assert_eq!(f_closed(&cycle, 3), Some(2));
        assert_eq!(f_closed(&cycle, 8), Some(8));
        assert_eq!(g_closed(&cycle, 3), Some(7));
        assert_eq!(g_closed(&cycle, 10), Some(8));
        let star = catalog::star(6).unwrap();
        assert_eq!(g_closed(&star, 1), Some(2));
        assert_eq!(g_closed(&star, 2), Some(7));
        assert_eq!(f_closed(&star, 4), Some(3));
    }
}
