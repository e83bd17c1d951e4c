//! Exact occupancy evolution: return probabilities and mean local times.
//!
//! The distribution of the walk at time `s` is pushed forward one step at a
//! time (cost `O(edges)` per step). On a lazy graph the walk cannot leave
//! `ball(start, t)` within `t` steps, so evolving on that truncation is
//! exact, not an approximation. Regular trees get a special path: their
//! radial symmetry lumps the walk into a birth-death chain over the distance
//! from the start, which avoids materializing an exponentially large ball.

use crate::error::{Error, Result};
use crate::graph::{truncate_at, Family, FiniteGraph, GraphHandle, VertexId};

/// Push the exact occupancy vector forward on a finite graph, calling
/// `visit(s, &occupancy)` for every `s` in `0..=t`.
pub fn evolve<F: FnMut(u64, &[f64])>(
    fin: &FiniteGraph,
    start: usize,
    t: u64,
    mut visit: F,
) -> Result<()> {
    let n = fin.vertex_count();
    if n == 1 && t > 0 {
        return Err(Error::InvalidArgument(
            "cannot evolve a walk on a single isolated vertex".into(),
        ));
    }
    let mut cur = vec![0.0f64; n];
    let mut next = vec![0.0f64; n];
    cur[start] = 1.0;
    visit(0, &cur);
    for s in 1..=t {
        next.iter_mut().for_each(|x| *x = 0.0);
        for v in 0..n {
            let mass = cur[v];
            if mass == 0.0 {
                continue;
            }
            let p = mass / fin.degree(v) as f64;
            for &w in fin.neighbors(v) {
                next[w as usize] += p;
            }
        }
        std::mem::swap(&mut cur, &mut next);
        visit(s, &cur);
    }
    Ok(())
}

/// Obtain a finite graph on which occupancy up to horizon `t` from `center`
/// is exact — the graph itself if finite, else `ball(center, t)` — together
/// with the dense index of `center` on it.
fn horizon_graph(g: &GraphHandle, center: VertexId, t: u64) -> Result<(GraphHandle, usize)> {
    if let Some(fin) = g.finite() {
        if let Some(info) = fin.truncation() {
            if info.radius < t {
                return Err(Error::InvalidArgument(format!(
                    "truncation radius {} is smaller than the horizon {t}; \
                     retruncate the original graph",
                    info.radius
                )));
            }
        }
        // Finite handles (truncations included) are addressed by dense ids.
        if (center.0 as usize) >= fin.vertex_count() {
            return Err(Error::VertexNotInGraph(center));
        }
        return Ok((g.clone(), center.0 as usize));
    }
    let trunc = truncate_at(g, center, t)?;
    let idx = trunc
        .finite()
        .expect("truncation is finite")
        .local_of(center)
        .ok_or(Error::VertexNotInGraph(center))?;
    Ok((trunc, idx))
}

/// Exact return-probability curve `P_start(X_s = start)` for `s = 0..=t`.
pub fn return_probability_curve(
    g: &GraphHandle,
    start: VertexId,
    t: u64,
) -> Result<Vec<f64>> {
    if !g.contains(start) {
        return Err(Error::VertexNotInGraph(start));
    }
    if g.family() == Family::RegularTree && !g.is_finite() {
        return Ok(tree_return_curve(g.meta().params[0], t));
    }
    let (fin_handle, local) = horizon_graph(g, start, t)?;
    let fin = fin_handle.finite().expect("horizon graph is finite");
    let mut curve = Vec::with_capacity(t as usize + 1);
    evolve(fin, local, t, |_, occ| curve.push(occ[local]))?;
    Ok(curve)
}

/// Mean number of visits to the start by time `t` (the visit at time 0
/// counts): the partial sum of the return-probability curve.
pub fn self_local_time(g: &GraphHandle, start: VertexId, t: u64) -> Result<f64> {
    Ok(return_probability_curve(g, start, t)?.iter().sum())
}

/// Mean local times of every vertex in reach by time `t`, for the walk
/// started at the origin. Returns `(vertex, mean visits)` sorted by vertex.
pub fn mean_local_times(g: &GraphHandle, t: u64) -> Result<Vec<(VertexId, f64)>> {
    let start = g.origin();
    let (fin_handle, local) = horizon_graph(g, start, t)?;
    let fin = fin_handle.finite().expect("horizon graph is finite");
    let mut acc = vec![0.0f64; fin.vertex_count()];
    evolve(fin, local, t, |_, occ| {
        for (a, o) in acc.iter_mut().zip(occ) {
            *a += o;
        }
    })?;
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(i, l)| (fin.source_id(i), l))
        .collect())
}

/// The largest mean self local time over candidate starts, with its witness.
///
/// This is the quantity `max_x E_x[visits to x by time t]` that converts a
/// time horizon into a range lower bound. Vertex-transitive families need a
/// single start. Finite graphs are scanned exhaustively. Other lazy families
/// are scanned over every start within distance `window` of the origin; the
/// maximizer sits near the origin's bounded region for every lazy family in
/// the catalog (deep vertices look like ray or tree interiors, whose self
/// local times are dominated by boundary-adjacent starts — the accompanying
/// tests check the scanned values decay along the tail of the window).
pub fn max_self_local_time(
    g: &GraphHandle,
    t: u64,
    window: u64,
) -> Result<(f64, VertexId)> {
    let starts: Vec<VertexId> = if g.family().is_vertex_transitive() && !g.is_truncation() {
        vec![g.origin()]
    } else if let Some(fin) = g.finite() {
        (0..fin.vertex_count() as u64).map(VertexId).collect()
    } else {
        crate::graph::ball(g, g.origin(), window)?
    };
    let mut best = f64::NEG_INFINITY;
    let mut witness = g.origin();
    for x in starts {
        let v = self_local_time(g, x, t)?;
        if v > best {
            best = v;
            witness = x;
        }
    }
    Ok((best, witness))
}

/// Return-probability curve at the root of the infinite `d`-regular tree via
/// the exact distance lumping: from distance 0 the walk moves to 1; from
/// distance `k >= 1` it moves to `k - 1` with probability `1/d`, else to
/// `k + 1`.
pub fn tree_return_curve(d: u64, t: u64) -> Vec<f64> {
    let len = t as usize + 2;
    let mut mass = vec![0.0f64; len];
    let mut next = vec![0.0f64; len];
    let mut curve = Vec::with_capacity(t as usize + 1);
    mass[0] = 1.0;
    curve.push(1.0);
    let down = 1.0 / d as f64;
    let up = 1.0 - down;
    for s in 1..=t as usize {
        next[..=s].iter_mut().for_each(|x| *x = 0.0);
        next[1] += mass[0];
        for k in 1..s {
            let m = mass[k];
            if m == 0.0 {
                continue;
            }
            next[k - 1] += m * down;
            next[k + 1] += m * up;
        }
        std::mem::swap(&mut mass, &mut next);
        curve.push(mass[0]);
    }
    curve
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn line_return_probability_hand_values() {
        // P(back at 0 after 2) = 1/2; after 4 = 6/16.
        let g = catalog::line();
        let curve = return_probability_curve(&g, VertexId(0), 4).unwrap();
        assert_eq!(curve.len(), 5);
        assert!((curve[0] - 1.0).abs() < 1e-12);
        assert!(curve[1].abs() < 1e-12);
        assert!((curve[2] - 0.5).abs() < 1e-12);
        assert!(curve[3].abs() < 1e-12);
        assert!((curve[4] - 0.375).abs() < 1e-12);
    }

    #[test]
    fn tree_lumping_matches_truncated_evolution() {
        // Small horizon so the explicit ball stays tiny.
        for d in [3u64, 4] {
            let g = catalog::regular_tree(d).unwrap();
            let lumped = tree_return_curve(d, 12);
            let direct = {
                let trunc = crate::graph::truncate(&g, 12).unwrap();
                return_probability_curve(&trunc, trunc.origin(), 12).unwrap()
            };
            for (s, (a, b)) in lumped.iter().zip(&direct).enumerate() {
                assert!((a - b).abs() < 1e-12, "d={d} s={s}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn occupancy_stays_a_probability_vector() {
        let g = catalog::lollipop(9).unwrap();
        let fin = g.finite().unwrap();
        evolve(fin, 0, 50, |s, occ| {
            let total: f64 = occ.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "mass {total} at time {s}");
            assert!(occ.iter().all(|&p| p >= 0.0));
        })
        .unwrap();
    }

    #[test]
    fn ray_self_local_time_peaks_next_to_the_endpoint() {
        // The vertex adjacent to the dead end is bounced back onto, so it
        // accumulates more self visits than the endpoint or the deep interior.
        let g = catalog::ray();
        let l0 = self_local_time(&g, VertexId(0), 40).unwrap();
        let l1 = self_local_time(&g, VertexId(1), 40).unwrap();
        let l9 = self_local_time(&g, VertexId(9), 40).unwrap();
        assert!(l1 > l0, "l1 {l1} <= l0 {l0}");
        assert!(l1 > l9, "l1 {l1} <= l9 {l9}");
        let (best, witness) = max_self_local_time(&g, 40, 12).unwrap();
        assert_eq!(witness, VertexId(1));
        assert!((best - l1).abs() < 1e-12);
    }

    #[test]
    fn local_times_sum_to_horizon_plus_one() {
        let g = catalog::star_ray(5).unwrap();
        let t = 30;
        let profile = mean_local_times(&g, t).unwrap();
        let total: f64 = profile.iter().map(|&(_, l)| l).sum();
        assert!((total - (t + 1) as f64).abs() < 1e-10, "total {total}");
    }

    #[test]
    fn truncation_shorter_than_horizon_is_rejected() {
        let g = catalog::ray();
        let trunc = crate::graph::truncate(&g, 5).unwrap();
        assert!(return_probability_curve(&trunc, trunc.origin(), 10).is_err());
    }
}
