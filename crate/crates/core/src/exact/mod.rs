//! Exact (linear-algebra and dynamic-programming) walk quantities.
//!
//! These are the trusted oracles the Monte Carlo layer is checked against:
//!
//! * [`hitting_times`] / [`max_neighbor_hitting`] — expected hitting times on
//!   finite graphs, by absorbing solves and by the fundamental matrix;
//! * [`expected_return_time`] and [`return_time_degree_formula`] — mean first
//!   return, by a solve and by the stationary-degree identity `2|E|/deg`;
//! * [`escape_time`] — expected exit time from a finite vertex set, usable
//!   directly on infinite graphs;
//! * [`distribution`] — exact occupancy evolution: local times and
//!   return-probability curves;
//! * [`discovery`] — expected times to discover the n-th distinct vertex,
//!   by backward induction over visited sets;
//! * [`range`] — exact expected range on the line, the ray, and regular
//!   trees;
//! * [`enumerate`] — exhaustive enumeration of small connected graphs and of
//!   densest subsets, for cross-checking everything else.

pub mod discovery;
pub mod distribution;
pub mod enumerate;
pub mod linsolve;
pub mod range;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, GraphHandle, VertexId};

/// Cap on the vertex count for all-pairs hitting computations.
pub const FUNDAMENTAL_CAP: usize = 1024;

fn require_finite<'g>(g: &'g GraphHandle, op: &'static str) -> Result<&'g FiniteGraph> {
    g.finite().ok_or(Error::NotFinite { op })
}

// ---------------------------------------------------------------------------
// Hitting times
// ---------------------------------------------------------------------------

/// Expected time for the walk to first reach `targets`, from every start.
///
/// Returns one value per vertex (0 on the targets themselves). Solves the
/// absorbing one-step equations `h(x) = 1 + mean of h over neighbors of x`
/// with `h = 0` on the target set.
pub fn hitting_times(g: &GraphHandle, targets: &[VertexId]) -> Result<Vec<f64>> {
    let fin = require_finite(g, "hitting_times")?;
    if targets.is_empty() {
        return Err(Error::EmptyTargetSet);
    }
    let n = fin.vertex_count();
    let mut absorbing = vec![false; n];
    for &t in targets {
        if (t.0 as usize) >= n {
            return Err(Error::VertexNotInGraph(t));
        }
        absorbing[t.0 as usize] = true;
    }
    let transient: Vec<usize> = (0..n).filter(|&v| !absorbing[v]).collect();
    let mut out = vec![0.0; n];
    if transient.is_empty() {
        return Ok(out);
    }
    linsolve::check_state_cap(transient.len())?;
    let mut index = vec![usize::MAX; n];
    for (i, &v) in transient.iter().enumerate() {
        index[v] = i;
    }
    let m = transient.len();
    let mut a = DMatrix::<f64>::identity(m, m);
    for (i, &v) in transient.iter().enumerate() {
        let p = 1.0 / fin.degree(v) as f64;
        for &w in fin.neighbors(v) {
            if !absorbing[w as usize] {
                a[(i, index[w as usize])] -= p;
            }
        }
    }
    let b = DVector::from_element(m, 1.0);
    let h = linsolve::solve(&a, &b)?;
    for (i, &v) in transient.iter().enumerate() {
        out[v] = h[i];
    }
    Ok(out)
}

/// Expected time to reach `target` from `from`.
pub fn hitting_time(g: &GraphHandle, from: VertexId, target: VertexId) -> Result<f64> {
    let h = hitting_times(g, &[target])?;
    if (from.0 as usize) >= h.len() {
        return Err(Error::VertexNotInGraph(from));
    }
    Ok(h[from.0 as usize])
}

/// All-pairs expected hitting times via the fundamental matrix
/// `Z = (I - P + 1 pi^T)^{-1}`, using `E_x[hit y] = (Z_yy - Z_xy) / pi_y`.
///
/// One matrix inversion instead of `n` absorbing solves. Capped at
/// [`FUNDAMENTAL_CAP`] vertices.
pub fn all_pairs_hitting(g: &GraphHandle) -> Result<DMatrix<f64>> {
    let fin = require_finite(g, "all_pairs_hitting")?;
    let n = fin.vertex_count();
    if n > FUNDAMENTAL_CAP {
        return Err(Error::SystemTooLarge { states: n, cap: FUNDAMENTAL_CAP });
    }
    let two_e = (2 * fin.edge_count()) as f64;
    let pi: Vec<f64> = (0..n).map(|v| fin.degree(v) as f64 / two_e).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for x in 0..n {
        let p = 1.0 / fin.degree(x) as f64;
        m[(x, x)] += 1.0;
        for &y in fin.neighbors(x) {
            m[(x, y as usize)] -= p;
        }
        for y in 0..n {
            m[(x, y)] += pi[y];
        }
    }
    let z = linsolve::invert(&m)?;
    let mut hit = DMatrix::<f64>::zeros(n, n);
    for y in 0..n {
        let zyy = z[(y, y)];
        for x in 0..n {
            hit[(x, y)] = (zyy - z[(x, y)]) / pi[y];
        }
    }
    Ok(hit)
}

/// The worst expected hitting time across an edge: `max E_x[hit y]` over
/// ordered adjacent pairs `(x, y)`, with one witnessing pair.
pub fn max_neighbor_hitting(g: &GraphHandle) -> Result<(f64, (VertexId, VertexId))> {
    let fin = require_finite(g, "max_neighbor_hitting")?;
    let hit = all_pairs_hitting(g)?;
    let mut best = f64::NEG_INFINITY;
    let mut witness = (VertexId(0), VertexId(0));
    for x in 0..fin.vertex_count() {
        for &y in fin.neighbors(x) {
            let v = hit[(x, y as usize)];
            if v > best {
                best = v;
                witness = (VertexId(x as u64), VertexId(y as u64));
            }
        }
    }
    Ok((best, witness))
}

// ---------------------------------------------------------------------------
// Return times
// ---------------------------------------------------------------------------

/// Expected first-return time to `y`, via a first-step decomposition over
/// the absorbing hitting-time solve.
pub fn expected_return_time(g: &GraphHandle, y: VertexId) -> Result<f64> {
    let fin = require_finite(g, "expected_return_time")?;
    let h = hitting_times(g, &[y])?;
    let deg = fin.degree(y.0 as usize) as f64;
    let mean_neighbor: f64 = fin
        .neighbors(y.0 as usize)
        .iter()
        .map(|&x| h[x as usize])
        .sum::<f64>()
        / deg;
    Ok(1.0 + mean_neighbor)
}

/// Expected first-return time to `y` by the stationary identity `2|E| / deg(y)`.
pub fn return_time_degree_formula(g: &GraphHandle, y: VertexId) -> Result<f64> {
    let fin = require_finite(g, "return_time_degree_formula")?;
    if (y.0 as usize) >= fin.vertex_count() {
        return Err(Error::VertexNotInGraph(y));
    }
    Ok(2.0 * fin.edge_count() as f64 / fin.degree(y.0 as usize) as f64)
}

// ---------------------------------------------------------------------------
// Escape times
// ---------------------------------------------------------------------------

/// Number of edges with both endpoints in `set` (given by original ids).
/// Works on lazy graphs; adjacency is tested pairwise by binary search, so
/// huge-degree vertices (clique hubs) cost only `O(log deg)` per pair.
pub fn edges_within_set(g: &GraphHandle, set: &[VertexId]) -> Result<usize> {
    let mut count = 0;
    for (i, &v) in set.iter().enumerate() {
        for &w in &set[i + 1..] {
            if g.is_adjacent(v, w)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Expected time for the walk started at `x` to leave the vertex set `s`.
///
/// `s` must contain `x` and must have at least one edge leaving it (otherwise
/// the exit time is infinite). Works directly on infinite graphs: the system
/// has one state per member of `s` and absorbs on the first step outside.
pub fn escape_time(g: &GraphHandle, s: &[VertexId], x: VertexId) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptyTargetSet);
    }
    let mut members: Vec<VertexId> = s.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.len() != s.len() {
        return Err(Error::InvalidSubset("duplicate vertices in the set".into()));
    }
    linsolve::check_state_cap(members.len())?;
    let start = members
        .binary_search(&x)
        .map_err(|_| Error::InvalidSubset(format!("start {x:?} is not in the set")))?;
    for &v in &members {
        if !g.contains(v) {
            return Err(Error::VertexNotInGraph(v));
        }
    }
    let m = members.len();
    let mut a = DMatrix::<f64>::identity(m, m);
    let mut can_leave = false;
    for (i, &v) in members.iter().enumerate() {
        let deg = g.degree_unchecked(v);
        if deg == 0 {
            return Err(Error::InvalidSubset(format!("{v:?} has no neighbors")));
        }
        let p = 1.0 / deg as f64;
        let mut inside = 0usize;
        for (j, &w) in members.iter().enumerate() {
            if g.is_adjacent(v, w)? {
                a[(i, j)] -= p;
                inside += 1;
            }
        }
        if inside < deg {
            can_leave = true;
        }
    }
    if !can_leave {
        return Err(Error::InvalidSubset(
            "the set has no boundary edges; the exit time is infinite".into(),
        ));
    }
    let b = DVector::from_element(m, 1.0);
    let h = linsolve::solve(&a, &b)?;
    Ok(h[start])
}
