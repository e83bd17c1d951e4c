//! Exact expected discovery times via the visited-set chain.
//!
//! The pair (visited set, current vertex) is a Markov chain. Between two
//! discoveries the walk moves inside the current visited set `S`, so the time
//! to the next discovery and the distribution of the newly discovered vertex
//! are absorbing-chain quantities of the restriction of the walk to `S`:
//! with `N = (I - Q_S)^{-1}` the fundamental matrix of that restriction,
//! `N 1` gives the expected exit times and `N R` the exit distribution.
//!
//! One forward sweep over discovery counts `k = 1, 2, ..., n-1` carries the
//! probability weights of every reachable `(S, just-discovered vertex)` pair
//! and accumulates `E[time of k-th discovery]` for every `k` along the way.
//! Visited sets are always connected and contain the start, which keeps the
//! state space tractable on path-like graphs and on all small graphs; the
//! explicit caps below turn a combinatorial explosion into an error rather
//! than a hang.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{GraphHandle, VertexId};

use super::linsolve;

/// Caps for the visited-set sweep.
#[derive(Clone, Copy, Debug)]
pub struct DiscoveryOptions {
    /// Maximum number of distinct visited sets across all levels.
    pub set_cap: usize,
    /// Maximum total solver work, in units of `|S|^3` per set.
    pub work_cap: u128,
    /// Largest vertex degree the sweep will expand.
    pub degree_cap: usize,
}

impl Default for DiscoveryOptions {
    fn default() -> Self {
        DiscoveryOptions { set_cap: 200_000, work_cap: 20_000_000_000, degree_cap: 100_000 }
    }
}

/// `E[T_1], ..., E[T_n]` from the origin, where `T_k` is the time the k-th
/// distinct vertex is first occupied (`T_1 = 0`).
pub fn expected_discovery_times(g: &GraphHandle, n: u64) -> Result<Vec<f64>> {
    expected_discovery_times_opt(g, n, DiscoveryOptions::default())
}

/// [`expected_discovery_times`] with explicit caps.
pub fn expected_discovery_times_opt(
    g: &GraphHandle,
    n: u64,
    opts: DiscoveryOptions,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("discovery count n must be >= 1".into()));
    }
    if let Some(total) = g.vertex_count() {
        if n as usize > total {
            return Err(Error::InvalidArgument(format!(
                "cannot discover {n} vertices in a graph with {total}"
            )));
        }
    }
    let origin = g.origin();
    let mut out = Vec::with_capacity(n as usize);
    out.push(0.0); // T_1: the start is discovered at time 0
    if n == 1 {
        return Ok(out);
    }

    // Weights of (S, just-entered vertex) at the k-th discovery instant.
    let mut level: HashMap<Vec<VertexId>, HashMap<VertexId, f64>> = HashMap::new();
    level.insert(vec![origin], HashMap::from([(origin, 1.0)]));
    let mut sets_seen: usize = 1;
    let mut work: u128 = 0;

    for _k in 1..n {
        let mut delta = 0.0f64; // E[T_{k+1} - T_k]
        let mut next: HashMap<Vec<VertexId>, HashMap<VertexId, f64>> = HashMap::new();
        for (members, rho) in &level {
            let m = members.len();
            work += (m as u128).pow(3);
            if work > opts.work_cap {
                return Err(Error::WorkCapExceeded { units: work, cap: opts.work_cap });
            }
            let (fundamental, exits) = analyze_set(g, members, opts.degree_cap)?;

            // Expected time to the next discovery from each entry vertex.
            for (&x, &weight) in rho {
                let i = members.binary_search(&x).expect("entry vertex is in its set");
                let exit_time: f64 = fundamental.row(i).sum();
                delta += weight * exit_time;
                // Exit distribution: absorb at y with prob sum_v N[i,v]/deg(v)
                // over boundary edges (v, y).
                for &(j, y, p) in &exits {
                    let mass = weight * fundamental[(i, j)] * p;
                    if mass == 0.0 {
                        continue;
                    }
                    let mut grown = members.clone();
                    let pos = grown.binary_search(&y).unwrap_err();
                    grown.insert(pos, y);
                    let entry = next.entry(grown);
                    if matches!(&entry, std::collections::hash_map::Entry::Vacant(_)) {
                        sets_seen += 1;
                        if sets_seen > opts.set_cap {
                            return Err(Error::VisitedChainTooLarge {
                                sets: sets_seen,
                                cap: opts.set_cap,
                            });
                        }
                    }
                    *entry.or_default().entry(y).or_insert(0.0) += mass;
                }
            }
        }
        let total: f64 = next.values().flat_map(|m| m.values()).sum();
        if (total - 1.0).abs() > 1e-8 {
            return Err(Error::ResidualTooLarge { residual: (total - 1.0).abs(), tol: 1e-8 });
        }
        out.push(out.last().unwrap() + delta);
        level = next;
    }
    Ok(out)
}

/// `E[T_n]` from the origin.
pub fn expected_discovery_time(g: &GraphHandle, n: u64) -> Result<f64> {
    Ok(*expected_discovery_times(g, n)?.last().unwrap())
}

/// Fundamental matrix of the walk restricted to `members`, plus the boundary
/// edges `(member index, outside vertex, step probability)`.
#[allow(clippy::type_complexity)]
fn analyze_set(
    g: &GraphHandle,
    members: &[VertexId],
    degree_cap: usize,
) -> Result<(DMatrix<f64>, Vec<(usize, VertexId, f64)>)> {
    let m = members.len();
    let mut a = DMatrix::<f64>::identity(m, m);
    let mut exits: Vec<(usize, VertexId, f64)> = Vec::new();
    for (j, &v) in members.iter().enumerate() {
        let deg = g.degree_unchecked(v);
        if deg > degree_cap {
            return Err(Error::InvalidArgument(format!(
                "visited-set sweep would expand a vertex of degree {deg} (cap {degree_cap})"
            )));
        }
        let p = 1.0 / deg as f64;
        for k in 0..deg {
            let w = g.neighbor_at_unchecked(v, k);
            match members.binary_search(&w) {
                Ok(i) => a[(j, i)] -= p,
                Err(_) => exits.push((j, w, p)),
            }
        }
    }
    let fundamental = linsolve::invert(&a)?;
    Ok((fundamental, exits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn line_first_discoveries() {
        // T_2 = 1 always. On the line E[T_3] = 3: after the first step the
        // walk sits at the edge of a 2-interval and needs mean 2 more steps.
        let g = catalog::line();
        let times = expected_discovery_times(&g, 3).unwrap();
        assert!((times[0] - 0.0).abs() < 1e-12);
        assert!((times[1] - 1.0).abs() < 1e-12);
        assert!((times[2] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn path3_from_the_middle_matches_hand_value() {
        // Start mid-path: discovering both endpoints takes 1 + 4 = 5 expected
        // steps in total (T_3 = 5), and T_2 = 1.
        let g = catalog::path(3).unwrap();
        // Rebuild with origin at the middle: use a 3-cycleless trick — the
        // catalog fixes origin 0, so walk on the path from vertex 1 via a
        // custom finite graph.
        let fin = crate::graph::FiniteGraph::from_edge_list(3, &[(0, 1), (1, 2)], 1).unwrap();
        let meta = g.meta().clone();
        let h = test_handle(meta, fin);
        let times = expected_discovery_times(&h, 3).unwrap();
        assert!((times[1] - 1.0).abs() < 1e-12);
        assert!((times[2] - 5.0).abs() < 1e-10);
    }

    fn test_handle(
        meta: crate::graph::GraphMeta,
        fin: crate::graph::FiniteGraph,
    ) -> GraphHandle {
        GraphHandle::from_finite(meta, fin)
    }

    #[test]
    fn ray_discovery_is_quadratic() {
        // From the endpoint the visited set is always the prefix interval, and
        // T_n = (n-1)^2 exactly.
        let g = catalog::ray();
        let times = expected_discovery_times(&g, 6).unwrap();
        for (idx, t) in times.iter().enumerate() {
            let n = idx as u64 + 1;
            let expect = ((n - 1) * (n - 1)) as f64;
            assert!((t - expect).abs() < 1e-9, "E[T_{n}] = {t}, want {expect}");
        }
    }

    #[test]
    fn clique_discovery_is_a_coupon_collector() {
        // On K_m every step discovers a fresh vertex with probability
        // (m - k)/(m - 1) when k are known: E[T_n] = sum (m-1)/(m-k).
        let m = 6u64;
        let g = catalog::clique(m).unwrap();
        let times = expected_discovery_times(&g, m).unwrap();
        let mut expect = 0.0;
        for (idx, t) in times.iter().enumerate() {
            let k = idx as u64 + 1; // now k vertices are known
            assert!((t - expect).abs() < 1e-9, "E[T_{k}] = {t}, want {expect}");
            if k < m {
                expect += (m - 1) as f64 / (m - k) as f64;
            }
        }
    }

    #[test]
    fn star_discovery_from_the_center() {
        // From the center of a k-star, T_2 = 1; for the (j+1)-th leaf the walk
        // returns to the center (1 step) and picks a fresh leaf with
        // probability (k-j)/k: E[T_{j+2} - T_{j+1}] = 1 + 2j/(k-j) ... checked
        // here against the closed coupon form E[T_{n}] = 1 + sum 2k/(k-j).
        let k = 5u64;
        let g = catalog::star(k).unwrap();
        let times = expected_discovery_times(&g, k + 1).unwrap();
        // Discovering leaf j+1 after j leaves are known: from a leaf, 1 step
        // to the center, then geometric over fresh leaves: mean 2k/(k-j) - 1
        // steps... easiest closed check: E[T_2] = 1 and increments
        // 2k/(k-j) for j = 1..k-1.
        assert!((times[1] - 1.0).abs() < 1e-12);
        for j in 1..k {
            let inc = times[j as usize + 1] - times[j as usize];
            let expect = 2.0 * k as f64 / (k - j) as f64;
            assert!((inc - expect).abs() < 1e-9, "leaf {j}: inc {inc} want {expect}");
        }
    }

    #[test]
    fn set_cap_trips_instead_of_hanging() {
        let g = catalog::regular_tree(3).unwrap();
        let opts = DiscoveryOptions { set_cap: 50, ..Default::default() };
        let err = expected_discovery_times_opt(&g, 12, opts).unwrap_err();
        assert!(matches!(err, Error::VisitedChainTooLarge { .. }));
    }
}
