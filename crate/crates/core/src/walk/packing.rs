//! Per-trace packing distances.
//!
//! At every discovery instant the walk sits on the vertex it just found;
//! this module records the graph distance from that vertex to the nearest
//! *unvisited* vertex, for each of the first `n` discoveries. The sum of
//! those distances is the quantity the packing inequality controls, and it
//! is a pathwise (not on-average) statement, so each sampled trace can be
//! checked individually.
//!
//! Implementation notes: the walk here keeps its visited set as an explicit
//! hash set and answers each distance query with a breadth-first search that
//! stops at the first unvisited vertex. Regular trees take a shortcut that
//! is a theorem, not an approximation: the visited set of a walk is
//! connected, and in a tree the unique origin-to-child path passes through
//! the parent, so a just-discovered vertex still has every child unvisited —
//! the distance is always exactly 1.

use std::collections::{HashSet, VecDeque};

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle, VertexId};

use super::{replicate_seed, TreeSpace, WalkSpace};

/// Hard ceiling on BFS expansions per distance query.
const BFS_WORK_CAP: u64 = 10_000_000;

/// Packing distances along one sampled trace.
#[derive(Clone, Debug)]
pub struct PackingTrace {
    pub seed: u64,
    /// `distances[k-1]` = distance to the unvisited set at the `k`-th discovery.
    pub distances: Vec<u64>,
    /// Sum of the recorded distances.
    pub total: u64,
    /// True if the step cap fired before `n` discoveries.
    pub censored: bool,
    pub final_time: u64,
}

/// Distance from `from` to the nearest vertex outside `visited`.
pub(crate) fn distance_to_unvisited(
    g: &GraphHandle,
    from: u64,
    visited: &HashSet<u64>,
) -> Result<u64> {
    if !visited.contains(&from) {
        return Ok(0);
    }
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(from);
    let mut queue: VecDeque<(u64, u64)> = VecDeque::new();
    queue.push_back((from, 0));
    let mut work = 0u64;
    while let Some((v, d)) = queue.pop_front() {
        let vid = VertexId(v);
        let deg = g.degree_unchecked(vid);
        for k in 0..deg {
            work += 1;
            if work > BFS_WORK_CAP {
                return Err(Error::WorkCapExceeded { units: work as u128, cap: BFS_WORK_CAP as u128 });
            }
            let w = g.neighbor_at_unchecked(vid, k).0;
            if !visited.contains(&w) {
                return Ok(d + 1);
            }
            if seen.insert(w) {
                queue.push_back((w, d + 1));
            }
        }
    }
    Err(Error::InvalidArgument(
        "no unvisited vertex is reachable (finite graph fully discovered)".into(),
    ))
}

/// Run one replicate until `n` vertices are discovered (or the cap) and
/// record the distance to the unvisited set at every discovery instant.
pub fn packing_trace(
    g: &GraphHandle,
    n: u64,
    master_seed: u64,
    replicate_index: u64,
    step_cap: u64,
) -> Result<PackingTrace> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one discovery".into()));
    }
    if let Some(fin) = g.finite() {
        if n >= fin.vertex_count() as u64 {
            return Err(Error::InvalidArgument(format!(
                "packing distances need an unvisited remainder: n = {n} must stay \
                 below the vertex count {}",
                fin.vertex_count()
            )));
        }
    }
    let seed = replicate_seed(master_seed, replicate_index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Regular trees: arena walk, every discovery is at distance 1 (see the
    // module notes for why that is exact).
    if g.family() == Family::RegularTree && !g.is_finite() {
        let degree = g.meta().params[0] as usize;
        let mut tree = TreeSpace::new(degree, (2 * n as usize).max(64));
        let mut state = tree.reset(None);
        let mut range = 1u64;
        let mut time = 0u64;
        let mut distances = vec![1u64];
        while range < n && time < step_cap {
            let k = rng.random_range(0..degree as u32) as usize;
            let (next, fresh) = tree.step(state, k);
            state = next;
            time += 1;
            if fresh {
                range += 1;
                distances.push(1);
            }
        }
        let censored = range < n;
        let total = distances.iter().sum();
        return Ok(PackingTrace { seed, distances, total, censored, final_time: time });
    }

    let mut visited: HashSet<u64> = HashSet::new();
    let origin = g.origin().0;
    visited.insert(origin);
    let mut state = origin;
    let mut range = 1u64;
    let mut time = 0u64;
    let mut distances = Vec::with_capacity(n as usize);
    distances.push(distance_to_unvisited(g, origin, &visited)?);
    while range < n && time < step_cap {
        let vid = VertexId(state);
        let deg = g.degree_unchecked(vid);
        let k = rng.random_range(0..deg as u32) as usize;
        let next = g.neighbor_at_unchecked(vid, k).0;
        time += 1;
        state = next;
        if visited.insert(next) {
            range += 1;
            distances.push(distance_to_unvisited(g, next, &visited)?);
        }
    }
    let censored = range < n;
    let total = distances.iter().sum();
    Ok(PackingTrace { seed, distances, total, censored, final_time: time })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn ray_discoveries_always_border_fresh_ground() {
        let g = catalog::ray();
        let trace = packing_trace(&g, 30, 1, 0, 1_000_000).unwrap();
        assert!(!trace.censored);
        assert_eq!(trace.distances.len(), 30);
        assert!(trace.distances.iter().all(|&d| d == 1));
        assert_eq!(trace.total, 30);
    }

    #[test]
    fn line_discoveries_always_border_fresh_ground() {
        let g = catalog::line();
        let trace = packing_trace(&g, 40, 2, 1, 1_000_000).unwrap();
        assert!(trace.distances.iter().all(|&d| d == 1));
    }

    #[test]
    fn tree_shortcut_matches_its_theorem() {
        let g = catalog::regular_tree(4).unwrap();
        let trace = packing_trace(&g, 200, 3, 0, 1_000_000).unwrap();
        assert!(!trace.censored);
        assert_eq!(trace.total, 200);
    }

    #[test]
    fn clique_keeps_distance_one_until_nearly_full() {
        let g = catalog::clique(9).unwrap();
        let trace = packing_trace(&g, 8, 4, 0, 1_000_000).unwrap();
        assert!(trace.distances.iter().all(|&d| d == 1));
    }

    #[test]
    fn multiscale_distances_are_positive_and_bounded() {
        let seq = crate::graph::ScaleSequence::Explicit(vec![4, 8, 16]);
        let g = catalog::multiscale(seq).unwrap();
        for rep in 0..5 {
            let trace = packing_trace(&g, 25, 7, rep, 1_000_000).unwrap();
            assert!(!trace.censored);
            assert!(trace.distances.iter().all(|&d| d >= 1));
            // A discovered vertex is adjacent to the previously visited part,
            // whose diameter at 25 vertices is tiny; distances stay small.
            assert!(trace.distances.iter().all(|&d| d <= 25));
            assert!(trace.total >= 25);
        }
    }

    #[test]
    fn traces_are_reproducible() {
        let seq = crate::graph::ScaleSequence::Dyadic { blocks: Some(4) };
        let g = catalog::multiscale(seq).unwrap();
        let a = packing_trace(&g, 20, 9, 2, 1_000_000).unwrap();
        let b = packing_trace(&g, 20, 9, 2, 1_000_000).unwrap();
        assert_eq!(a.distances, b.distances);
        assert_eq!(a.final_time, b.final_time);
    }

    #[test]
    fn full_finite_graph_is_rejected() {
        let g = catalog::clique(5).unwrap();
        assert!(packing_trace(&g, 5, 1, 0, 1000).is_err());
    }
}
