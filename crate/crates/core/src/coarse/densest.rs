//! Exact maximum-edge `k`-subset search on finite graphs.
//!
//! Depth-first branch and bound over vertices in ascending id order,
//! include-branch first, improving only on strict gains — so the first
//! optimum reached is kept, which makes the reported witness the
//! lexicographically smallest optimal set. Subsets are *not* assumed
//! connected; the admissible bounds below are valid for arbitrary subsets.
//!
//! Pruning bounds for a partial choice `P` with `rem` vertices still to
//! pick from the candidate suffix `C`:
//!
//! * global ceiling `C(k,2)`;
//! * complete-join ceiling `e(P) + rem·|P| + C(rem,2)`;
//! * degree ceiling `e(P) + Σ (top rem candidate degrees, capped at k−1)` —
//!   every edge gained has at least one endpoint among the new vertices.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::exact::enumerate::binomial;
use crate::graph::FiniteGraph;

/// Largest graph the search accepts.
pub const BNB_VERTEX_CAP: usize = 1024;
/// Default wall-clock budget per call.
pub const BNB_DEFAULT_BUDGET: Duration = Duration::from_secs(60);

/// Result of an exact search: the maximum induced edge count and its
/// lexicographically smallest witness (ascending local vertex ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensestResult {
    pub edges: u64,
    pub witness: Vec<u32>,
}

struct Search<'a> {
    adj: Vec<Vec<u64>>, // bitset rows
    degrees: Vec<u32>,
    n: usize,
    k: usize,
    target: u64, // C(k,2)
    best: Option<DensestResult>,
    chosen: Vec<u32>,
    chosen_mask: Vec<u64>,
    deadline: Instant,
    node_counter: u32,
    budget: &'a Duration,
}

impl Search<'_> {
    fn row_and_popcount(&self, v: usize) -> u64 {
        self.adj[v]
            .iter()
            .zip(&self.chosen_mask)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    /// Admissible upper bound on the edges reachable from this node.
    fn bound(&self, edges: u64, next: usize, rem: usize) -> u64 {
        let p = self.chosen.len() as u64;
        let rem64 = rem as u64;
        let join = edges + rem64 * p + binomial(rem64, 2);
        // Top `rem` degrees in the candidate suffix, capped at k−1.
        let cap = (self.k - 1) as u32;
        let mut top: Vec<u32> = Vec::with_capacity(rem + 1);
        for v in next..self.n {
            let d = self.degrees[v].min(cap);
            if top.len() < rem {
                top.push(d);
                if top.len() == rem {
                    top.sort_unstable();
                }
            } else if d > top[0] {
                top[0] = d;
                // Re-sink the replaced minimum.
                let mut i = 0;
                while i + 1 < top.len() && top[i] > top[i + 1] {
                    top.swap(i, i + 1);
                    i += 1;
                }
            }
        }
        let by_degree = edges + top.iter().map(|&d| d as u64).sum::<u64>();
        self.target.min(join).min(by_degree)
    }

    fn dfs(&mut self, next: usize, edges: u64) -> Result<()> {
        self.node_counter = self.node_counter.wrapping_add(1);
        if self.node_counter % 1024 == 0 && Instant::now() > self.deadline {
            return Err(Error::EnumerationBudgetExceeded {
                budget_ms: self.budget.as_millis(),
            });
        }
        if self.chosen.len() == self.k {
            let better = match &self.best {
                Some(b) => edges > b.edges,
                None => true,
            };
            if better {
                self.best = Some(DensestResult { edges, witness: self.chosen.clone() });
            }
            return Ok(());
        }
        let rem = self.k - self.chosen.len();
        if self.n - next < rem {
            return Ok(());
        }
        if let Some(b) = &self.best {
            if b.edges >= self.target {
                return Ok(()); // already at the global ceiling
            }
            if self.bound(edges, next, rem) <= b.edges {
                return Ok(());
            }
        }
        // Include `next` first: keeps the first optimum lexicographically
        // smallest.
        let gained = self.row_and_popcount(next);
        self.chosen.push(next as u32);
        self.chosen_mask[next / 64] |= 1 << (next % 64);
        self.dfs(next + 1, edges + gained)?;
        self.chosen.pop();
        self.chosen_mask[next / 64] &= !(1 << (next % 64));
        self.dfs(next + 1, edges)
    }
}

/// Exact maximum number of edges induced by a `k`-vertex subset, with the
/// lexicographically smallest witness. Deterministic; respects `budget`.
pub fn max_edges_subset(
    fin: &FiniteGraph,
    k: usize,
    budget: Duration,
) -> Result<DensestResult> {
    let n = fin.vertex_count();
    if n > BNB_VERTEX_CAP {
        return Err(Error::InvalidArgument(format!(
            "subset search supports at most {BNB_VERTEX_CAP} vertices, got {n}"
        )));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "cannot choose {k} vertices from {n}"
        )));
    }
    if k <= 1 {
        return Ok(DensestResult { edges: 0, witness: (0..k as u32).collect() });
    }
    let words = n.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; n];
    for v in 0..n {
        for &w in fin.neighbors(v) {
            adj[v][w as usize / 64] |= 1 << (w as usize % 64);
        }
    }
    let degrees: Vec<u32> = (0..n).map(|v| fin.degree(v) as u32).collect();
    let mut search = Search {
        adj,
        degrees,
        n,
        k,
        target: binomial(k as u64, 2),
        best: None,
        chosen: Vec::with_capacity(k),
        chosen_mask: vec![0u64; words],
        deadline: Instant::now() + budget,
        node_counter: 0,
        budget: &budget,
    };
    search.dfs(0, 0)?;
    Ok(search.best.expect("k <= n guarantees at least one subset"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::enumerate::max_edges_exhaustive;
    use crate::graph::catalog;

    fn check_against_exhaustive(fin: &FiniteGraph, k: usize) {
        let expect = max_edges_exhaustive(fin, k).unwrap();
        let got = max_edges_subset(fin, k, BNB_DEFAULT_BUDGET).unwrap();
        assert_eq!(got.edges, expect, "k = {k}");
        assert_eq!(got.witness.len(), k);
        // The witness must actually induce that many edges.
        let mut count = 0u64;
        for (i, &a) in got.witness.iter().enumerate() {
            for &b in &got.witness[i + 1..] {
                if fin.neighbors(a as usize).binary_search(&b).is_ok() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, got.edges, "witness edge recount");
    }

    #[test]
    fn matches_exhaustive_search_on_catalog_shapes() {
        let lollipop = catalog::lollipop(10).unwrap();
        for k in 2..=10 {
            check_against_exhaustive(lollipop.finite().unwrap(), k);
        }
        let cycle = catalog::cycle(8).unwrap();
        for k in 2..=8 {
            check_against_exhaustive(cycle.finite().unwrap(), k);
        }
        let star = catalog::star(6).unwrap();
        for k in [2, 4, 7] {
            check_against_exhaustive(star.finite().unwrap(), k);
        }
        let grid = catalog::grid(&[4, 4]).unwrap();
        for k in [3, 5, 8] {
            check_against_exhaustive(grid.finite().unwrap(), k);
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // On a cycle every consecutive pair is optimal for k=2; the smallest
        // is {0,1}. For k=3 the smallest arc is {0,1,2}.
        let cycle = catalog::cycle(9).unwrap();
        let fin = cycle.finite().unwrap();
        assert_eq!(
            max_edges_subset(fin, 2, BNB_DEFAULT_BUDGET).unwrap().witness,
            vec![0, 1]
        );
        assert_eq!(
            max_edges_subset(fin, 3, BNB_DEFAULT_BUDGET).unwrap().witness,
            vec![0, 1, 2]
        );
    }

    #[test]
    fn clique_hits_the_ceiling_fast() {
        let clique = catalog::clique(40).unwrap();
        let res = max_edges_subset(clique.finite().unwrap(), 12, BNB_DEFAULT_BUDGET).unwrap();
        assert_eq!(res.edges, 66);
        assert_eq!(res.witness, (0..12).collect::<Vec<u32>>());
    }

    #[test]
    fn zero_budget_is_reported() {
        let path = catalog::path(200).unwrap();
        let err = max_edges_subset(path.finite().unwrap(), 8, Duration::ZERO);
        assert!(matches!(err, Err(Error::EnumerationBudgetExceeded { .. })));
    }

    #[test]
    fn degenerate_requests() {
        let path = catalog::path(5).unwrap();
        let fin = path.finite().unwrap();
        assert_eq!(max_edges_subset(fin, 0, BNB_DEFAULT_BUDGET).unwrap().edges, 0);
        assert_eq!(max_edges_subset(fin, 1, BNB_DEFAULT_BUDGET).unwrap().witness, vec![0]);
        assert_eq!(max_edges_subset(fin, 5, BNB_DEFAULT_BUDGET).unwrap().edges, 4);
        assert!(max_edges_subset(fin, 6, BNB_DEFAULT_BUDGET).is_err());
    }
}
