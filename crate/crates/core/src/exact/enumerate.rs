//! Exhaustive enumeration oracles for cross-checking on tiny instances.

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, GraphHandle, GraphMeta};

/// Largest vertex count for exhaustive connected-graph enumeration.
pub const ENUM_VERTEX_CAP: usize = 7;

/// All connected labeled graphs on exactly `n` vertices (`1 <= n <= 7`),
/// in ascending edge-mask order. Counts for n = 1..6 are
/// 1, 1, 4, 38, 728, 26704.
pub fn connected_graphs(n: usize) -> Result<Vec<FiniteGraph>> {
    if n == 0 || n > ENUM_VERTEX_CAP {
        return Err(Error::EnumerationCapExceeded { n: n as u64, cap: ENUM_VERTEX_CAP as u64 });
    }
    let pair_count = n * (n - 1) / 2;
    let pairs: Vec<(u32, u32)> = {
        let mut v = Vec::with_capacity(pair_count);
        for a in 0..n as u32 {
            for b in (a + 1)..n as u32 {
                v.push((a, b));
            }
        }
        v
    };
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pair_count) {
        // Cheap connectivity test on bit-adjacency before building anything.
        let mut adj_bits = [0u8; ENUM_VERTEX_CAP];
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                adj_bits[a as usize] |= 1 << b;
                adj_bits[b as usize] |= 1 << a;
            }
        }
        let mut reached: u8 = 1;
        loop {
            let mut grown = reached;
            for v in 0..n {
                if reached >> v & 1 == 1 {
                    grown |= adj_bits[v];
                }
            }
            if grown == reached {
                break;
            }
            reached = grown;
        }
        if reached.count_ones() as usize != n {
            continue;
        }
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|&(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(FiniteGraph::from_edge_list(n, &edges, 0)?);
    }
    Ok(out)
}

/// Wrap an enumerated graph in a handle (family tag `path` is meaningless
/// here; the label is informational only).
pub fn as_handle(fin: FiniteGraph, index: usize) -> GraphHandle {
    GraphHandle::from_finite(
        GraphMeta::new(crate::graph::Family::Path, vec![fin.vertex_count() as u64, index as u64]),
        fin,
    )
}

/// Exhaustive densest-k-subset: the maximum edge count induced by any
/// `k`-subset, by iterating all subsets (Gosper's hack). Capped at 28
/// vertices and ~20M subsets.
pub fn max_edges_exhaustive(fin: &FiniteGraph, k: usize) -> Result<u64> {
    let n = fin.vertex_count();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "subset size {k} out of range 1..={n}"
        )));
    }
    if n > 28 {
        return Err(Error::EnumerationCapExceeded { n: n as u64, cap: 28 });
    }
    let subsets = binomial(n as u64, k as u64);
    if subsets > 20_000_000 {
        return Err(Error::WorkCapExceeded { units: subsets as u128, cap: 20_000_000 });
    }
    let rows: Vec<u32> = (0..n)
        .map(|v| {
            fin.neighbors(v)
                .iter()
                .fold(0u32, |acc, &w| acc | 1 << w)
        })
        .collect();
    let mut best = 0u64;
    let mut subset: u32 = (1 << k) - 1;
    let limit: u64 = if n == 32 { u64::MAX } else { 1u64 << n };
    while (subset as u64) < limit {
        let mut edges = 0u64;
        let mut rest = subset;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            edges += (rows[v] & rest).count_ones() as u64;
        }
        best = best.max(edges);
        // Gosper's hack: next subset with the same popcount.
        let c = subset & subset.wrapping_neg();
        let r = subset + c;
        if r == 0 {
            break;
        }
        subset = (((r ^ subset) >> 2) / c) | r;
    }
    Ok(best)
}

/// Binomial coefficient `C(n, k)` for the small arguments used here
/// (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
