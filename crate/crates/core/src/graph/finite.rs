//! Explicit finite graphs as validated adjacency lists.

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Record that a finite graph arose by truncating a lazy graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationInfo {
    /// Ball radius used for the truncation.
    pub radius: u64,
    /// Original vertex ids, ascending; local index `i` corresponds to
    /// `source[i]`.
    pub source: Vec<VertexId>,
}

/// A simple, undirected, connected graph on dense ids `0..n`.
///
/// Invariants enforced at construction: no self-loops, no parallel edges,
/// symmetric adjacency, sorted neighbor lists, connectedness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<u32>>,
    origin: u32,
    edges: usize,
    truncation: Option<TruncationInfo>,
}

impl FiniteGraph {
    /// Build from adjacency lists (need not be pre-sorted). Validates all
    /// structural invariants.
    pub fn from_adjacency(mut adj: Vec<Vec<u32>>, origin: u32) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::InvalidArgument("graph must have at least one vertex".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidArgument(format!(
                "finite graphs are capped at {} vertices",
                u32::MAX
            )));
        }
        if (origin as usize) >= n {
            return Err(Error::InvalidArgument(format!(
                "origin {origin} out of range for {n} vertices"
            )));
        }
        let mut edges = 0usize;
        for (v, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            for (i, &w) in nb.iter().enumerate() {
                if (w as usize) >= n {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} lists neighbor {w} outside 0..{n}"
                    )));
                }
                if w as usize == v {
                    return Err(Error::InvalidArgument(format!("self-loop at vertex {v}")));
                }
                if i > 0 && nb[i - 1] == w {
                    return Err(Error::InvalidArgument(format!(
                        "parallel edge {{{v},{w}}}"
                    )));
                }
                if (w as usize) > v {
                    edges += 1;
                }
            }
        }
        // Symmetry: every listed edge must be listed from both ends.
        for (v, nb) in adj.iter().enumerate() {
            for &w in nb {
                if adj[w as usize].binary_search(&(v as u32)).is_err() {
                    return Err(Error::InvalidArgument(format!(
                        "asymmetric edge: {v} lists {w} but not vice versa"
                    )));
                }
            }
        }
        let graph = FiniteGraph { adj, origin, edges, truncation: None };
        if !graph.is_connected() {
            return Err(Error::InvalidArgument("graph is not connected".into()));
        }
        Ok(graph)
    }

    /// Build from an edge list on `n` vertices.
    pub fn from_edge_list(n: usize, edges: &[(u32, u32)], origin: u32) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if (a as usize) >= n || (b as usize) >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a},{b}) outside 0..{n}"
                )));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        Self::from_adjacency(adj, origin)
    }

    pub(crate) fn with_truncation(mut self, info: TruncationInfo) -> Self {
        debug_assert_eq!(info.source.len(), self.adj.len());
        self.truncation = Some(info);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn origin_index(&self) -> usize {
        self.origin as usize
    }

    /// Truncation provenance, if this graph is a ball in a lazy graph.
    pub fn truncation(&self) -> Option<&TruncationInfo> {
        self.truncation.as_ref()
    }

    /// Original id of local vertex `i` (identity when not a truncation).
    pub fn source_id(&self, i: usize) -> VertexId {
        match &self.truncation {
            Some(info) => info.source[i],
            None => VertexId(i as u64),
        }
    }

    /// Local index of an original id (identity when not a truncation).
    pub fn local_of(&self, v: VertexId) -> Option<usize> {
        match &self.truncation {
            Some(info) => info.source.binary_search(&v).ok(),
            None => {
                if (v.0 as usize) < self.adj.len() {
                    Some(v.0 as usize)
                } else {
                    None
                }
            }
        }
    }

    /// BFS distances from `v` to every vertex.
    pub fn distances_from(&self, v: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x] + 1;
                    queue.push_back(y as usize);
                }
            }
        }
        dist
    }

    /// Graph distance between two vertices.
    pub fn distance(&self, a: usize, b: usize) -> u32 {
        self.distances_from(a)[b]
    }

    /// Number of edges with both endpoints in `set` (`set` must be ascending
    /// and duplicate-free).
    pub fn edges_within(&self, set: &[u32]) -> usize {
        let mut count = 0;
        for &v in set {
            for &w in &self.adj[v as usize] {
                if w > v && set.binary_search(&w).is_ok() {
                    count += 1;
                }
            }
        }
        count
    }

    fn is_connected(&self) -> bool {
        let reached = self
            .distances_from(0)
            .iter()
            .filter(|&&d| d != u32::MAX)
            .count();
        reached == self.adj.len()
    }
}
