//! Graph abstraction: immutable handles over finite adjacency lists and lazy
//! (possibly infinite) neighbor oracles.
//!
//! Every graph is simple, undirected, and connected. Vertices are opaque
//! [`VertexId`]s; finite graphs use dense ids `0..n`, lazy families document
//! their own packing (see [`catalog`] and [`multiscale`]). Neighbor lists are
//! always returned in ascending id order so that seeded sampling is
//! reproducible.
//!
//! The two capabilities every algorithm in this crate builds on:
//!
//! * [`ball`] — the set of vertices within a given distance of a vertex;
//! * [`truncate`] — the finite induced subgraph on `ball(origin, radius)`,
//!   with the original ids recorded so exact results can be mapped back.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod catalog;
mod finite;
mod lazy;
pub mod multiscale;

pub use finite::{FiniteGraph, TruncationInfo};
pub use multiscale::ScaleSequence;

/// Hard cap on how many vertices a single ball/truncation may materialize.
pub const MATERIALIZE_CAP: usize = 5_000_000;

// ---------------------------------------------------------------------------
// Vertex ids and family metadata
// ---------------------------------------------------------------------------

/// Opaque vertex identifier.
///
/// Finite graphs use dense ids `0..n`. Lazy families pack structure into the
/// 64 bits (documented per family); the packing is an implementation detail
/// and only equality/order of ids is meaningful to callers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u64);

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Catalog family tags. `Grid` is spelled `box` in configs and labels.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Clique,
    Path,
    Cycle,
    Star,
    #[serde(rename = "box")]
    Grid,
    Lollipop,
    Ray,
    Line,
    Lattice,
    RegularTree,
    InfiniteLollipop,
    StarRay,
    MultiScale,
}

impl Family {
    /// Catalog name as used in configs and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Family::Clique => "clique",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Grid => "box",
            Family::Lollipop => "lollipop",
            Family::Ray => "ray",
            Family::Line => "line",
            Family::Lattice => "lattice",
            Family::RegularTree => "regular-tree",
            Family::InfiniteLollipop => "infinite-lollipop",
            Family::StarRay => "star-ray",
            Family::MultiScale => "multiscale-lollipop",
        }
    }

    /// Whether members of this family are finite graphs.
    pub fn is_finite(self) -> bool {
        matches!(
            self,
            Family::Clique
                | Family::Path
                | Family::Cycle
                | Family::Star
                | Family::Grid
                | Family::Lollipop
        )
    }

    /// Whether every member of the family looks the same from every vertex.
    /// Such graphs need walk quantities computed from a single start only.
    pub fn is_vertex_transitive(self) -> bool {
        matches!(
            self,
            Family::Clique
                | Family::Cycle
                | Family::Line
                | Family::Lattice
                | Family::RegularTree
        )
    }
}

/// What a handle knows about its own construction.
#[derive(Clone, Debug, Serialize)]
pub struct GraphMeta {
    /// Family tag.
    pub family: Family,
    /// Numeric construction parameters (family-specific; empty for `ray`/`line`).
    pub params: Vec<u64>,
    /// Present only for `multiscale-lollipop`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scales: Option<ScaleSequence>,
}

impl GraphMeta {
    pub(crate) fn new(family: Family, params: Vec<u64>) -> Self {
        GraphMeta { family, params, scales: None }
    }

    /// Short display label, e.g. `lollipop(10)` or `box(3x4)`.
    pub fn label(&self) -> String {
        match self.family {
            Family::Ray | Family::Line => self.family.name().to_string(),
            Family::Grid => {
                let sides: Vec<String> = self.params.iter().map(|s| s.to_string()).collect();
                format!("box({})", sides.join("x"))
            }
            Family::MultiScale => match &self.scales {
                Some(seq) => format!("{}({})", self.family.name(), seq.label()),
                None => self.family.name().to_string(),
            },
            _ => {
                let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
                format!("{}({})", self.family.name(), ps.join(","))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Neighbor oracles and handles
// ---------------------------------------------------------------------------

/// Implicit adjacency for lazy (infinite) families.
///
/// Contract: for a vertex with `contains(v)`, `neighbor_at(v, k)` for
/// `k < degree(v)` enumerates the neighbors in strictly ascending id order.
/// Calls outside the contract may panic.
pub trait NeighborOracle: Send + Sync {
    /// Does `v` denote a vertex of this graph?
    fn contains(&self, v: VertexId) -> bool;
    /// Number of neighbors of `v`.
    fn degree(&self, v: VertexId) -> usize;
    /// The `k`-th neighbor of `v` in ascending id order, `k < degree(v)`.
    fn neighbor_at(&self, v: VertexId, k: usize) -> VertexId;
}

enum Kind {
    Finite(FiniteGraph),
    Lazy { origin: VertexId, oracle: Box<dyn NeighborOracle> },
}

struct Inner {
    meta: GraphMeta,
    kind: Kind,
}

/// Cheaply clonable, immutable graph handle.
#[derive(Clone)]
pub struct GraphHandle {
    inner: Arc<Inner>,
}

impl fmt::Debug for GraphHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphHandle({})", self.label())
    }
}

impl GraphHandle {
    pub(crate) fn from_finite(meta: GraphMeta, graph: FiniteGraph) -> Self {
        GraphHandle { inner: Arc::new(Inner { meta, kind: Kind::Finite(graph) }) }
    }

    pub(crate) fn from_oracle(
        meta: GraphMeta,
        origin: VertexId,
        oracle: Box<dyn NeighborOracle>,
    ) -> Self {
        GraphHandle { inner: Arc::new(Inner { meta, kind: Kind::Lazy { origin, oracle } }) }
    }

    /// Construction metadata.
    pub fn meta(&self) -> &GraphMeta {
        &self.inner.meta
    }

    /// The family tag of the underlying construction.
    pub fn family(&self) -> Family {
        self.inner.meta.family
    }

    /// Display label; truncations are marked, e.g. `ray|r<=5`.
    pub fn label(&self) -> String {
        match self.finite().and_then(FiniteGraph::truncation) {
            Some(info) => format!("{}|r<={}", self.inner.meta.label(), info.radius),
            None => self.inner.meta.label(),
        }
    }

    /// The distinguished start vertex of the family.
    pub fn origin(&self) -> VertexId {
        match &self.inner.kind {
            Kind::Finite(g) => VertexId(g.origin_index() as u64),
            Kind::Lazy { origin, .. } => *origin,
        }
    }

    /// Whether this handle owns an explicit finite graph.
    pub fn is_finite(&self) -> bool {
        matches!(self.inner.kind, Kind::Finite(_))
    }

    /// Whether this handle is a truncation of a lazy graph.
    pub fn is_truncation(&self) -> bool {
        self.finite().is_some_and(|g| g.truncation().is_some())
    }

    /// Access the explicit finite graph, if any.
    pub fn finite(&self) -> Option<&FiniteGraph> {
        match &self.inner.kind {
            Kind::Finite(g) => Some(g),
            Kind::Lazy { .. } => None,
        }
    }

    /// Vertex count for finite handles.
    pub fn vertex_count(&self) -> Option<usize> {
        self.finite().map(FiniteGraph::vertex_count)
    }

    /// Edge count for finite handles.
    pub fn edge_count(&self) -> Option<usize> {
        self.finite().map(FiniteGraph::edge_count)
    }

    /// Membership test.
    pub fn contains(&self, v: VertexId) -> bool {
        match &self.inner.kind {
            Kind::Finite(g) => (v.0 as usize) < g.vertex_count(),
            Kind::Lazy { oracle, .. } => oracle.contains(v),
        }
    }

    /// Degree of `v`.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        if !self.contains(v) {
            return Err(Error::VertexNotInGraph(v));
        }
        Ok(self.degree_unchecked(v))
    }

    /// Neighbors of `v` in ascending id order.
    ///
    /// Asking about a vertex outside the graph is an error, not an empty list.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        if !self.contains(v) {
            return Err(Error::VertexNotInGraph(v));
        }
        let deg = self.degree_unchecked(v);
        Ok((0..deg).map(|k| self.neighbor_at_unchecked(v, k)).collect())
    }

    /// Degree without a membership check. Caller guarantees `contains(v)`.
    #[inline]
    pub fn degree_unchecked(&self, v: VertexId) -> usize {
        match &self.inner.kind {
            Kind::Finite(g) => g.degree(v.0 as usize),
            Kind::Lazy { oracle, .. } => oracle.degree(v),
        }
    }

    /// `k`-th neighbor without checks. Caller guarantees `contains(v)` and
    /// `k < degree(v)`.
    #[inline]
    pub fn neighbor_at_unchecked(&self, v: VertexId, k: usize) -> VertexId {
        match &self.inner.kind {
            Kind::Finite(g) => VertexId(g.neighbors(v.0 as usize)[k] as u64),
            Kind::Lazy { oracle, .. } => oracle.neighbor_at(v, k),
        }
    }

    /// Whether `{v, w}` is an edge. Binary-searches the (ascending) neighbor
    /// list of `v`, so this stays cheap even on huge-degree vertices.
    pub fn is_adjacent(&self, v: VertexId, w: VertexId) -> Result<bool> {
        if !self.contains(v) {
            return Err(Error::VertexNotInGraph(v));
        }
        if !self.contains(w) {
            return Err(Error::VertexNotInGraph(w));
        }
        if v == w {
            return Ok(false);
        }
        let deg = self.degree_unchecked(v);
        let (mut lo, mut hi) = (0usize, deg);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let u = self.neighbor_at_unchecked(v, mid);
            match u.cmp(&w) {
                std::cmp::Ordering::Equal => return Ok(true),
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
            }
        }
        Ok(false)
    }
}

// ---------------------------------------------------------------------------
// Balls, truncations, distances
// ---------------------------------------------------------------------------

/// Breadth-first sweep from `center` out to `radius`, capped at
/// [`MATERIALIZE_CAP`] vertices. Returns `(vertex, distance)` pairs sorted by
/// vertex id.
fn bfs_ball(g: &GraphHandle, center: VertexId, radius: u64) -> Result<Vec<(VertexId, u64)>> {
    if !g.contains(center) {
        return Err(Error::VertexNotInGraph(center));
    }
    let mut dist: HashMap<VertexId, u64> = HashMap::new();
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    dist.insert(center, 0);
    queue.push_back(center);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == radius {
            continue;
        }
        let deg = g.degree_unchecked(v);
        for k in 0..deg {
            let w = g.neighbor_at_unchecked(v, k);
            if !dist.contains_key(&w) {
                if dist.len() >= MATERIALIZE_CAP {
                    return Err(Error::TruncationTooLarge {
                        vertices: dist.len() + 1,
                        cap: MATERIALIZE_CAP,
                    });
                }
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<(VertexId, u64)> = dist.into_iter().collect();
    out.sort_unstable_by_key(|&(v, _)| v);
    Ok(out)
}

/// Closed ball `B(center, radius)` as a sorted vertex list.
pub fn ball(g: &GraphHandle, center: VertexId, radius: u64) -> Result<Vec<VertexId>> {
    Ok(bfs_ball(g, center, radius)?.into_iter().map(|(v, _)| v).collect())
}

/// Finite induced subgraph on `ball(origin, radius)`.
///
/// The result is a fresh finite handle with dense local ids; the original ids
/// are recorded in its [`TruncationInfo`] (ascending, so local index `i` maps
/// to the `i`-th smallest original id). The truncation radius is kept so
/// downstream exact computations can assert that a horizon never touches the
/// boundary.
pub fn truncate(g: &GraphHandle, radius: u64) -> Result<GraphHandle> {
    truncate_at(g, g.origin(), radius)
}

/// [`truncate`], but with the ball centered at an arbitrary vertex; the
/// resulting handle's origin is `center`.
pub fn truncate_at(g: &GraphHandle, center: VertexId, radius: u64) -> Result<GraphHandle> {
    let members = bfs_ball(g, center, radius)?;
    let ids: Vec<VertexId> = members.iter().map(|&(v, _)| v).collect();
    let index_of: HashMap<VertexId, u32> =
        ids.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); ids.len()];
    for (i, &v) in ids.iter().enumerate() {
        let deg = g.degree_unchecked(v);
        for k in 0..deg {
            let w = g.neighbor_at_unchecked(v, k);
            if let Some(&j) = index_of.get(&w) {
                adj[i].push(j);
            }
        }
        // Ascending original ids map to ascending local ids, but the oracle's
        // per-vertex order interleaves arbitrary blocks; re-sort locally.
        adj[i].sort_unstable();
    }
    let origin_local = index_of[&center];
    let fin = FiniteGraph::from_adjacency(adj, origin_local)?
        .with_truncation(TruncationInfo { radius, source: ids });
    Ok(GraphHandle::from_finite(g.meta().clone(), fin))
}

/// Graph distance from `from` to `to`, searching out to `radius_cap`.
/// Returns `None` if `to` was not reached within the cap.
pub fn distance(
    g: &GraphHandle,
    from: VertexId,
    to: VertexId,
    radius_cap: u64,
) -> Result<Option<u64>> {
    if !g.contains(to) {
        return Err(Error::VertexNotInGraph(to));
    }
    if from == to {
        return Ok(Some(0));
    }
    for (v, d) in bfs_ball(g, from, radius_cap)? {
        if v == to {
            return Ok(Some(d));
        }
    }
    Ok(None)
}
