//! Constructors for every graph family this crate knows how to build.
//!
//! Finite families materialize adjacency lists; infinite families wrap a
//! [`NeighborOracle`]. All constructors fix the origin:
//!
//! | family               | origin                                         |
//! |----------------------|------------------------------------------------|
//! | `clique(m)`          | vertex 0                                       |
//! | `path(m)`            | endpoint 0                                     |
//! | `cycle(m)`           | vertex 0                                       |
//! | `star(k)`            | the center                                     |
//! | `box(s1 x ... x sd)` | the all-zero corner                            |
//! | `lollipop(n)`        | first clique vertex (away from the attachment) |
//! | `ray`                | the endpoint                                   |
//! | `line`, `lattice(d)` | the zero vertex                                |
//! | `regular-tree(d)`    | one of the two glued heap roots                |
//! | `infinite-lollipop`  | first clique vertex                            |
//! | `star-ray(k)`        | the center                                     |
//! | `multiscale-lollipop`| local vertex 0 of the first block              |

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::lazy;
use crate::graph::multiscale::{MultiScale, ScaleSequence};
use crate::graph::{Family, FiniteGraph, GraphHandle, GraphMeta, VertexId};

/// Largest finite graph the catalog will materialize.
pub const FINITE_CAP: u64 = 2_000_000;

fn check_range(family: &'static str, name: &str, value: u64, lo: u64, hi: u64) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::InvalidParams {
            family,
            reason: format!("{name} = {value} outside {lo}..={hi}"),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Finite families
// ---------------------------------------------------------------------------

/// Complete graph on `m >= 2` vertices.
pub fn clique(m: u64) -> Result<GraphHandle> {
    check_range("clique", "m", m, 2, 3000)?;
    let m = m as usize;
    let adj: Vec<Vec<u32>> = (0..m)
        .map(|v| (0..m as u32).filter(|&w| w as usize != v).collect())
        .collect();
    Ok(GraphHandle::from_finite(
        GraphMeta::new(Family::Clique, vec![m as u64]),
        FiniteGraph::from_adjacency(adj, 0)?,
    ))
}

/// Path on `m >= 2` vertices; the origin is the endpoint `0`.
pub fn path(m: u64) -> Result<GraphHandle> {
    check_range("path", "m", m, 2, FINITE_CAP)?;
    let edges: Vec<(u32, u32)> = (0..m as u32 - 1).map(|i| (i, i + 1)).collect();
    Ok(GraphHandle::from_finite(
        GraphMeta::new(Family::Path, vec![m]),
        FiniteGraph::from_edge_list(m as usize, &edges, 0)?,
    ))
}

/// Cycle on `m >= 3` vertices.
pub fn cycle(m: u64) -> Result<GraphHandle> {
    check_range("cycle", "m", m, 3, FINITE_CAP)?;
    let mut edges: Vec<(u32, u32)> = (0..m as u32 - 1).map(|i| (i, i + 1)).collect();
    edges.push((m as u32 - 1, 0));
    Ok(GraphHandle::from_finite(
        GraphMeta::new(Family::Cycle, vec![m]),
        FiniteGraph::from_edge_list(m as usize, &edges, 0)?,
    ))
}

/// Star with `k >= 1` leaves; vertex 0 is the center and the origin.
pub fn star(k: u64) -> Result<GraphHandle> {
    check_range("star", "k", k, 1, FINITE_CAP - 1)?;
    let edges: Vec<(u32, u32)> = (1..=k as u32).map(|leaf| (0, leaf)).collect();
    Ok(GraphHandle::from_finite(
        GraphMeta::new(Family::Star, vec![k]),
        FiniteGraph::from_edge_list(k as usize + 1, &edges, 0)?,
    ))
}

/// Axis-aligned box `s1 x ... x sd` (1 to 3 sides, each >= 1, at least 2
/// vertices total), row-major ids, origin at the zero corner.
pub fn grid(sides: &[u64]) -> Result<GraphHandle> {
    if sides.is_empty() || sides.len() > 3 {
        return Err(Error::InvalidParams {
            family: "box",
            reason: format!("expected 1..=3 side lengths, got {}", sides.len()),
        });
    }
    let mut total: u64 = 1;
    for &s in sides {
        check_range("box", "side", s, 1, FINITE_CAP)?;
        total = total.saturating_mul(s);
    }
    check_range("box", "vertex count", total, 2, FINITE_CAP)?;
    let n = total as usize;
    let strides: Vec<u64> = {
        // Row-major: last axis varies fastest.
        let mut acc = 1;
        let mut s: Vec<u64> = sides
            .iter()
            .rev()
            .map(|&len| {
                let stride = acc;
                acc *= len;
                stride
            })
            .collect();
        s.reverse();
        s
    };
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..total {
        for (axis, (&len, &stride)) in sides.iter().zip(&strides).enumerate() {
            let _ = axis;
            let coord = (v / stride) % len;
            if coord + 1 < len {
                let w = v + stride;
                adj[v as usize].push(w as u32);
                adj[w as usize].push(v as u32);
            }
        }
    }
    Ok(GraphHandle::from_finite(
        GraphMeta::new(Family::Grid, sides.to_vec()),
        FiniteGraph::from_adjacency(adj, 0)?,
    ))
}

/// Lollipop on `n >= 2` vertices: a clique on `q = floor(n/2)` vertices
/// (ids `0..q`, attachment `q-1`) plus a path on the rest (ids `q..n`).
/// The origin is vertex 0 — the clique vertex farthest from the path when
/// the clique is nontrivial.
pub fn lollipop(n: u64) -> Result<GraphHandle> {
    check_range("lollipop", "n", n, 2, 3000)?;
    let q = n / 2;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for a in 0..q as u32 {
        for b in (a + 1)..q as u32 {
            edges.push((a, b));
        }
    }
    // Path q..n, plus the joining edge {q-1, q} (ids are contiguous).
    for j in q as u32..n as u32 {
        edges.push((j - 1, j));
    }
    Ok(GraphHandle::from_finite(
        GraphMeta::new(Family::Lollipop, vec![n]),
        FiniteGraph::from_edge_list(n as usize, &edges, 0)?,
    ))
}

// ---------------------------------------------------------------------------
// Infinite families
// ---------------------------------------------------------------------------

/// One-ended infinite path; origin at the endpoint.
pub fn ray() -> GraphHandle {
    GraphHandle::from_oracle(
        GraphMeta::new(Family::Ray, vec![]),
        VertexId(0),
        Box::new(lazy::Ray),
    )
}

/// Two-ended infinite path; origin at 0.
pub fn line() -> GraphHandle {
    GraphHandle::from_oracle(
        GraphMeta::new(Family::Line, vec![]),
        VertexId(0),
        Box::new(lazy::Line),
    )
}

/// Nearest-neighbor integer lattice in dimension `d` (1..=3). `lattice(1)`
/// is the line.
pub fn lattice(d: u64) -> Result<GraphHandle> {
    check_range("lattice", "d", d, 1, 3)?;
    if d == 1 {
        return Ok(line());
    }
    Ok(GraphHandle::from_oracle(
        GraphMeta::new(Family::Lattice, vec![d]),
        VertexId(0),
        Box::new(lazy::Lattice::new(d as usize)),
    ))
}

/// Infinite `d`-regular tree, `d` in 3..=16; origin at a root.
pub fn regular_tree(d: u64) -> Result<GraphHandle> {
    check_range("regular-tree", "d", d, 3, 16)?;
    Ok(GraphHandle::from_oracle(
        GraphMeta::new(Family::RegularTree, vec![d]),
        VertexId(1 << 1), // heap position 1, side 0
        Box::new(lazy::RegularTree::new(d)),
    ))
}

/// Clique on `floor(n/2)` vertices with an infinite path attached; origin at
/// clique vertex 0.
pub fn infinite_lollipop(n: u64) -> Result<GraphHandle> {
    check_range("infinite-lollipop", "n", n, 2, 1 << 31)?;
    Ok(GraphHandle::from_oracle(
        GraphMeta::new(Family::InfiniteLollipop, vec![n]),
        VertexId(0),
        Box::new(lazy::InfiniteLollipop::new(n)),
    ))
}

/// Star with `k` leaves continuing into an infinite ray; origin at the center.
pub fn star_ray(k: u64) -> Result<GraphHandle> {
    check_range("star-ray", "k", k, 1, 1 << 31)?;
    Ok(GraphHandle::from_oracle(
        GraphMeta::new(Family::StarRay, vec![k]),
        VertexId(0),
        Box::new(lazy::StarRay::new(k)),
    ))
}

/// Chain of lollipop blocks with the given order schedule, continuing as an
/// infinite ray after the last block; origin at the first block's vertex 0.
pub fn multiscale(seq: ScaleSequence) -> Result<GraphHandle> {
    let oracle = MultiScale::new(&seq)?;
    let mut meta = GraphMeta::new(Family::MultiScale, vec![]);
    meta.scales = Some(seq);
    Ok(GraphHandle::from_oracle(meta, VertexId(0), Box::new(oracle)))
}

// ---------------------------------------------------------------------------
// String-keyed entry point and the printed catalog
// ---------------------------------------------------------------------------

/// Build a graph from a family name and numeric parameters.
///
/// `multiscale-lollipop` takes either no parameters (the unbounded dyadic
/// schedule), a single parameter `b <= 31` (dyadic with `b` blocks), or a
/// list of 2 or more explicit block orders.
pub fn build(family: &str, params: &[u64]) -> Result<GraphHandle> {
    let expect = |count: usize| -> Result<()> {
        if params.len() != count {
            return Err(Error::InvalidParams {
                family: "catalog",
                reason: format!(
                    "{family} expects {count} parameter(s), got {}",
                    params.len()
                ),
            });
        }
        Ok(())
    };
    match family {
        "clique" => {
            expect(1)?;
            clique(params[0])
        }
        "path" => {
            expect(1)?;
            path(params[0])
        }
        "cycle" => {
            expect(1)?;
            cycle(params[0])
        }
        "star" => {
            expect(1)?;
            star(params[0])
        }
        "box" => grid(params),
        "lollipop" => {
            expect(1)?;
            lollipop(params[0])
        }
        "ray" => {
            expect(0)?;
            Ok(ray())
        }
        "line" => {
            expect(0)?;
            Ok(line())
        }
        "lattice" => {
            expect(1)?;
            lattice(params[0])
        }
        "regular-tree" => {
            expect(1)?;
            regular_tree(params[0])
        }
        "infinite-lollipop" => {
            expect(1)?;
            infinite_lollipop(params[0])
        }
        "star-ray" => {
            expect(1)?;
            star_ray(params[0])
        }
        "multiscale-lollipop" => match params {
            [] => multiscale(ScaleSequence::Dyadic { blocks: None }),
            [b] => multiscale(ScaleSequence::Dyadic { blocks: Some(*b as u32) }),
            orders => multiscale(ScaleSequence::Explicit(orders.to_vec())),
        },
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// One row of the printed catalog.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub params: &'static str,
    pub notes: &'static str,
}

/// Every family the catalog can build, for `--help`-style listings.
pub fn families() -> Vec<FamilyInfo> {
    vec![
        FamilyInfo { name: "clique", kind: "finite", params: "m (2..=3000)", notes: "complete graph" },
        FamilyInfo { name: "path", kind: "finite", params: "m (2..)", notes: "origin at an endpoint" },
        FamilyInfo { name: "cycle", kind: "finite", params: "m (3..)", notes: "" },
        FamilyInfo { name: "star", kind: "finite", params: "k leaves (1..)", notes: "origin at the center" },
        FamilyInfo { name: "box", kind: "finite", params: "s1 [s2 [s3]]", notes: "axis-aligned grid, origin at a corner" },
        FamilyInfo { name: "lollipop", kind: "finite", params: "n (2..=3000)", notes: "clique on floor(n/2) plus a path" },
        FamilyInfo { name: "ray", kind: "infinite", params: "", notes: "half-infinite path" },
        FamilyInfo { name: "line", kind: "infinite", params: "", notes: "two-sided infinite path" },
        FamilyInfo { name: "lattice", kind: "infinite", params: "d (1..=3)", notes: "integer lattice; d=1 is the line" },
        FamilyInfo { name: "regular-tree", kind: "infinite", params: "d (3..=16)", notes: "" },
        FamilyInfo { name: "infinite-lollipop", kind: "infinite", params: "n (2..)", notes: "clique on floor(n/2) plus an infinite path" },
        FamilyInfo { name: "star-ray", kind: "infinite", params: "k (1..)", notes: "k-leaf star continuing into a ray" },
        FamilyInfo { name: "multiscale-lollipop", kind: "infinite", params: "none | blocks | explicit orders", notes: "chain of growing lollipop blocks" },
    ]
}
