//! Chains of lollipop blocks of growing order, used to probe how slowly a
//! walk can discover new vertices.
//!
//! Block `b` of order `n` is a clique on `q = floor(n/2)` vertices followed by
//! a path on the remaining `n - q` vertices; the clique's last vertex is the
//! attachment. The end of each block is joined by an edge to the origin (local
//! vertex 0) of the next block, and after the last block the chain continues
//! as a plain infinite ray so that the graph is genuinely infinite regardless
//! of how many block orders are listed.
//!
//! Ids pack as `(block << 32) | index`. The dyadic sequence uses orders
//! `2, 4, 8, ...` and is capped at 31 blocks (the spine of block 31 would sit
//! further from the origin than any supported walk or ball can reach).

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{NeighborOracle, VertexId};

/// Largest number of dyadic blocks the id packing supports.
pub const MAX_DYADIC_BLOCKS: u32 = 31;

/// Block-order schedule for a multiscale lollipop chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScaleSequence {
    /// Orders `2, 4, 8, ..., 2^blocks` (`blocks = None` means the maximum 31).
    Dyadic { blocks: Option<u32> },
    /// An explicit list of block orders.
    Explicit(Vec<u64>),
}

impl ScaleSequence {
    /// Check parameter ranges.
    pub fn validate(&self) -> Result<()> {
        match self {
            ScaleSequence::Dyadic { blocks: None } => Ok(()),
            ScaleSequence::Dyadic { blocks: Some(b) } => {
                if *b == 0 || *b > MAX_DYADIC_BLOCKS {
                    Err(Error::InvalidParams {
                        family: "multiscale-lollipop",
                        reason: format!("dyadic block count must be in 1..={MAX_DYADIC_BLOCKS}"),
                    })
                } else {
                    Ok(())
                }
            }
            ScaleSequence::Explicit(orders) => {
                if orders.is_empty() {
                    return Err(Error::InvalidParams {
                        family: "multiscale-lollipop",
                        reason: "scale list must not be empty".into(),
                    });
                }
                if orders.len() > 4096 {
                    return Err(Error::InvalidParams {
                        family: "multiscale-lollipop",
                        reason: "scale list is capped at 4096 blocks".into(),
                    });
                }
                for &n in orders {
                    if !(2..=1 << 31).contains(&n) {
                        return Err(Error::InvalidParams {
                            family: "multiscale-lollipop",
                            reason: format!("block order {n} outside 2..=2^31"),
                        });
                    }
                }
                Ok(())
            }
        }
    }

    /// Materialized block orders.
    pub fn orders(&self) -> Vec<u64> {
        match self {
            ScaleSequence::Dyadic { blocks } => {
                let b = blocks.unwrap_or(MAX_DYADIC_BLOCKS);
                (1..=b).map(|i| 1u64 << i).collect()
            }
            ScaleSequence::Explicit(orders) => orders.clone(),
        }
    }

    /// Whether this is a (possibly capped) dyadic schedule.
    pub fn is_dyadic(&self) -> bool {
        matches!(self, ScaleSequence::Dyadic { .. })
    }

    /// Short label: `dyadic`, `dyadic:12`, or the comma-joined order list.
    pub fn label(&self) -> String {
        match self {
            ScaleSequence::Dyadic { blocks: None } => "dyadic".to_string(),
            ScaleSequence::Dyadic { blocks: Some(b) } => format!("dyadic:{b}"),
            ScaleSequence::Explicit(orders) => {
                let parts: Vec<String> = orders.iter().map(|n| n.to_string()).collect();
                parts.join(",")
            }
        }
    }
}

impl Serialize for ScaleSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

pub struct MultiScale {
    orders: Vec<u64>,
}

impl MultiScale {
    pub fn new(seq: &ScaleSequence) -> Result<Self> {
        seq.validate()?;
        Ok(MultiScale { orders: seq.orders() })
    }

    #[inline]
    fn split(v: VertexId) -> (u64, u64) {
        (v.0 >> 32, v.0 & 0xFFFF_FFFF)
    }

    #[inline]
    fn id(block: u64, index: u64) -> VertexId {
        debug_assert!(index <= u32::MAX as u64);
        VertexId((block << 32) | index)
    }

    /// Id of the last vertex (path end) of real block `b`.
    fn end_of(&self, b: usize) -> VertexId {
        Self::id(b as u64, self.orders[b] - 1)
    }
}

impl NeighborOracle for MultiScale {
    fn contains(&self, v: VertexId) -> bool {
        let (b, j) = Self::split(v);
        let ext = self.orders.len() as u64;
        if b < ext {
            j < self.orders[b as usize]
        } else {
            b == ext // extension ray: every 32-bit index is a vertex
        }
    }

    fn degree(&self, v: VertexId) -> usize {
        let (b, j) = Self::split(v);
        let ext = self.orders.len() as u64;
        if b == ext {
            return 2; // extension ray, including its first vertex (linked back)
        }
        let n = self.orders[b as usize];
        let q = n / 2;
        if j < q {
            (q - 1) as usize + usize::from(j == q - 1) + usize::from(b > 0 && j == 0)
        } else {
            2 // interior path vertices and the end (which links onward)
        }
    }

    fn neighbor_at(&self, v: VertexId, k: usize) -> VertexId {
        let (b, j) = Self::split(v);
        let ext = self.orders.len() as u64;
        if b == ext {
            // Extension ray.
            return match (j, k) {
                (0, 0) => self.end_of(self.orders.len() - 1),
                (0, 1) => Self::id(b, 1),
                (x, 0) => Self::id(b, x - 1),
                (x, 1) => {
                    assert!(x < u32::MAX as u64, "extension ray vertex out of id range");
                    Self::id(b, x + 1)
                }
                _ => unreachable!("neighbor index {k} out of range"),
            };
        }
        let n = self.orders[b as usize];
        let q = n / 2;
        if j >= q {
            // Path vertex: ids are contiguous through the attachment q-1, so
            // the downhill neighbor is always index j-1.
            return match k {
                0 => Self::id(b, j - 1),
                _ if j + 1 < n => Self::id(b, j + 1),
                _ => Self::id(b + 1, 0), // block end links to the next origin
            };
        }
        // Clique vertex. Neighbors in ascending id order: the previous block's
        // end (only for index 0 of a non-first block), the other clique
        // vertices, then the first path vertex (only for the attachment q-1).
        let mut k = k as u64;
        if b > 0 && j == 0 {
            if k == 0 {
                return self.end_of(b as usize - 1);
            }
            k -= 1;
        }
        if k < j {
            Self::id(b, k)
        } else if k + 1 < q {
            Self::id(b, k + 1)
        } else {
            debug_assert_eq!(j, q - 1);
            Self::id(b, q)
        }
    }
}

// ---------------------------------------------------------------------------
// Origin ball profile
// ---------------------------------------------------------------------------

/// Number of vertices within distance `r` of the chain's origin, computed by
/// walking the spine block by block.
///
/// Block `b` places its local origin at spine distance `D_b`; its clique
/// mates (when the clique has at least two vertices) sit at `D_b + 1`, its
/// `p = n - q` path vertices at `D_b + a + 1 + i` where `a = 1` if the clique
/// is nontrivial, and the next block origin at `D_{b+1} = D_b + a + p + 1`.
pub fn origin_ball_size(orders: &[u64], r: u64) -> u64 {
    let mut count: u64 = 0;
    let mut spine: u64 = 0; // D_b
    for &n in orders {
        if spine > r {
            return count;
        }
        let q = n / 2;
        let p = n - q;
        let a = u64::from(q >= 2);
        count += 1; // block origin
        if q >= 2 && spine + 1 <= r {
            count += q - 1; // the other clique vertices, all at distance D_b + 1
        }
        let path_reach = (r - spine).saturating_sub(a); // how many path vertices fit
        count += path_reach.min(p);
        spine += a + p + 1;
    }
    if spine <= r {
        count += r - spine + 1; // extension ray
    }
    count
}
