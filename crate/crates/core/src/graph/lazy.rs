//! Neighbor oracles for the infinite catalog families.
//!
//! Id packings (only equality/order is part of the public contract):
//!
//! * `ray`: vertex `i` at distance `i` from the origin is id `i`.
//! * `line`: integer `x` is zig-zag encoded (`0, -1, 1, -2, 2, ...` map to
//!   `0, 1, 2, 3, 4, ...`).
//! * `lattice(d)`: each coordinate is zig-zag encoded into a fixed-width
//!   field (32 bits for `d = 2`, 21 bits for `d = 3`).
//! * `regular-tree(d)`: two `(d-1)`-ary heaps glued at their roots; a heap
//!   position `h >= 1` on side `s` is id `(h << 1) | s`.
//! * `infinite-lollipop(n)`: clique vertices `0..q`, then path vertices
//!   `q, q+1, ...` (ids are contiguous, so the attachment `q-1` is the
//!   predecessor of the first path vertex).
//! * `star-ray(k)`: center `0`, leaves `1..=k`, ray continuing `k+1, k+2, ...`
//!   from leaf `k`.

use crate::graph::{NeighborOracle, VertexId};

// ---------------------------------------------------------------------------
// Integer coding helpers
// ---------------------------------------------------------------------------

#[inline]
pub(crate) fn zigzag_encode(x: i64) -> u64 {
    ((x << 1) ^ (x >> 63)) as u64
}

#[inline]
pub(crate) fn zigzag_decode(z: u64) -> i64 {
    ((z >> 1) as i64) ^ -((z & 1) as i64)
}

// ---------------------------------------------------------------------------
// Ray
// ---------------------------------------------------------------------------

/// The half-infinite path `0 - 1 - 2 - ...`.
pub struct Ray;

impl NeighborOracle for Ray {
    fn contains(&self, _v: VertexId) -> bool {
        true
    }

    fn degree(&self, v: VertexId) -> usize {
        if v.0 == 0 {
            1
        } else {
            2
        }
    }

    fn neighbor_at(&self, v: VertexId, k: usize) -> VertexId {
        match (v.0, k) {
            (0, 0) => VertexId(1),
            (x, 0) => VertexId(x - 1),
            (x, 1) => VertexId(x + 1),
            _ => unreachable!("neighbor index {k} out of range on ray"),
        }
    }
}

// ---------------------------------------------------------------------------
// Line
// ---------------------------------------------------------------------------

/// The two-sided infinite path over the integers.
pub struct Line;

impl NeighborOracle for Line {
    fn contains(&self, _v: VertexId) -> bool {
        true
    }

    fn degree(&self, _v: VertexId) -> usize {
        2
    }

    fn neighbor_at(&self, v: VertexId, k: usize) -> VertexId {
        let x = zigzag_decode(v.0);
        let mut ids = [zigzag_encode(x - 1), zigzag_encode(x + 1)];
        ids.sort_unstable();
        VertexId(ids[k])
    }
}

// ---------------------------------------------------------------------------
// Lattice
// ---------------------------------------------------------------------------

/// The nearest-neighbor lattice on `Z^d`, `d` in `{2, 3}`.
///
/// Coordinates live in a fixed-width field (`|x| < 2^31` for `d = 2`,
/// `|x| < 2^20` for `d = 3`). A walk or ball would need to travel that far in
/// a straight line to leave the range, at which point neighbor expansion
/// panics; with the default step caps this is unreachable.
pub struct Lattice {
    dim: usize,
    width: u32,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        let width = match dim {
            2 => 32,
            3 => 21,
            _ => panic!("lattice dimension must be 2 or 3"),
        };
        Lattice { dim, width }
    }

    fn decode(&self, v: VertexId) -> Vec<i64> {
        let mask = if self.width == 64 { u64::MAX } else { (1u64 << self.width) - 1 };
        (0..self.dim)
            .map(|i| zigzag_decode((v.0 >> (i as u32 * self.width)) & mask))
            .collect()
    }

    fn encode(&self, coords: &[i64]) -> u64 {
        let half = 1i64 << (self.width - 1);
        let mut id = 0u64;
        for (i, &x) in coords.iter().enumerate() {
            assert!(
                -half <= x && x < half,
                "lattice coordinate {x} outside the supported range (width {} bits)",
                self.width
            );
            id |= zigzag_encode(x) << (i as u32 * self.width);
        }
        id
    }

    fn neighbor_ids(&self, v: VertexId) -> Vec<u64> {
        let coords = self.decode(v);
        let mut ids = Vec::with_capacity(2 * self.dim);
        let mut scratch = coords.clone();
        for i in 0..self.dim {
            for delta in [-1i64, 1] {
                scratch[i] = coords[i] + delta;
                ids.push(self.encode(&scratch));
            }
            scratch[i] = coords[i];
        }
        ids.sort_unstable();
        ids
    }
}

impl NeighborOracle for Lattice {
    fn contains(&self, v: VertexId) -> bool {
        let used = self.dim as u32 * self.width;
        used >= 64 || (v.0 >> used) == 0
    }

    fn degree(&self, _v: VertexId) -> usize {
        2 * self.dim
    }

    fn neighbor_at(&self, v: VertexId, k: usize) -> VertexId {
        VertexId(self.neighbor_ids(v)[k])
    }
}

// ---------------------------------------------------------------------------
// Regular tree
// ---------------------------------------------------------------------------

/// The infinite `d`-regular tree, `d >= 3`.
///
/// Two `(d-1)`-ary heaps are glued at their roots: heap position `h >= 1` on
/// side `s` has children `(h-1)(d-1) + 2 + c` for `c < d-1` (the root) or
/// `c < d-1` with one slot taken by the parent `(h-2)/(d-1) + 1` (internal
/// vertices). Ids deeper than 62 bits of heap position are out of range; the
/// ball cap keeps exact computations far away from that depth, and the walk
/// engine navigates trees through its own arena rather than this oracle.
pub struct RegularTree {
    degree: u64,
}

impl RegularTree {
    pub fn new(degree: u64) -> Self {
        assert!(degree >= 3, "regular tree degree must be at least 3");
        RegularTree { degree }
    }
}

const TREE_HEAP_CAP: u64 = u64::MAX >> 1;

impl NeighborOracle for RegularTree {
    fn contains(&self, v: VertexId) -> bool {
        (v.0 >> 1) >= 1
    }

    fn degree(&self, _v: VertexId) -> usize {
        self.degree as usize
    }

    fn neighbor_at(&self, v: VertexId, k: usize) -> VertexId {
        let h = v.0 >> 1;
        let s = v.0 & 1;
        let d = self.degree;
        if h == 1 {
            // Root: the cross edge to the other heap's root sorts first.
            if k == 0 {
                return VertexId((1 << 1) | (1 - s));
            }
            let child = 2 + (k as u64 - 1);
            return VertexId((child << 1) | s);
        }
        if k == 0 {
            let parent = (h - 2) / (d - 1) + 1;
            return VertexId((parent << 1) | s);
        }
        let child = (h - 1)
            .checked_mul(d - 1)
            .and_then(|x| x.checked_add(2 + (k as u64 - 1)))
            .filter(|&c| c <= TREE_HEAP_CAP)
            .expect("regular-tree vertex too deep for the id encoding");
        VertexId((child << 1) | s)
    }
}

// ---------------------------------------------------------------------------
// Infinite lollipop
// ---------------------------------------------------------------------------

/// A clique on `q = floor(n/2)` vertices with a one-ended infinite path
/// attached at clique vertex `q - 1`.
pub struct InfiniteLollipop {
    q: u64,
}

impl InfiniteLollipop {
    pub fn new(n: u64) -> Self {
        assert!(n >= 2, "infinite lollipop needs n >= 2");
        InfiniteLollipop { q: n / 2 }
    }
}

impl NeighborOracle for InfiniteLollipop {
    fn contains(&self, _v: VertexId) -> bool {
        true
    }

    fn degree(&self, v: VertexId) -> usize {
        let q = self.q;
        if v.0 < q {
            (q - 1) as usize + usize::from(v.0 == q - 1)
        } else {
            2
        }
    }

    fn neighbor_at(&self, v: VertexId, k: usize) -> VertexId {
        let q = self.q;
        let k = k as u64;
        if v.0 < q {
            // Clique vertex: neighbors are the other clique vertices, plus the
            // first path vertex when this is the attachment q-1.
            if k < v.0 {
                VertexId(k)
            } else if k + 1 < q {
                VertexId(k + 1)
            } else {
                debug_assert_eq!(v.0, q - 1);
                VertexId(q)
            }
        } else {
            // Path vertex: ids are contiguous through the attachment, so the
            // downhill neighbor is always v-1.
            VertexId(if k == 0 { v.0 - 1 } else { v.0 + 1 })
        }
    }
}

// ---------------------------------------------------------------------------
// Star-ray
// ---------------------------------------------------------------------------

/// A star with `k` leaves whose last leaf continues into an infinite ray.
pub struct StarRay {
    k: u64,
}

impl StarRay {
    pub fn new(k: u64) -> Self {
        assert!(k >= 1, "star-ray needs at least one leaf");
        StarRay { k }
    }
}

impl NeighborOracle for StarRay {
    fn contains(&self, _v: VertexId) -> bool {
        true
    }

    fn degree(&self, v: VertexId) -> usize {
        let k = self.k;
        match v.0 {
            0 => k as usize,
            x if x < k => 1,
            x if x == k => 2,
            _ => 2,
        }
    }

    fn neighbor_at(&self, v: VertexId, k_idx: usize) -> VertexId {
        let k = self.k;
        match v.0 {
            0 => VertexId(k_idx as u64 + 1),
            x if x < k => VertexId(0),
            x if x == k => VertexId(if k_idx == 0 { 0 } else { k + 1 }),
            x => VertexId(if k_idx == 0 { x - 1 } else { x + 1 }),
        }
    }
}
