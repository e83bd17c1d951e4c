//! Seeded single-walk engine.
//!
//! A walk is driven by a [`WalkPlan`] (stop rule plus what to record) over a
//! [`WalkSpace`] — a per-replicate navigation-and-visited-set structure
//! chosen per family:
//!
//! * finite graphs: dense ids with a `Vec<bool>` visited table;
//! * regular trees: a grow-as-you-go arena (see [`TreeSpace`]) — tree walks
//!   reach depths where any fixed id packing would overflow, but on a tree a
//!   vertex is new exactly when its parent edge is traversed for the first
//!   time, so replicate-local node labels are enough;
//! * multiscale chains: per-block lazily allocated bitmap pages;
//! * ray / line / star-ray: a growable bitmap over their small dense ids;
//! * everything else (lattices): a hash set of ids.
//!
//! Reproducibility contract: replicate `i` of master seed `s` uses the
//! stream cipher rng seeded with [`replicate_seed`]`(s, i)`, independent of
//! thread count and schedule. All estimators in [`monte_carlo`] preserve
//! replicate order when reducing, so every reported number is a pure
//! function of `(graph, plan, master seed, replicate count)`.

pub mod monte_carlo;
pub mod packing;

use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle, VertexId};

// ---------------------------------------------------------------------------
// Seeds and caps
// ---------------------------------------------------------------------------

/// Default per-replicate step cap (overridable via [`STEP_CAP_ENV`]).
pub const DEFAULT_STEP_CAP: u64 = 1_000_000_000;

/// Environment variable that overrides the per-replicate step cap.
pub const STEP_CAP_ENV: &str = "RANGE_LAB_STEP_CAP";

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-replicate seed: a splitmix64 hash of the master seed and the
/// replicate index. Changing either changes the seed; replicate seeds for a
/// fixed master are pairwise distinct for any practical replicate count.
pub fn replicate_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Step cap from the [`STEP_CAP_ENV`] environment variable, falling back
/// to [`DEFAULT_STEP_CAP`] when unset or unparsable.
pub fn step_cap_from_env() -> u64 {
    std::env::var(STEP_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_STEP_CAP)
}

// ---------------------------------------------------------------------------
// Plans and outcomes
// ---------------------------------------------------------------------------

/// When a single walk stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopRule {
    /// Stop after exactly `t` steps.
    Horizon(u64),
    /// Stop the moment the `n`-th distinct vertex is occupied.
    TargetRange(u64),
}

/// What one walk should do and record.
#[derive(Clone, Debug)]
pub struct WalkPlan {
    pub stop: StopRule,
    /// Start vertex override; `None` walks from the graph's origin.
    pub start: Option<VertexId>,
    /// Ascending list of discovery counts `k` whose times `T_k` to record.
    pub record_discovery_counts: Vec<u64>,
    /// Ascending list of times `t` whose ranges `R_t` to record.
    pub record_range_at: Vec<u64>,
    /// Hard per-replicate step cap; hitting it censors the replicate.
    pub step_cap: u64,
}

impl WalkPlan {
    /// Plan that runs to a fixed horizon, recording nothing extra.
    pub fn horizon(t: u64) -> Self {
        WalkPlan {
            stop: StopRule::Horizon(t),
            start: None,
            record_discovery_counts: Vec::new(),
            record_range_at: Vec::new(),
            step_cap: step_cap_from_env(),
        }
    }

    /// Plan that runs until `n` vertices are discovered.
    pub fn target_range(n: u64) -> Self {
        WalkPlan {
            stop: StopRule::TargetRange(n),
            start: None,
            record_discovery_counts: Vec::new(),
            record_range_at: Vec::new(),
            step_cap: step_cap_from_env(),
        }
    }

    /// Same plan, walking from `v` instead of the origin.
    pub fn from_start(mut self, v: VertexId) -> Self {
        self.start = Some(v);
        self
    }

    /// Check internal consistency (orderings, caps, reachability of stops).
    pub fn validate(&self) -> Result<()> {
        if self.step_cap == 0 {
            return Err(Error::InvalidArgument("step cap must be positive".into()));
        }
        let ascending =
            |xs: &[u64]| xs.windows(2).all(|w| w[0] < w[1]);
        if !ascending(&self.record_discovery_counts) || !ascending(&self.record_range_at) {
            return Err(Error::InvalidArgument(
                "recording grids must be strictly ascending".into(),
            ));
        }
        if let Some(&k) = self.record_discovery_counts.first() {
            if k == 0 {
                return Err(Error::InvalidArgument(
                    "discovery counts are 1-based; k = 0 is meaningless".into(),
                ));
            }
        }
        match self.stop {
            StopRule::Horizon(t) => {
                if t > self.step_cap {
                    return Err(Error::InvalidArgument(format!(
                        "horizon {t} exceeds the step cap {}",
                        self.step_cap
                    )));
                }
                if let Some(&last) = self.record_range_at.last() {
                    if last > t {
                        return Err(Error::InvalidArgument(format!(
                            "range recording time {last} is past the horizon {t}"
                        )));
                    }
                }
            }
            StopRule::TargetRange(n) => {
                if n == 0 {
                    return Err(Error::InvalidArgument("target range must be >= 1".into()));
                }
                if let Some(&last) = self.record_discovery_counts.last() {
                    if last > n {
                        return Err(Error::InvalidArgument(format!(
                            "discovery count {last} is past the target range {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Everything one replicate produced.
#[derive(Clone, Debug)]
pub struct WalkOutcome {
    /// The replicate's own rng seed.
    pub seed: u64,
    /// `T_k` for each requested `k` (`None` if the walk was censored first).
    pub discovery_times: Vec<Option<u64>>,
    /// `R_t` for each requested `t` (value at the censoring time if cut short).
    pub ranges: Vec<u64>,
    /// Time at which the walk stopped.
    pub final_time: u64,
    /// Number of distinct vertices occupied by `final_time`.
    pub final_range: u64,
    /// Whether the step cap fired before the stop rule was satisfied.
    pub censored: bool,
}

// ---------------------------------------------------------------------------
// Walk spaces
// ---------------------------------------------------------------------------

/// Per-replicate navigation structure: position handles, degrees, and
/// first-visit detection. Implementations own their visited state.
pub trait WalkSpace {
    /// Start state, freshly marked visited. `None` means the graph's origin;
    /// overrides must be validated by the caller (see
    /// [`monte_carlo::run_replicates`]).
    fn reset(&mut self, start: Option<u64>) -> u64;
    /// Degree of the current state.
    fn degree(&self, state: u64) -> usize;
    /// Traverse the `k`-th edge; returns the new state and whether the
    /// landed-on vertex is newly visited.
    fn step(&mut self, state: u64, k: usize) -> (u64, bool);
}

/// Dense visited table over a finite graph.
struct FiniteSpace {
    g: GraphHandle,
    visited: Vec<bool>,
}

impl WalkSpace for FiniteSpace {
    fn reset(&mut self, start: Option<u64>) -> u64 {
        self.visited.iter_mut().for_each(|v| *v = false);
        let o = start.unwrap_or_else(|| self.g.origin().0);
        self.visited[o as usize] = true;
        o
    }

    fn degree(&self, state: u64) -> usize {
        self.g.degree_unchecked(VertexId(state))
    }

    fn step(&mut self, state: u64, k: usize) -> (u64, bool) {
        let w = self.g.neighbor_at_unchecked(VertexId(state), k).0;
        let fresh = !std::mem::replace(&mut self.visited[w as usize], true);
        (w, fresh)
    }
}

/// Hash-set visited tracking over any lazy oracle (used for lattices).
struct OracleSpace {
    g: GraphHandle,
    visited: std::collections::HashSet<u64>,
}

impl WalkSpace for OracleSpace {
    fn reset(&mut self, start: Option<u64>) -> u64 {
        self.visited.clear();
        let o = start.unwrap_or_else(|| self.g.origin().0);
        self.visited.insert(o);
        o
    }

    fn degree(&self, state: u64) -> usize {
        self.g.degree_unchecked(VertexId(state))
    }

    fn step(&mut self, state: u64, k: usize) -> (u64, bool) {
        let w = self.g.neighbor_at_unchecked(VertexId(state), k).0;
        let fresh = self.visited.insert(w);
        (w, fresh)
    }
}

/// Growable bitmap over small dense ids (ray, line, star-ray).
struct BitmapSpace {
    g: GraphHandle,
    visited: Vec<bool>,
}

impl BitmapSpace {
    fn mark(&mut self, id: u64) -> bool {
        let idx = id as usize;
        if idx >= self.visited.len() {
            self.visited.resize((idx + 1).next_power_of_two(), false);
        }
        !std::mem::replace(&mut self.visited[idx], true)
    }
}

impl WalkSpace for BitmapSpace {
    fn reset(&mut self, start: Option<u64>) -> u64 {
        self.visited.iter_mut().for_each(|v| *v = false);
        let o = start.unwrap_or_else(|| self.g.origin().0);
        self.mark(o);
        o
    }

    fn degree(&self, state: u64) -> usize {
        self.g.degree_unchecked(VertexId(state))
    }

    fn step(&mut self, state: u64, k: usize) -> (u64, bool) {
        let w = self.g.neighbor_at_unchecked(VertexId(state), k).0;
        let fresh = self.mark(w);
        (w, fresh)
    }
}

/// Per-block bitmap pages for multiscale chains (ids are `(block << 32) | i`).
struct PagedSpace {
    g: GraphHandle,
    pages: Vec<Vec<bool>>,
}

impl PagedSpace {
    fn mark(&mut self, id: u64) -> bool {
        let block = (id >> 32) as usize;
        let index = (id & 0xFFFF_FFFF) as usize;
        if block >= self.pages.len() {
            self.pages.resize_with(block + 1, Vec::new);
        }
        let page = &mut self.pages[block];
        if index >= page.len() {
            page.resize((index + 1).next_power_of_two(), false);
        }
        !std::mem::replace(&mut page[index], true)
    }
}

impl WalkSpace for PagedSpace {
    fn reset(&mut self, start: Option<u64>) -> u64 {
        for page in &mut self.pages {
            page.iter_mut().for_each(|v| *v = false);
        }
        let o = start.unwrap_or_else(|| self.g.origin().0);
        self.mark(o);
        o
    }

    fn degree(&self, state: u64) -> usize {
        self.g.degree_unchecked(VertexId(state))
    }

    fn step(&mut self, state: u64, k: usize) -> (u64, bool) {
        let w = self.g.neighbor_at_unchecked(VertexId(state), k).0;
        let fresh = self.mark(w);
        (w, fresh)
    }
}

/// Arena navigator for the infinite `d`-regular tree.
///
/// Node 0 is the start; every node stores `d` neighbor slots (slot 0 of a
/// non-root node is its parent). A slot is populated the first time its edge
/// is traversed, which on a tree happens exactly at the target's first visit.
pub struct TreeSpace {
    degree: usize,
    slots: Vec<u32>, // d slots per node; u32::MAX = not yet traversed
}

const UNALLOCATED: u32 = u32::MAX;

impl TreeSpace {
    fn new(degree: usize, capacity_hint: usize) -> Self {
        let mut slots = Vec::with_capacity((capacity_hint.min(1 << 20) + 1) * degree);
        slots.resize(degree, UNALLOCATED);
        TreeSpace { degree, slots }
    }
}

impl WalkSpace for TreeSpace {
    // Tree states are replicate-local labels, so a start override has no
    // meaning here; by vertex-transitivity every start is equivalent to the
    // origin, and the caller rejects explicit non-origin overrides.
    fn reset(&mut self, _start: Option<u64>) -> u64 {
        self.slots.clear();
        self.slots.resize(self.degree, UNALLOCATED);
        0
    }

    fn degree(&self, _state: u64) -> usize {
        self.degree
    }

    fn step(&mut self, state: u64, k: usize) -> (u64, bool) {
        let slot = state as usize * self.degree + k;
        let target = self.slots[slot];
        if target != UNALLOCATED {
            return (target as u64, false);
        }
        let node = (self.slots.len() / self.degree) as u32;
        assert!(node != u32::MAX, "tree arena exhausted the u32 node space");
        self.slots.extend(std::iter::repeat_n(UNALLOCATED, self.degree));
        // Wire both directions: slot k of `state`, slot 0 (parent) of `node`.
        self.slots[slot] = node;
        self.slots[node as usize * self.degree] = state as u32;
        (node as u64, true)
    }
}

/// Choose the right space for a graph.
pub fn make_space(g: &GraphHandle, capacity_hint: usize) -> Box<dyn WalkSpace> {
    if let Some(fin) = g.finite() {
        return Box::new(FiniteSpace { g: g.clone(), visited: vec![false; fin.vertex_count()] });
    }
    match g.family() {
        Family::RegularTree => {
            Box::new(TreeSpace::new(g.meta().params[0] as usize, capacity_hint))
        }
        Family::MultiScale => Box::new(PagedSpace { g: g.clone(), pages: Vec::new() }),
        Family::Ray | Family::Line => {
            Box::new(BitmapSpace { g: g.clone(), visited: Vec::new() })
        }
        // Star-ray and lollipop ids are dense but start at 0..k with k as
        // large as 2^31; a bitmap is only safe when that prefix is small.
        Family::StarRay | Family::InfiniteLollipop if g.meta().params[0] <= 10_000_000 => {
            Box::new(BitmapSpace { g: g.clone(), visited: Vec::new() })
        }
        _ => Box::new(OracleSpace { g: g.clone(), visited: std::collections::HashSet::new() }),
    }
}

// ---------------------------------------------------------------------------
// The walk loop
// ---------------------------------------------------------------------------

/// Drive one walk to its stop rule (or the step cap), recording what the
/// plan asks for. The plan must have been validated.
pub fn run_walk(space: &mut dyn WalkSpace, rng: &mut ChaCha8Rng, seed: u64, plan: &WalkPlan) -> WalkOutcome {
    let mut state = space.reset(plan.start.map(|v| v.0));
    let mut time: u64 = 0;
    let mut range: u64 = 1;

    let mut discovery_times: Vec<Option<u64>> =
        vec![None; plan.record_discovery_counts.len()];
    let mut ranges: Vec<u64> = Vec::with_capacity(plan.record_range_at.len());
    let mut next_discovery = 0usize;
    let mut next_range = 0usize;
    // T_1 = 0 if requested.
    while next_discovery < plan.record_discovery_counts.len()
        && plan.record_discovery_counts[next_discovery] <= range
    {
        discovery_times[next_discovery] = Some(0);
        next_discovery += 1;
    }

    let done = |time: u64, range: u64| match plan.stop {
        StopRule::Horizon(t) => time >= t,
        StopRule::TargetRange(n) => range >= n,
    };

    let mut censored = false;
    loop {
        while next_range < plan.record_range_at.len()
            && plan.record_range_at[next_range] == time
        {
            ranges.push(range);
            next_range += 1;
        }
        if done(time, range) {
            break;
        }
        if time >= plan.step_cap {
            censored = true;
            // Back-fill any outstanding range recordings with the censored value.
            while next_range < plan.record_range_at.len() {
                ranges.push(range);
                next_range += 1;
            }
            break;
        }
        let deg = space.degree(state);
        let k = rng.random_range(0..deg as u32) as usize;
        let (next_state, fresh) = space.step(state, k);
        state = next_state;
        time += 1;
        if fresh {
            range += 1;
            if next_discovery < plan.record_discovery_counts.len()
                && plan.record_discovery_counts[next_discovery] == range
            {
                discovery_times[next_discovery] = Some(time);
                next_discovery += 1;
            }
        }
    }

    WalkOutcome { seed, discovery_times, ranges, final_time: time, final_range: range, censored }
}

/// Run replicate `index` of the plan on a fresh space.
pub fn run_replicate(g: &GraphHandle, plan: &WalkPlan, master_seed: u64, index: u64) -> WalkOutcome {
    let seed = replicate_seed(master_seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hint = match plan.stop {
        StopRule::Horizon(t) => (t / 2) as usize,
        StopRule::TargetRange(_) => 1 << 16,
    };
    let mut space = make_space(g, hint.max(64));
    run_walk(space.as_mut(), &mut rng, seed, plan)
}
