//! Randomized structural invariants: the exact bounds hold on arbitrary
//! small connected graphs, coarse profiles are monotone, estimated curves
//! respect pathwise constraints, and grid builders keep their contracts.

use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use range_lab_core::bounds::{self, fit, Verdict};
use range_lab_core::coarse;
use range_lab_core::exact::enumerate;
use range_lab_core::graph::{catalog, FiniteGraph, GraphHandle};
use range_lab_core::walk::monte_carlo::{
    estimate_discovery_times, estimate_range_curve, MonteCarlo,
};
use range_lab_core::walk::DEFAULT_STEP_CAP;
use std::time::Duration;

/// Random connected graph: a uniform random recursive tree plus a few
/// random chords, built deterministically from the seed.
fn random_connected_graph(seed: u64, n: usize, extra: usize) -> GraphHandle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![Vec::<u32>::new(); n];
    for i in 1..n {
        let p = rng.random_range(0..i);
        adj[i].push(p as u32);
        adj[p].push(i as u32);
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b && !adj[a].contains(&(b as u32)) {
            adj[a].push(b as u32);
            adj[b].push(a as u32);
        }
    }
    let fin = FiniteGraph::from_adjacency(adj, 0).expect("construction is valid");
    enumerate::as_handle(fin, 0)
}

const INFINITE_FAMILIES: &[(&str, &[u64])] = &[
    ("ray", &[]),
    ("line", &[]),
    ("regular-tree", &[3]),
    ("infinite-lollipop", &[8]),
    ("star-ray", &[4]),
    ("multiscale-lollipop", &[]),
    ("lattice", &[2]),
];

proptest! {
    /// The adjacent-pair hitting bound holds on arbitrary connected graphs.
    #[test]
    fn neighbor_bound_on_random_graphs(seed: u64, n in 2usize..=8, extra in 0usize..=8) {
        let g = random_connected_graph(seed, n, extra);
        let report = bounds::check_neighbor_hit(&g).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Holds);
    }

    /// The escape bound holds from every start inside a random connected
    /// subset of a random connected graph.
    #[test]
    fn escape_bound_on_random_subsets(seed: u64, n in 3usize..=8, extra in 0usize..=8) {
        let g = random_connected_graph(seed, n, extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5E7);
        // A connected subset: vertices 0..k of the recursive tree (every
        // vertex attaches to an earlier one, so each prefix is connected).
        let k = rng.random_range(1..n);
        let s: Vec<_> = (0..k as u64).map(range_lab_core::VertexId).collect();
        let x = s[rng.random_range(0..s.len())];
        let report = bounds::check_escape(&g, &s, x).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Holds);
    }

    /// Coarse profiles are monotone: the subgraph-density proxy f never
    /// decreases with the set size, the growth floor g never decreases with
    /// the radius, and a single vertex always has unit volume.
    #[test]
    fn coarse_profiles_are_monotone(idx in 0usize..INFINITE_FAMILIES.len(), n_max in 2u64..=10) {
        let (f, p) = INFINITE_FAMILIES[idx];
        let g = catalog::build(f, p).unwrap();
        let profile = coarse::build_profile(&g, n_max, Duration::from_secs(10)).unwrap();
        let f_values: Vec<u64> = profile.f.values().map(|v| v.value).collect();
        prop_assert!(f_values.windows(2).all(|w| w[0] <= w[1]),
            "f must be nondecreasing on {}: {f_values:?}", g.label());
        let g_values: Vec<u64> = profile.g.values().map(|v| v.value).collect();
        prop_assert!(g_values.windows(2).all(|w| w[0] <= w[1]),
            "g must be nondecreasing on {}: {g_values:?}", g.label());
        prop_assert_eq!(profile.g[&0].value, 1);
        prop_assert!(g_values.iter().all(|&v| v >= 1), "ball volumes are at least 1");
    }

    /// Estimated range curves respect the pathwise constraints: at most
    /// t+1 vertices in t steps, and nondecreasing along the time grid
    /// (the estimator reads one trajectory per replicate at every grid
    /// point, so monotonicity survives averaging).
    #[test]
    fn range_curves_respect_pathwise_constraints(
        seed: u64,
        idx in 0usize..INFINITE_FAMILIES.len(),
        mut times in proptest::collection::vec(1u64..3000, 1..5),
    ) {
        times.sort_unstable();
        times.dedup();
        let (f, p) = INFINITE_FAMILIES[idx];
        let g = catalog::build(f, p).unwrap();
        let mc = MonteCarlo { replicates: 30, master_seed: seed };
        let points = estimate_range_curve(&g, &times, mc, DEFAULT_STEP_CAP).unwrap();
        for pt in &points {
            prop_assert_eq!(pt.estimate.censored, 0);
            prop_assert!(pt.estimate.mean >= 1.0 && pt.estimate.mean <= pt.at as f64 + 1.0,
                "range at t={} is {}", pt.at, pt.estimate.mean);
        }
        prop_assert!(points.windows(2).all(|w| w[0].estimate.mean <= w[1].estimate.mean));
    }

    /// Discovery-time estimates grow with the target count, start at zero
    /// for the already-visited origin, and are never censored on infinite
    /// graphs under the default step cap.
    #[test]
    fn discovery_estimates_grow_with_target(
        seed: u64,
        idx in 0usize..INFINITE_FAMILIES.len(),
    ) {
        let (f, p) = INFINITE_FAMILIES[idx];
        let g = catalog::build(f, p).unwrap();
        let mc = MonteCarlo { replicates: 30, master_seed: seed };
        let grid = [1u64, 2, 5, 12];
        let points = estimate_discovery_times(&g, &grid, mc, DEFAULT_STEP_CAP).unwrap();
        prop_assert_eq!(points[0].estimate.mean, 0.0);
        prop_assert_eq!(points[0].estimate.std_error, 0.0);
        for pt in &points {
            prop_assert_eq!(pt.estimate.censored, 0);
        }
        prop_assert!(points.windows(2).all(|w| w[0].estimate.mean <= w[1].estimate.mean));
    }

    /// Geometric time grids keep their contract: strictly increasing,
    /// anchored at both endpoints, and dense enough for the decade count.
    #[test]
    fn geometric_grids_are_well_formed(
        t_min in 2u64..=1000,
        decades in 1u32..=4,
        per_decade in 1u32..=24,
    ) {
        let t_max = t_min * 10u64.pow(decades);
        let grid = fit::geometric_grid(t_min, t_max, per_decade).unwrap();
        prop_assert_eq!(*grid.first().unwrap(), t_min);
        prop_assert_eq!(*grid.last().unwrap(), t_max);
        prop_assert!(grid.windows(2).all(|w| w[0] < w[1]), "strictly increasing: {grid:?}");
        prop_assert!(grid.len() as u32 >= decades.min(2));
    }
}
