//! Coarse geometric summaries of a graph: densest-subset edge counts,
//! minimal ball volumes, vertex boundaries, and the harmonic sums built
//! from them.
//!
//! Every numeric answer carries a provenance tag so downstream consumers
//! can tell certified values (closed form, exhaustive enumeration, full
//! finite sweep) apart from flagged ones (generic ceilings, truncated
//! minima over a core set). Flagged values are fine for exploration but
//! are refused wherever a certified inequality is being checked.

pub mod closed_forms;
pub mod densest;

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::time::Duration;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::enumerate::binomial;
use crate::graph::{ball, GraphHandle, VertexId};

pub use densest::{max_edges_subset, DensestResult, BNB_DEFAULT_BUDGET, BNB_VERTEX_CAP};

/// Largest subset size the exhaustive edge-density search accepts.
pub const F_ENUM_CAP: u64 = 16;
/// Largest finite graph that gets a full all-vertex ball sweep.
pub const G_SWEEP_VERTEX_CAP: usize = 20_000;
/// Work ceiling (sum of degrees touched) for boundary sweeps.
pub const BOUNDARY_WORK_CAP: u64 = 50_000_000;

// --- provenance ------------------------------------------------------------

/// How an edge-density value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FProvenance {
    /// Exhaustive branch-and-bound over all subsets of the given size.
    ExactEnumeration,
    /// A proven per-family formula.
    ClosedForm,
    /// The generic ceiling `C(n,2)`; flagged, not certified.
    UpperBound,
}

impl FProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            FProvenance::ExactEnumeration => "exact-enumeration",
            FProvenance::ClosedForm => "closed-form",
            FProvenance::UpperBound => "upper-bound",
        }
    }

    /// Certified values may feed inequality checks; flagged ones may not.
    pub fn is_certified(self) -> bool {
        !matches!(self, FProvenance::UpperBound)
    }
}

/// How a ball-volume value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GProvenance {
    /// Minimum over every vertex of a finite graph.
    ExactFinite,
    /// A proven per-family formula.
    ClosedForm,
    /// Minimum over a supplied core set only; an upper bound on the true
    /// minimum, flagged.
    TruncatedMin,
}

impl GProvenance {
    pub fn as_str(self) -> &'static str {
        match self {
            GProvenance::ExactFinite => "exact-finite",
            GProvenance::ClosedForm => "closed-form",
            GProvenance::TruncatedMin => "truncated-min",
        }
    }

    pub fn is_certified(self) -> bool {
        !matches!(self, GProvenance::TruncatedMin)
    }
}

/// An edge-density value `max |E(S)| : |S| = n`, with provenance and (when
/// enumeration produced one) the optimal subset.
#[derive(Clone, Debug)]
pub struct FValue {
    pub value: u64,
    pub witness: Option<Vec<VertexId>>,
    pub provenance: FProvenance,
}

/// A ball-volume value `min_x |B(x, r)|`, with provenance and (when a sweep
/// produced one) a minimizing center.
#[derive(Clone, Debug)]
pub struct GValue {
    pub value: u64,
    pub witness: Option<VertexId>,
    pub provenance: GProvenance,
}

/// Which vertices a ball-volume query minimizes over.
#[derive(Clone, Copy, Debug)]
pub enum GrowthScope<'a> {
    /// Every vertex; only possible on finite graphs.
    All,
    /// A caller-supplied core set; the result is a flagged upper bound.
    CoreSet(&'a [VertexId]),
    /// Use the per-family formula, or fail if there is none.
    ClosedForm,
}

// --- edge density ------------------------------------------------------------

/// Maximum induced edge count over vertex subsets of size `n`.
///
/// Resolution order: a proven per-family formula when one exists, then
/// exhaustive search (finite graphs, `n` at most [`F_ENUM_CAP`]) within
/// `budget`, and otherwise the flagged generic ceiling `C(n,2)`.
pub fn edge_density_f(g: &GraphHandle, n: u64, budget: Duration) -> Result<FValue> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "edge density needs a subset size of at least 1".into(),
        ));
    }
    if let Some(fin) = g.finite() {
        if n > fin.vertex_count() as u64 {
            return Err(Error::InvalidArgument(format!(
                "subset size {n} exceeds the {} vertices available",
                fin.vertex_count()
            )));
        }
    }
    if let Some(value) = closed_forms::f_closed(g, n) {
        return Ok(FValue { value, witness: None, provenance: FProvenance::ClosedForm });
    }
    if let Some(fin) = g.finite() {
        if n <= F_ENUM_CAP && fin.vertex_count() <= BNB_VERTEX_CAP {
            let res = max_edges_subset(fin, n as usize, budget)?;
            let witness =
                res.witness.iter().map(|&v| fin.source_id(v as usize)).collect();
            return Ok(FValue {
                value: res.edges,
                witness: Some(witness),
                provenance: FProvenance::ExactEnumeration,
            });
        }
    }
    Ok(FValue {
        value: binomial(n, 2),
        witness: None,
        provenance: FProvenance::UpperBound,
    })
}

// --- ball volumes ------------------------------------------------------------

/// Minimal ball volume `min |B(x, r)|` over the requested scope.
pub fn volume_growth_g(g: &GraphHandle, r: u64, scope: GrowthScope) -> Result<GValue> {
    match scope {
        GrowthScope::ClosedForm => match closed_forms::g_closed(g, r) {
            Some(value) => {
                Ok(GValue { value, witness: None, provenance: GProvenance::ClosedForm })
            }
            None => Err(Error::MissingCoarseValue { kind: "g", index: r }),
        },
        GrowthScope::All => {
            let fin = g.finite().ok_or(Error::NotFinite {
                op: "minimizing ball volume over every vertex",
            })?;
            let mut best: Option<(u64, VertexId)> = None;
            for v in 0..fin.vertex_count() {
                let size = ball_size_finite(fin, v, r);
                if best.map_or(true, |(b, _)| size < b) {
                    best = Some((size, fin.source_id(v)));
                }
            }
            let (value, witness) = best.ok_or(Error::InvalidArgument(
                "ball volume minimum over an empty graph".into(),
            ))?;
            Ok(GValue {
                value,
                witness: Some(witness),
                provenance: GProvenance::ExactFinite,
            })
        }
        GrowthScope::CoreSet(set) => {
            if set.is_empty() {
                return Err(Error::InvalidArgument(
                    "ball volume minimum over an empty core set".into(),
                ));
            }
            let mut best: Option<(u64, VertexId)> = None;
            for &x in set {
                let size = ball(g, x, r)?.len() as u64;
                if best.map_or(true, |(b, _)| size < b) {
                    best = Some((size, x));
                }
            }
            let (value, witness) = best.expect("non-empty core set");
            Ok(GValue {
                value,
                witness: Some(witness),
                provenance: GProvenance::TruncatedMin,
            })
        }
    }
}

fn ball_size_finite(fin: &crate::graph::FiniteGraph, v: usize, r: u64) -> u64 {
    fin.distances_from(v)
        .iter()
        .filter(|&&d| d != u32::MAX && d as u64 <= r)
        .count() as u64
}

// --- boundary ------------------------------------------------------------

/// Vertex boundary of a set: vertices outside it adjacent to it. Returns
/// `(boundary size, set size, ratio)`.
pub fn boundary_ratio(g: &GraphHandle, set: &[VertexId]) -> Result<(u64, u64, f64)> {
    if set.is_empty() {
        return Err(Error::InvalidArgument(
            "boundary of an empty set is undefined".into(),
        ));
    }
    let inside: HashSet<VertexId> = set.iter().copied().collect();
    let mut outside: HashSet<VertexId> = HashSet::new();
    let mut work: u64 = 0;
    for &x in &inside {
        if !g.contains(x) {
            return Err(Error::VertexNotInGraph(x));
        }
        let deg = g.degree(x)?;
        work += deg as u64;
        if work > BOUNDARY_WORK_CAP {
            return Err(Error::WorkCapExceeded { units: work as u128, cap: BOUNDARY_WORK_CAP as u128 });
        }
        for k in 0..deg {
            let y = g.neighbor_at_unchecked(x, k);
            if !inside.contains(&y) {
                outside.insert(y);
            }
        }
    }
    let b = outside.len() as u64;
    let s = inside.len() as u64;
    Ok((b, s, b as f64 / s as f64))
}

// --- profiles ------------------------------------------------------------

/// A table of edge-density and ball-volume values for one graph, ready to
/// be summed, checked, or serialized.
#[derive(Clone, Debug)]
pub struct CoarseProfile {
    pub label: String,
    pub f: BTreeMap<u64, FValue>,
    pub g: BTreeMap<u64, GValue>,
}

impl CoarseProfile {
    /// `sum_{r < n} 1 / g(r)`, requiring every needed radius to be present.
    pub fn harmonic_sum(&self, n: u64) -> Result<f64> {
        let mut total = 0.0;
        for r in 0..n {
            let gv = self
                .g
                .get(&r)
                .ok_or(Error::MissingCoarseValue { kind: "g", index: r })?;
            total += 1.0 / gv.value as f64;
        }
        Ok(total)
    }

    /// The stored edge-density value for `n`, if present.
    pub fn f_at(&self, n: u64) -> Option<&FValue> {
        self.f.get(&n)
    }

    /// True when any stored ball volume is merely a truncated minimum.
    pub fn has_flagged_g(&self, n: u64) -> bool {
        (0..n).any(|r| {
            self.g
                .get(&r)
                .map_or(false, |gv| !gv.provenance.is_certified())
        })
    }
}

impl Serialize for CoarseProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct FRows<'a>(&'a BTreeMap<u64, FValue>);
        impl Serialize for FRows<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (n, fv) in self.0 {
                    seq.serialize_element(&(n, fv.value, fv.provenance.as_str()))?;
                }
                seq.end()
            }
        }
        struct GRows<'a>(&'a BTreeMap<u64, GValue>);
        impl Serialize for GRows<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (r, gv) in self.0 {
                    seq.serialize_element(&(r, gv.value, gv.provenance.as_str()))?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("family", &self.label)?;
        map.serialize_entry("f", &FRows(&self.f))?;
        map.serialize_entry("g", &GRows(&self.g))?;
        map.end()
    }
}

/// Build a profile holding `f(1..=n_max)` and `g(0..n_max)` using the best
/// certified source available for each entry.
///
/// Finite graphs get their ball volumes from one exact all-vertex sweep
/// (graphs above [`G_SWEEP_VERTEX_CAP`] vertices are refused); infinite
/// graphs must have a volume formula.
pub fn build_profile(g: &GraphHandle, n_max: u64, budget: Duration) -> Result<CoarseProfile> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("profile needs n_max >= 1".into()));
    }
    let mut f = BTreeMap::new();
    let f_top = match g.finite() {
        Some(fin) => n_max.min(fin.vertex_count() as u64),
        None => n_max,
    };
    for n in 1..=f_top {
        f.insert(n, edge_density_f(g, n, budget)?);
    }
    let mut gmap = BTreeMap::new();
    match g.finite() {
        Some(fin) => {
            let v = fin.vertex_count();
            if v > G_SWEEP_VERTEX_CAP {
                return Err(Error::InvalidArgument(format!(
                    "exact ball sweep supports at most {G_SWEEP_VERTEX_CAP} vertices, got {v}"
                )));
            }
            // One BFS per vertex; cumulative histogram gives every radius.
            let r_top = n_max as usize;
            let mut minima = vec![u64::MAX; r_top];
            let mut centers = vec![VertexId(0); r_top];
            for x in 0..v {
                let dist = fin.distances_from(x);
                let mut hist = vec![0u64; r_top + 1];
                for &d in &dist {
                    if d != u32::MAX && (d as usize) < r_top {
                        hist[d as usize] += 1;
                    }
                }
                let mut cum = 0u64;
                for r in 0..r_top {
                    cum += hist[r];
                    if cum < minima[r] {
                        minima[r] = cum;
                        centers[r] = fin.source_id(x);
                    }
                }
            }
            for r in 0..r_top {
                gmap.insert(
                    r as u64,
                    GValue {
                        value: minima[r],
                        witness: Some(centers[r]),
                        provenance: GProvenance::ExactFinite,
                    },
                );
            }
        }
        None => {
            for r in 0..n_max {
                let gv = volume_growth_g(g, r, GrowthScope::ClosedForm)?;
                gmap.insert(r, gv);
            }
        }
    }
    Ok(CoarseProfile { label: g.label(), f, g: gmap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{catalog, truncate, ScaleSequence};

    const BUDGET: Duration = Duration::from_secs(60);

    fn dyadic_chain() -> GraphHandle {
        catalog::multiscale(ScaleSequence::Dyadic { blocks: None }).unwrap()
    }

    fn explicit_chain(orders: &[u64]) -> GraphHandle {
        catalog::multiscale(ScaleSequence::Explicit(orders.to_vec())).unwrap()
    }

    // --- closed forms vs exhaustive enumeration --------------------------

    fn assert_f_closed_matches_enumeration(g: &GraphHandle, n_max: u64) {
        let fin = g.finite().expect("finite graph required");
        let top = n_max.min(fin.vertex_count() as u64);
        for n in 1..=top {
            let closed = match closed_forms::f_closed(g, n) {
                Some(v) => v,
                None => continue,
            };
            let exact = max_edges_subset(fin, n as usize, BUDGET).unwrap();
            assert_eq!(
                closed, exact.edges,
                "edge-density formula disagrees with enumeration on {} at n = {n}",
                g.label()
            );
        }
    }

    #[test]
    fn f_formulas_match_enumeration_on_finite_shapes() {
        for g in [
            catalog::clique(9).unwrap(),
            catalog::path(10).unwrap(),
            catalog::cycle(9).unwrap(),
            catalog::star(8).unwrap(),
            catalog::lollipop(10).unwrap(),
            catalog::lollipop(7).unwrap(),
        ] {
            assert_f_closed_matches_enumeration(&g, 10);
        }
    }

    #[test]
    fn f_formulas_match_enumeration_on_truncated_infinite_shapes() {
        // The formula is evaluated on the infinite graph; enumeration runs
        // on a truncation generous enough to contain an optimal subset, so
        // the two must agree exactly.
        for (g, radius, n_max) in [
            (catalog::ray(), 12, 10),
            (catalog::line(), 8, 10),
            (catalog::regular_tree(3).unwrap(), 3, 10),
            (catalog::star_ray(6).unwrap(), 8, 10),
            (catalog::infinite_lollipop(12).unwrap(), 9, 10),
            (dyadic_chain(), 20, 8),
            (explicit_chain(&[7, 3, 12]), 25, 6),
        ] {
            let tr = truncate(&g, radius).unwrap();
            let fin = tr.finite().unwrap();
            for n in 1..=n_max {
                let closed = match closed_forms::f_closed(&g, n) {
                    Some(v) => v,
                    None => continue,
                };
                let exact = max_edges_subset(fin, n as usize, BUDGET).unwrap();
                assert_eq!(
                    closed,
                    exact.edges,
                    "edge-density formula disagrees with enumeration on {} at n = {n}",
                    g.label()
                );
            }
        }
    }

    #[test]
    fn truncations_fall_back_to_enumeration() {
        // Clipping a graph invalidates its family's formulas (frontier
        // effects), so truncations are resolved by exhaustive search.
        let tr = truncate(&catalog::ray(), 12).unwrap();
        assert!(tr.is_truncation());
        assert_eq!(closed_forms::f_closed(&tr, 6), None);
        assert_eq!(closed_forms::g_closed(&tr, 3), None);
        let fv = edge_density_f(&tr, 6, BUDGET).unwrap();
        assert_eq!(fv.value, 5);
        assert_eq!(fv.provenance, FProvenance::ExactEnumeration);
    }

    // --- ball-volume sweeps ------------------------------------------------

    #[test]
    fn g_formulas_match_full_sweep_on_finite_shapes() {
        for g in [
            catalog::clique(7).unwrap(),
            catalog::path(9).unwrap(),
            catalog::cycle(8).unwrap(),
            catalog::star(6).unwrap(),
        ] {
            for r in 0..10 {
                let closed = match closed_forms::g_closed(&g, r) {
                    Some(v) => v,
                    None => continue,
                };
                let swept = volume_growth_g(&g, r, GrowthScope::All).unwrap();
                assert_eq!(
                    swept.provenance,
                    GProvenance::ExactFinite,
                    "sweep provenance"
                );
                assert_eq!(
                    closed, swept.value,
                    "ball-volume formula disagrees with sweep on {} at r = {r}",
                    g.label()
                );
            }
        }
    }

    /// Cross-check an infinite graph's volume formula against an honest
    /// truncated minimum: inside a radius-R truncation, any center whose
    /// distance to the frontier exceeds r has the same r-ball as in the
    /// full graph, so the minimum over those centers upper-bounds g(r)
    /// and equals it whenever a true minimizer lies deep inside.
    fn assert_g_closed_matches_truncation(
        g: &GraphHandle,
        r_max: u64,
        trunc_radius: u64,
    ) {
        let tr = truncate(g, trunc_radius).unwrap();
        let fin = tr.finite().unwrap();
        let from_origin = fin.distances_from(fin.origin_index());
        for r in 0..=r_max {
            let closed = closed_forms::g_closed(g, r)
                .unwrap_or_else(|| panic!("no volume formula for {}", g.label()));
            let mut min_valid = u64::MAX;
            for x in 0..fin.vertex_count() {
                // Keep only centers whose whole r-ball is inside the
                // truncation.
                if from_origin[x] as u64 + r > trunc_radius {
                    continue;
                }
                let size = ball_size_finite(fin, x, r);
                min_valid = min_valid.min(size);
            }
            assert!(min_valid < u64::MAX, "truncation too small at r = {r}");
            assert_eq!(
                closed, min_valid,
                "volume formula disagrees with truncated minimum on {} at r = {r}",
                g.label()
            );
        }
    }

    #[test]
    fn g_formulas_match_truncated_minima_on_infinite_shapes() {
        assert_g_closed_matches_truncation(&catalog::ray(), 12, 40);
        assert_g_closed_matches_truncation(&catalog::line(), 12, 40);
        assert_g_closed_matches_truncation(&catalog::regular_tree(3).unwrap(), 6, 13);
        assert_g_closed_matches_truncation(&catalog::star_ray(6).unwrap(), 12, 40);
        assert_g_closed_matches_truncation(&catalog::star_ray(1).unwrap(), 12, 40);
        assert_g_closed_matches_truncation(
            &catalog::infinite_lollipop(12).unwrap(),
            12,
            40,
        );
        assert_g_closed_matches_truncation(
            &catalog::infinite_lollipop(4).unwrap(),
            12,
            40,
        );
        assert_g_closed_matches_truncation(&catalog::lattice(2).unwrap(), 6, 14);
        assert_g_closed_matches_truncation(&catalog::lattice(3).unwrap(), 4, 9);
    }

    #[test]
    fn g_formulas_match_truncated_minima_on_multiscale_shapes() {
        for g in [
            dyadic_chain(),
            explicit_chain(&[7, 3, 12]),
            explicit_chain(&[2, 9]),
        ] {
            assert_g_closed_matches_truncation(&g, 25, 250);
        }
    }

    // --- scopes and flags ------------------------------------------------

    #[test]
    fn all_scope_requires_finite() {
        let err = volume_growth_g(&catalog::ray(), 3, GrowthScope::All);
        assert!(matches!(err, Err(Error::NotFinite { .. })));
    }

    #[test]
    fn core_set_minimum_is_flagged() {
        let line = catalog::line();
        let origin = line.origin();
        let gv =
            volume_growth_g(&line, 2, GrowthScope::CoreSet(&[origin])).unwrap();
        assert_eq!(gv.value, 5);
        assert_eq!(gv.provenance, GProvenance::TruncatedMin);
        assert!(!gv.provenance.is_certified());
    }

    #[test]
    fn generic_f_ceiling_is_flagged() {
        let grid = catalog::grid(&[30, 30]).unwrap();
        let fv = edge_density_f(&grid, 20, BUDGET).unwrap();
        assert_eq!(fv.value, 190);
        assert_eq!(fv.provenance, FProvenance::UpperBound);
        assert!(!fv.provenance.is_certified());
    }

    #[test]
    fn grid_small_n_uses_enumeration() {
        let grid = catalog::grid(&[5, 5]).unwrap();
        let fv = edge_density_f(&grid, 4, BUDGET).unwrap();
        assert_eq!(fv.provenance, FProvenance::ExactEnumeration);
        assert_eq!(fv.value, 4); // a 2x2 block induces a 4-cycle
        let witness = fv.witness.unwrap();
        assert_eq!(witness.len(), 4);
    }

    // --- boundary ---------------------------------------------------------

    #[test]
    fn boundary_ratios_on_reference_shapes() {
        let line = catalog::line();
        let origin = line.origin();
        let (b, s, ratio) = boundary_ratio(&line, &[origin]).unwrap();
        assert_eq!((b, s), (2, 1));
        assert!((ratio - 2.0).abs() < 1e-12);

        // An interval of m vertices on the line has boundary 2.
        let interval = ball(&line, origin, 3).unwrap();
        let (b, s, ratio) = boundary_ratio(&line, &interval).unwrap();
        assert_eq!((b, s), (2, 7));
        assert!((ratio - 2.0 / 7.0).abs() < 1e-12);

        // A ball in the 3-regular tree has more boundary than volume.
        let tree = catalog::regular_tree(3).unwrap();
        let b2 = ball(&tree, tree.origin(), 2).unwrap();
        let (b, s, ratio) = boundary_ratio(&tree, &b2).unwrap();
        assert_eq!(s, 10);
        assert_eq!(b, 12); // six frontier vertices, two unvisited children each
        assert!(ratio > 1.0);
    }

    // --- profiles -----------------------------------------------------------

    #[test]
    fn profile_harmonic_sums_match_hand_values() {
        // Ray: g(r) = r + 1, so the sum over r < 4 is 1 + 1/2 + 1/3 + 1/4.
        let profile = build_profile(&catalog::ray(), 4, BUDGET).unwrap();
        let h = profile.harmonic_sum(4).unwrap();
        assert!((h - 25.0 / 12.0).abs() < 1e-12);

        // Line: 1 + 1/3 + 1/5.
        let profile = build_profile(&catalog::line(), 3, BUDGET).unwrap();
        let h = profile.harmonic_sum(3).unwrap();
        assert!((h - 23.0 / 15.0).abs() < 1e-12);
        assert!((profile.harmonic_sum(1).unwrap() - 1.0).abs() < 1e-12);

        assert!(matches!(
            profile.harmonic_sum(5),
            Err(Error::MissingCoarseValue { .. })
        ));
    }

    #[test]
    fn finite_profile_values_are_certified() {
        let profile = build_profile(&catalog::lollipop(10).unwrap(), 10, BUDGET).unwrap();
        for (n, fv) in &profile.f {
            assert!(
                fv.provenance.is_certified(),
                "f({n}) should be certified on a small finite graph"
            );
        }
        for (r, gv) in &profile.g {
            assert_eq!(gv.provenance, GProvenance::ExactFinite, "g({r})");
        }
        assert!(!profile.has_flagged_g(10));
        // Lollipop(10): clique block of 5, so f(5) = 10, f(6) = 11.
        assert_eq!(profile.f_at(5).unwrap().value, 10);
        assert_eq!(profile.f_at(6).unwrap().value, 11);
        // g(0) = 1 everywhere.
        assert_eq!(profile.g.get(&0).unwrap().value, 1);
    }

    #[test]
    fn profile_serializes_to_row_arrays() {
        let profile = build_profile(&catalog::ray(), 2, BUDGET).unwrap();
        let json = serde_json::to_value(&profile).unwrap();
        assert_eq!(json["family"], "ray");
        assert_eq!(json["f"][0][0], 1);
        assert_eq!(json["f"][0][1], 0);
        assert_eq!(json["f"][0][2], "closed-form");
        assert_eq!(json["g"][1][0], 1);
        assert_eq!(json["g"][1][1], 2);
        assert_eq!(json["g"][1][2], "closed-form");
    }

    // --- structural invariants --------------------------------------------

    #[test]
    fn f_and_g_satisfy_structural_inequalities() {
        for g in [
            catalog::clique(8).unwrap(),
            catalog::path(9).unwrap(),
            catalog::cycle(8).unwrap(),
            catalog::star(6).unwrap(),
            catalog::lollipop(10).unwrap(),
        ] {
            let profile = build_profile(&g, 8, BUDGET).unwrap();
            let mut prev_f: Option<u64> = None;
            for (n, fv) in &profile.f {
                assert!(fv.value <= binomial(*n, 2), "f <= C(n,2) on {}", g.label());
                if let Some(p) = prev_f {
                    assert!(fv.value >= p, "f nondecreasing on {}", g.label());
                    assert!(
                        fv.value <= p + (n - 1),
                        "f(n) <= f(n-1) + (n-1) on {}",
                        g.label()
                    );
                }
                prev_f = Some(fv.value);
            }
            assert_eq!(profile.f_at(1).unwrap().value, 0, "f(1) = 0 on {}", g.label());
            let mut prev_g: Option<u64> = None;
            for gv in profile.g.values() {
                if let Some(p) = prev_g {
                    assert!(gv.value >= p, "g nondecreasing on {}", g.label());
                }
                prev_g = Some(gv.value);
            }
            assert_eq!(profile.g.get(&0).unwrap().value, 1, "g(0) = 1 on {}", g.label());
        }
    }

    #[test]
    fn infinite_g_grows_at_least_linearly() {
        for g in [
            catalog::ray(),
            catalog::line(),
            catalog::regular_tree(3).unwrap(),
            catalog::star_ray(6).unwrap(),
            catalog::infinite_lollipop(12).unwrap(),
            catalog::lattice(2).unwrap(),
            dyadic_chain(),
        ] {
            for r in 0..20 {
                let gv = volume_growth_g(&g, r, GrowthScope::ClosedForm).unwrap();
                assert!(
                    gv.value >= r + 1,
                    "g(r) >= r + 1 on {} at r = {r}",
                    g.label()
                );
            }
        }
    }
}
