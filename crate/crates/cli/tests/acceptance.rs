//! Acceptance gate: twelve end-to-end checks over the whole workspace, one
//! test per criterion, each printing one `ACCEPTANCE k: PASS/FAIL` line
//! (visible with `--nocapture`; cargo's own per-test line mirrors it).
//!
//! Tolerances and grids are pinned in the constants below. Two thresholds
//! are knowingly unattainable and deliberately left red rather than tuned;
//! their failure messages carry the measured values and the diagnosis:
//!  - criterion 6: the dyadic chain's discovery-time exponent is asserted
//!    over n in {8..128}, a range that straddles the graph's
//!    diffusive-to-cubic crossover (block-boundary grids do land in-window);
//!  - criterion 10: the burst-slope threshold beta > 0.55 is asserted on the
//!    replicate-mean range curve, whose crests smear to ~0.50 at every
//!    resolution where the line control stays valid.

use std::collections::HashSet;
use std::process::Command;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use range_lab_core::bounds::{self, fit, Verdict};
use range_lab_core::coarse;
use range_lab_core::exact::{self, enumerate};
use range_lab_core::graph::{self, catalog, GraphHandle};
use range_lab_core::walk::monte_carlo::{
    estimate_discovery_times, estimate_range_curve, MonteCarlo,
};
use range_lab_core::walk::DEFAULT_STEP_CAP;
use range_lab_core::VertexId;

const STEP_CAP: u64 = DEFAULT_STEP_CAP;
const PROFILE_BUDGET: std::time::Duration = std::time::Duration::from_secs(60);

fn build(family: &str, params: &[u64]) -> GraphHandle {
    catalog::build(family, params).expect("catalog graph builds")
}

fn mc(replicates: u64, master_seed: u64) -> MonteCarlo {
    MonteCarlo { replicates, master_seed }
}

/// 1. Adjacent-pair hitting bound, exhaustively: on every labeled connected
/// graph with at most 6 vertices, the worst expected time to hit a neighbor
/// stays below twice the edge count minus one. Exact solves, zero failures.
#[test]
fn acceptance_01_neighbor_bound_exhaustive() {
    let started = Instant::now();
    // Labeled connected graph counts on 1..=6 vertices.
    let expected_counts: [usize; 6] = [1, 1, 4, 38, 728, 26704];
    let mut total = 0usize;
    for n in 1..=6usize {
        let graphs = enumerate::connected_graphs(n).expect("enumeration fits the cap");
        assert_eq!(
            graphs.len(),
            expected_counts[n - 1],
            "ACCEPTANCE 1: FAIL — expected {} labeled connected graphs on {n} vertices, enumerated {}",
            expected_counts[n - 1],
            graphs.len()
        );
        total += graphs.len();
        if n == 1 {
            continue; // one vertex, no adjacent pair: the bound is vacuous
        }
        for (idx, fin) in graphs.into_iter().enumerate() {
            let g = enumerate::as_handle(fin, idx);
            let report = bounds::check_neighbor_hit(&g).expect("exact solve");
            assert_eq!(
                report.verdict,
                Verdict::Holds,
                "ACCEPTANCE 1: FAIL — neighbor bound violated on graph #{idx} of {n} vertices: \
                 lhs {} vs rhs {}",
                report.lhs,
                report.rhs
            );
        }
    }
    assert_eq!(total, 27_476, "ACCEPTANCE 1: FAIL — enumeration total changed");
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 300.0, "ACCEPTANCE 1: FAIL — runtime {secs:.0}s exceeds 5 minutes");
    println!("ACCEPTANCE 1: PASS — {total} graphs, exact neighbor bound holds on all ({secs:.1}s)");
}

/// Grow a random connected vertex set from the origin by repeatedly adding a
/// fresh neighbor of a random member. Never swallows a whole finite graph.
fn random_blob(g: &GraphHandle, rng: &mut ChaCha8Rng) -> Vec<VertexId> {
    let cap = g.vertex_count().map_or(12, |v| (v - 1).min(12)) as usize;
    let target = rng.random_range(1..=cap);
    let mut blob = vec![g.origin()];
    let mut seen: HashSet<u64> = blob.iter().map(|v| v.0).collect();
    let mut attempts = 0;
    while blob.len() < target && attempts < 10_000 {
        attempts += 1;
        let v = blob[rng.random_range(0..blob.len())];
        let fresh: Vec<VertexId> = g
            .neighbors(v)
            .expect("member vertex is in the graph")
            .into_iter()
            .filter(|w| !seen.contains(&w.0))
            .collect();
        if fresh.is_empty() {
            continue;
        }
        let w = fresh[rng.random_range(0..fresh.len())];
        seen.insert(w.0);
        blob.push(w);
    }
    blob
}

/// 2. Escape-time bound, sampled: 1000 random (graph, set, start) instances;
/// the exact expected exit time never exceeds (2·inside-edges + 1)·distance.
#[test]
fn acceptance_02_escape_bound_sampled() {
    let pool: Vec<GraphHandle> = [
        ("clique", &[7][..]),
        ("path", &[10]),
        ("cycle", &[8]),
        ("star", &[6]),
        ("box", &[3, 4]),
        ("lollipop", &[9]),
        ("ray", &[]),
        ("line", &[]),
        ("regular-tree", &[3]),
        ("infinite-lollipop", &[8]),
        ("star-ray", &[4]),
        ("multiscale-lollipop", &[]),
    ]
    .iter()
    .map(|(f, p)| build(f, p))
    .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(0xE5CA_9E02);
    for i in 0..1000 {
        let g = &pool[rng.random_range(0..pool.len())];
        let blob = random_blob(g, &mut rng);
        let x = blob[rng.random_range(0..blob.len())];
        let report = bounds::check_escape(g, &blob, x).expect("exact escape solve");
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "ACCEPTANCE 2: FAIL — instance {i} on {}: escape time {} exceeds bound {} ({})",
            g.label(),
            report.lhs,
            report.rhs,
            report.note
        );
    }
    println!("ACCEPTANCE 2: PASS — 1000 sampled escape instances, exact bound holds on all");
}

/// 3. Packing bound, per trajectory: at least 100k simulated traces across
/// the catalog with n up to 64; the summed discovery distances stay below
/// the harmonic bound on every single trace.
#[test]
fn acceptance_03_packing_pathwise() {
    let cells: &[(&str, &[u64], u64, u64)] = &[
        ("clique", &[8], 7, 12_500),
        ("path", &[12], 11, 12_500),
        ("cycle", &[12], 11, 12_500),
        ("star", &[9], 9, 12_500),
        ("box", &[4, 4], 15, 12_500),
        ("lollipop", &[12], 11, 12_500),
        ("line", &[], 4, 2_000),
        ("line", &[], 16, 2_000),
        ("line", &[], 64, 2_000),
        ("ray", &[], 4, 2_000),
        ("ray", &[], 16, 2_000),
        ("ray", &[], 64, 2_000),
        ("regular-tree", &[3], 4, 2_000),
        ("regular-tree", &[3], 16, 2_000),
        ("regular-tree", &[3], 64, 2_000),
        ("star-ray", &[8], 4, 2_000),
        ("star-ray", &[8], 16, 2_000),
        ("infinite-lollipop", &[12], 4, 2_000),
        ("infinite-lollipop", &[12], 16, 2_000),
        ("multiscale-lollipop", &[], 4, 1_500),
        ("multiscale-lollipop", &[], 16, 1_500),
        ("multiscale-lollipop", &[], 64, 500),
    ];
    let mut total = 0u64;
    for (k, &(family, params, n, reps)) in cells.iter().enumerate() {
        let g = build(family, params);
        let m = (n / 2).max(1);
        let profile = coarse::build_profile(&g, m, PROFILE_BUDGET).expect("profile");
        let report = bounds::check_packing(&g, &profile, n, mc(reps, 0xBA11 + k as u64), STEP_CAP)
            .expect("packing traces");
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "ACCEPTANCE 3: FAIL — a trace on {} at n={n} summed {} > bound {}",
            g.label(),
            report.lhs,
            report.rhs
        );
        assert!(
            report.note.contains("censored=0"),
            "ACCEPTANCE 3: FAIL — censored traces on {} at n={n}: {}",
            g.label(),
            report.note
        );
        total += reps;
    }
    assert!(total >= 100_000, "ACCEPTANCE 3: FAIL — only {total} traces");
    println!("ACCEPTANCE 3: PASS — {total} traces, per-trajectory packing bound true on every one");
}

/// The criterion-4/5 sweep: mean discovery times over n in {4,8,16,32} with
/// 1000 replicates on the four slow-discovery families.
fn discovery_sweep() -> Vec<(GraphHandle, Vec<(u64, f64, f64, u64)>)> {
    let n_grid = [4u64, 8, 16, 32];
    [
        ("ray", &[][..]),
        ("line", &[]),
        ("infinite-lollipop", &[10]),
        ("infinite-lollipop", &[20]),
        ("infinite-lollipop", &[40]),
        ("multiscale-lollipop", &[]),
    ]
    .iter()
    .map(|(f, p)| {
        let g = build(f, p);
        let points = estimate_discovery_times(&g, &n_grid, mc(1000, 0x7E0), STEP_CAP)
            .expect("discovery sweep");
        let rows = points
            .iter()
            .map(|pt| (pt.at, pt.estimate.mean, pt.estimate.std_error, pt.estimate.censored))
            .collect();
        (g, rows)
    })
    .collect()
}

/// 4. Main discovery-time estimate: on the slow-discovery families the 99%
/// upper confidence limit of the mean discovery time stays below
/// 4·n·f(n)·sum 1/g(r).
#[test]
fn acceptance_04_main_bound_sweep() {
    let started = Instant::now();
    for (g, rows) in discovery_sweep() {
        let profile = coarse::build_profile(&g, 32, PROFILE_BUDGET).expect("profile");
        for (n, mean, se, censored) in rows {
            assert_eq!(censored, 0, "ACCEPTANCE 4: FAIL — censored replicates on {}", g.label());
            let rhs = bounds::thm_main_rhs(&profile, n).expect("certified profile");
            let upper = mean + bounds::CONFIDENCE_Z * se;
            assert!(
                upper < rhs,
                "ACCEPTANCE 4: FAIL — {} at n={n}: 99% upper CI {upper:.2} >= rhs {rhs:.2}",
                g.label()
            );
        }
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 600.0, "ACCEPTANCE 4: FAIL — runtime {secs:.0}s exceeds 10 minutes");
    println!("ACCEPTANCE 4: PASS — 6 families x 4 grid points, upper CIs below the bound ({secs:.1}s)");
}

/// 5. Universal discovery-time bound: the same sweep stays below 4n³ln n,
/// and the second vertex is always discovered in exactly one step (zero
/// variance) on every catalog family.
#[test]
fn acceptance_05_universal_bound_and_exact_t2() {
    for (g, rows) in discovery_sweep() {
        for (n, mean, se, censored) in rows {
            assert_eq!(censored, 0, "ACCEPTANCE 5: FAIL — censored replicates on {}", g.label());
            let rhs = bounds::universal_t_rhs(n);
            let upper = mean + bounds::CONFIDENCE_Z * se;
            assert!(
                upper < rhs,
                "ACCEPTANCE 5: FAIL — {} at n={n}: 99% upper CI {upper:.2} >= 4n^3 ln n = {rhs:.2}",
                g.label()
            );
        }
    }
    let defaults: &[(&str, &[u64])] = &[
        ("clique", &[5]),
        ("path", &[6]),
        ("cycle", &[6]),
        ("star", &[5]),
        ("box", &[3, 3]),
        ("lollipop", &[8]),
        ("ray", &[]),
        ("line", &[]),
        ("lattice", &[2]),
        ("regular-tree", &[3]),
        ("infinite-lollipop", &[8]),
        ("star-ray", &[5]),
        ("multiscale-lollipop", &[]),
    ];
    for (f, p) in defaults {
        let g = build(f, p);
        let pt = &estimate_discovery_times(&g, &[2], mc(100, 0x72), STEP_CAP).expect("T_2")[0];
        assert!(
            pt.estimate.mean == 1.0 && pt.estimate.std_error == 0.0,
            "ACCEPTANCE 5: FAIL — T_2 on {} is {} +/- {}, expected exactly 1 +/- 0",
            g.label(),
            pt.estimate.mean,
            pt.estimate.std_error
        );
    }
    println!(
        "ACCEPTANCE 5: PASS — sweep below 4n^3 ln n; T_2 = 1 with zero variance on all {} families",
        defaults.len()
    );
}

/// 6. Discovery-time growth exponents: the log-log least-squares slope over
/// n in {8,16,32,64,128} is asserted in [1.8, 2.2] on the line and in
/// [2.7, 3.3] on the dyadic multi-scale chain.
///
/// The dyadic half is KNOWN RED: over this grid the measured slope is ~2.58
/// because the pinned range straddles the chain's diffusive-to-cubic
/// crossover (near n ~ 27, where the cubic prefactor overtakes the
/// diffusive term). The cubic asymptotics themselves are real — the
/// block-boundary grids printed below measure ~2.72 and ~2.83, climbing
/// toward 3 — so the assertion is left failing rather than loosened.
#[test]
fn acceptance_06_growth_exponents() {
    let grid = [8u64, 16, 32, 64, 128];

    let line = bounds::sharpness_fit(&build("line", &[]), &grid, mc(400, 0x51), STEP_CAP)
        .expect("line fit");
    assert!(
        (1.8..=2.2).contains(&line.slope),
        "ACCEPTANCE 6: FAIL — line slope {:.3} outside [1.8, 2.2]",
        line.slope
    );

    let dyadic = build("multiscale-lollipop", &[]);
    for (bgrid, reps) in [(vec![14u64, 30, 62, 126, 254], 300u64), (vec![30, 62, 126, 254, 510], 150)] {
        let f = bounds::sharpness_fit(&dyadic, &bgrid, mc(reps, 0x51), STEP_CAP)
            .expect("boundary fit");
        println!(
            "  diagnostic: dyadic slope over block boundaries {bgrid:?} = {:.3} +/- {:.3}",
            f.slope, f.slope_se
        );
    }
    let fit = bounds::sharpness_fit(&dyadic, &grid, mc(400, 0x51), STEP_CAP).expect("dyadic fit");
    assert!(
        (2.7..=3.3).contains(&fit.slope),
        "ACCEPTANCE 6: FAIL — dyadic slope over {grid:?} = {:.3} +/- {:.3}, pinned window \
         [2.7, 3.3]; the grid straddles the diffusive-to-cubic crossover (block-boundary \
         grids measure ~2.72 and ~2.83 and climb toward 3, see diagnostics above)",
        fit.slope,
        fit.slope_se
    );
    println!(
        "ACCEPTANCE 6: PASS — line slope {:.3}, dyadic slope {:.3}",
        line.slope, fit.slope
    );
}

/// 7. Range lower bound from maximal local times, including the weak-bound
/// regime: on the hundred-leaf star-ray at t=1000 the bound's right side
/// must fall below 3 (the hub's local time eats the estimate).
#[test]
fn acceptance_07_local_time_range_bound() {
    let cases: &[(&str, &[u64])] =
        &[("ray", &[]), ("line", &[]), ("regular-tree", &[3]), ("star-ray", &[100])];
    let mut starray_rhs_at_1000 = f64::NAN;
    for (f, p) in cases {
        let g = build(f, p);
        for t in [1u64, 10, 100, 1000] {
            let report = bounds::check_local_time(&g, t, 8, mc(400, 0x10C + t), STEP_CAP)
                .expect("local-time check");
            assert_eq!(
                report.verdict,
                Verdict::Holds,
                "ACCEPTANCE 7: FAIL — {} at t={t}: range {} below bound {} ({})",
                g.label(),
                report.lhs,
                report.rhs,
                report.note
            );
            if *f == "star-ray" && t == 1000 {
                starray_rhs_at_1000 = report.rhs;
            }
        }
    }
    assert!(
        starray_rhs_at_1000 < 3.0,
        "ACCEPTANCE 7: FAIL — star-ray(100) bound at t=1000 is {starray_rhs_at_1000:.3}, \
         expected the weak-regime value < 3"
    );
    println!(
        "ACCEPTANCE 7: PASS — 4 families x 4 horizons hold; star-ray(100) rhs at t=1000 = \
         {starray_rhs_at_1000:.3} < 3"
    );
}

/// 8. Return-probability bound P_x(X_t = x) <= 4 deg(x)/sqrt(t+1) for every
/// vertex in a radius-20 core and every t <= 200, exactly.
#[test]
fn acceptance_08_return_probability_core() {
    for (f, p) in [("line", &[][..]), ("regular-tree", &[3])] {
        let g = build(f, p);
        assert!(g.family().is_vertex_transitive(), "transitive family expected");
        // Transitivity: the origin's curve is every vertex's curve.
        let report = bounds::check_return_probability(&g, g.origin(), 200).expect("curve");
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "ACCEPTANCE 8: FAIL — {} return curve: {}",
            g.label(),
            report.note
        );
    }
    let g = build("infinite-lollipop", &[10]);
    let core = graph::ball(&g, g.origin(), 20).expect("core ball");
    for &x in &core {
        let report = bounds::check_return_probability(&g, x, 200).expect("curve");
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "ACCEPTANCE 8: FAIL — {} at x={}: {}",
            g.label(),
            x.0,
            report.note
        );
    }
    println!(
        "ACCEPTANCE 8: PASS — line + tree via transitivity, and all {} core vertices of \
         infinite-lollipop(10), every t <= 200",
        core.len()
    );
}

/// 9. Uniform transience exemplar: on the 3-regular tree the range grows
/// linearly — the mean range per step stays above the frozen pilot
/// threshold 0.25 across three decades.
#[test]
fn acceptance_09_tree_linear_range() {
    let g = build("regular-tree", &[3]);
    let times = [100u64, 1_000, 10_000];
    let points = estimate_range_curve(&g, &times, mc(400, 0x17EE), STEP_CAP).expect("range curve");
    for pt in &points {
        assert_eq!(pt.estimate.censored, 0, "ACCEPTANCE 9: FAIL — censored replicates");
        let ratio = pt.estimate.mean / pt.at as f64;
        assert!(
            ratio >= 0.25,
            "ACCEPTANCE 9: FAIL — mean range / t = {ratio:.4} < 0.25 at t={}",
            pt.at
        );
    }
    let ratios: Vec<String> =
        points.iter().map(|p| format!("{:.3}", p.estimate.mean / p.at as f64)).collect();
    println!("ACCEPTANCE 9: PASS — tree range/t = [{}] all >= 0.25", ratios.join(", "));
}

/// 10. Range-growth oscillation: windowed log-log slopes of the mean range
/// curve over a geometric grid up to 10^7 steps. The line control must stay
/// diffusive (min and max windowed slope within [0.4, 0.6]); the dyadic
/// chain is asserted to alternate below 0.45 and above 0.55.
///
/// The dyadic beta half is KNOWN RED: per-trajectory bursts are near
/// vertical, but block-entry times de-phase across replicates, smearing the
/// mean curve's crests to windowed slope ~0.50 at every resolution where
/// the line control stays valid (finer windows fail the control by noise).
/// Plateaus are deep (alpha ~0.15-0.25), so alternation around 1/2 is
/// present; the 0.55 crest threshold is not met and the assertion is left
/// failing rather than loosened.
#[test]
fn acceptance_10_oscillation_diagnostic() {
    let grid = fit::geometric_grid(100, 10_000_000, 12).expect("grid");
    let reps = 256;

    let line = bounds::oscillation_profile(&build("line", &[]), &grid, 3, mc(reps, 1), STEP_CAP)
        .expect("line profile");
    assert!(
        (0.4..=0.6).contains(&line.alpha_hat) && (0.4..=0.6).contains(&line.beta_hat),
        "ACCEPTANCE 10: FAIL — line control alpha {:.3} / beta {:.3} outside [0.4, 0.6]",
        line.alpha_hat,
        line.beta_hat
    );

    let dyadic = bounds::oscillation_profile(
        &build("multiscale-lollipop", &[]),
        &grid,
        3,
        mc(reps, 1),
        STEP_CAP,
    )
    .expect("dyadic profile");
    assert!(
        dyadic.alpha_hat < 0.45,
        "ACCEPTANCE 10: FAIL — dyadic alpha {:.3} not below 0.45",
        dyadic.alpha_hat
    );
    assert!(
        dyadic.beta_hat > 0.55,
        "ACCEPTANCE 10: FAIL — dyadic beta {:.3} not above 0.55 (alpha {:.3}; mean-curve \
         crests smear to ~0.50 by replicate de-phasing at every resolution where the line \
         control passes — alternation around 1/2 is present, the 0.55 threshold is not met)",
        dyadic.beta_hat,
        dyadic.alpha_hat
    );
    println!(
        "ACCEPTANCE 10: PASS — line [{:.3}, {:.3}]; dyadic alpha {:.3}, beta {:.3}",
        line.alpha_hat, line.beta_hat, dyadic.alpha_hat, dyadic.beta_hat
    );
}

/// 11. Estimator-versus-oracle agreement: the Monte Carlo full cover time
/// matches the exact visited-set-chain value within four standard errors on
/// four small named graphs.
#[test]
fn acceptance_11_oracle_agreement() {
    let cases: &[(&str, &[u64])] =
        &[("path", &[5]), ("cycle", &[6]), ("clique", &[4]), ("star", &[4])];
    for (f, p) in cases {
        let g = build(f, p);
        let n = g.vertex_count().expect("finite") as u64;
        let exact_value =
            exact::discovery::expected_discovery_times(&g, n).expect("exact chain")[(n - 1) as usize];
        let pt = &estimate_discovery_times(&g, &[n], mc(4000, 0x0AC1E), STEP_CAP).expect("mc")[0];
        let gap = (pt.estimate.mean - exact_value).abs();
        assert!(
            gap <= 4.0 * pt.estimate.std_error,
            "ACCEPTANCE 11: FAIL — {}: MC {} vs exact {} differs by {gap:.3} > 4se = {:.3}",
            g.label(),
            pt.estimate.mean,
            exact_value,
            4.0 * pt.estimate.std_error
        );
    }
    println!("ACCEPTANCE 11: PASS — MC cover times within 4 se of the exact chain on all 4 graphs");
}

/// 12. Reproducibility: the same configuration and seed produce
/// byte-identical CSV bodies at any thread count, and across reruns.
#[test]
fn acceptance_12_reproducibility() {
    let bin = env!("CARGO_BIN_EXE_range-lab");
    let dir = tempfile::tempdir().expect("tempdir");
    let config_path = dir.path().join("config.json");
    std::fs::write(
        &config_path,
        r#"{
            "schema_version": 1,
            "graph": {"family": "multiscale-lollipop"},
            "task": {"kind": "simulate", "n_grid": [4, 8, 16], "replicates": 300},
            "master_seed": 99
        }"#,
    )
    .expect("write config");

    let mut bodies: Vec<(String, String, String)> = Vec::new();
    for (run, threads) in [(0, "1"), (1, "2"), (2, "4"), (3, "2")] {
        let out = dir.path().join(format!("out{run}"));
        let status = Command::new(bin)
            .args(["run"])
            .arg(&config_path)
            .args(["--threads", threads, "--output"])
            .arg(&out)
            .status()
            .expect("binary runs");
        assert!(status.success(), "ACCEPTANCE 12: FAIL — run {run} exited {status}");
        let read = |name: &str| std::fs::read_to_string(out.join(name)).expect("output file");
        bodies.push((read("simulate.csv"), read("ET_summary.csv"), read("summary.json")));
    }
    for (i, b) in bodies.iter().enumerate().skip(1) {
        assert!(
            b == &bodies[0],
            "ACCEPTANCE 12: FAIL — run {i} differs from run 0 (thread count must not matter)"
        );
    }
    println!(
        "ACCEPTANCE 12: PASS — simulate.csv, ET_summary.csv and summary.json byte-identical \
         across thread counts 1/2/4 and a rerun"
    );
}
