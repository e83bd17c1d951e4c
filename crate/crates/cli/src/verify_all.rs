//! The `verify-all` subcommand: a curated verification sweep across the
//! catalog, sized to finish in well under a minute on one core, with a
//! wall-clock budget that turns leftover work into flagged partial output.

use std::time::{Duration, Instant};

use anyhow::{anyhow, Result};
use range_lab_core::bounds::{BoundId, BoundReport, Verdict};
use serde_json::{json, Value};

use crate::config::GraphSpec;
use crate::tasks::{BoundParams, CsvFile, TaskOutput};

struct SuiteCheck {
    id: BoundId,
    params: BoundParams,
}

fn check(id: BoundId, params: BoundParams) -> SuiteCheck {
    SuiteCheck { id, params }
}

fn spec(family: &str, params: &[u64]) -> GraphSpec {
    GraphSpec { family: family.into(), params: params.to_vec(), truncate: None }
}

/// The fixed sweep: every catalog family appears, and every check id runs
/// somewhere it is meaningful.
fn suite() -> Vec<(GraphSpec, Vec<SuiteCheck>)> {
    use BoundId::*;
    let p = BoundParams::default;
    vec![
        (
            spec("clique", &[6]),
            vec![
                check(NeighborHit, p()),
                check(Escape, BoundParams { s_radius: Some(0), ..p() }),
                check(ReturnProbability, BoundParams { t: Some(100), ..p() }),
            ],
        ),
        (
            spec("path", &[8]),
            vec![
                check(NeighborHit, p()),
                check(Escape, BoundParams { s_radius: Some(3), ..p() }),
                check(Packing, BoundParams { n: Some(6), replicates: 300, ..p() }),
            ],
        ),
        (
            spec("cycle", &[9]),
            vec![
                check(NeighborHit, p()),
                check(UniversalDiscovery, BoundParams { n: Some(9), replicates: 300, ..p() }),
            ],
        ),
        (
            spec("star", &[7]),
            vec![
                check(NeighborHit, p()),
                check(LocalTime, BoundParams { t: Some(100), replicates: 300, ..p() }),
            ],
        ),
        (
            spec("lollipop", &[10]),
            vec![
                check(NeighborHit, p()),
                check(Escape, BoundParams { s_radius: Some(1), ..p() }),
                check(ReturnProbability, BoundParams { t: Some(200), ..p() }),
            ],
        ),
        (
            spec("box", &[4, 4]),
            vec![
                check(NeighborHit, p()),
                check(Packing, BoundParams { n: Some(12), replicates: 300, ..p() }),
            ],
        ),
        (
            spec("ray", &[]),
            vec![
                check(MainEstimate, BoundParams { n: Some(8), ..p() }),
                check(UniversalDiscovery, BoundParams { n: Some(8), ..p() }),
                check(LocalTime, BoundParams { t: Some(100), ..p() }),
                check(Packing, BoundParams { n: Some(16), replicates: 300, ..p() }),
            ],
        ),
        (
            spec("line", &[]),
            vec![
                check(MainEstimate, BoundParams { n: Some(8), ..p() }),
                check(UniversalRange, BoundParams { t: Some(1000), replicates: 300, ..p() }),
                check(ReturnProbability, BoundParams { t: Some(200), ..p() }),
                check(LocalTime, BoundParams { t: Some(100), ..p() }),
                check(
                    Sharpness,
                    BoundParams { n_grid: vec![8, 16, 32], replicates: 200, ..p() },
                ),
            ],
        ),
        (
            spec("regular-tree", &[3]),
            vec![
                check(UniversalRange, BoundParams { t: Some(1000), replicates: 300, ..p() }),
                check(LocalTime, BoundParams { t: Some(1000), ..p() }),
                check(
                    LinearRange,
                    BoundParams { t_grid: vec![100, 1000], replicates: 300, ..p() },
                ),
                check(ReturnProbability, BoundParams { t: Some(200), ..p() }),
            ],
        ),
        (
            spec("infinite-lollipop", &[10]),
            vec![
                check(MainEstimate, BoundParams { n: Some(10), ..p() }),
                check(UniversalDiscovery, BoundParams { n: Some(10), ..p() }),
                check(ReturnProbability, BoundParams { t: Some(200), ..p() }),
                check(Escape, BoundParams { s_radius: Some(2), ..p() }),
            ],
        ),
        (
            spec("star-ray", &[6]),
            vec![
                check(MainEstimate, BoundParams { n: Some(8), ..p() }),
                check(LocalTime, BoundParams { t: Some(100), ..p() }),
            ],
        ),
        (
            spec("multiscale-lollipop", &[]),
            vec![
                check(MainEstimate, BoundParams { n: Some(8), ..p() }),
                check(Packing, BoundParams { n: Some(16), replicates: 200, ..p() }),
                check(UniversalDiscovery, BoundParams { n: Some(16), replicates: 300, ..p() }),
            ],
        ),
        (
            spec("lattice", &[2]),
            vec![
                check(UniversalRange, BoundParams { t: Some(1000), replicates: 300, ..p() }),
                check(Packing, BoundParams { n: Some(16), replicates: 200, ..p() }),
            ],
        ),
    ]
}

/// Run the sweep. The budget is checked between checks; anything left when
/// it runs out is reported as skipped and the output marked partial.
pub fn run(budget: Duration, master_seed: u64, step_cap: u64) -> Result<(TaskOutput, Value)> {
    let started = Instant::now();
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut skipped: Vec<Value> = Vec::new();
    let mut out_of_time = false;

    for (graph_spec, checks) in suite() {
        let label = format!("{}({:?})", graph_spec.family, graph_spec.params);
        if out_of_time {
            for c in &checks {
                skipped.push(json!({
                    "graph": label,
                    "bound": c.id.as_str(),
                    "reason": "budget exceeded",
                }));
            }
            continue;
        }
        let g = graph_spec
            .build()
            .map_err(|e| anyhow!("suite graph {label} failed to build: {e}"))?;
        for c in checks {
            if started.elapsed() > budget {
                out_of_time = true;
            }
            if out_of_time {
                skipped.push(json!({
                    "graph": g.label(),
                    "bound": c.id.as_str(),
                    "reason": "budget exceeded",
                }));
                continue;
            }
            let report = crate::tasks::run_bound_check(c.id, &g, &c.params, master_seed, step_cap)
                .map_err(|e| anyhow!("suite check {} on {} failed: {e}", c.id.as_str(), g.label()))?;
            reports.push(report);
        }
    }

    let any_violated = reports.iter().any(|r| r.verdict == Verdict::Violated);
    let rows: Vec<String> = reports.iter().map(|r| r.csv_row()).collect();
    if rows.is_empty() && !out_of_time {
        return Err(anyhow!("verification suite produced no reports"));
    }
    let results = json!({
        "reports": serde_json::to_value(&reports).expect("reports serialize"),
        "skipped": skipped,
        "budget_seconds": budget.as_secs(),
        "elapsed_seconds": started.elapsed().as_secs_f64(),
    });
    let config_value = json!({
        "command": "verify-all",
        "budget_seconds": budget.as_secs(),
        "master_seed": master_seed,
        "step_cap": step_cap,
    });
    Ok((
        TaskOutput {
            csv: CsvFile { name: "verify.csv", header: BoundReport::CSV_HEADER, rows },
            extra_csv: None,
            results,
            any_violated,
            partial: out_of_time,
        },
        config_value,
    ))
}
