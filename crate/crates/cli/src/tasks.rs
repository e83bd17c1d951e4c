//! Task execution: each configured task produces CSV rows plus a JSON
//! results block; the caller turns those into the run's report files.

use std::time::Duration;

use anyhow::{anyhow, Result};
use range_lab_core::bounds::{
    self, fit, BoundId, BoundReport, Verdict, LINEAR_RANGE_T_MAX,
};
use range_lab_core::coarse;
use range_lab_core::error::Error as CoreError;
use range_lab_core::graph::{self, Family, GraphHandle};
use range_lab_core::walk::monte_carlo::{
    discovery_estimates, range_estimates, run_replicates, CurvePoint, MonteCarlo,
};
use range_lab_core::walk::WalkPlan;
use serde_json::{json, Value};

use crate::config::{RunConfig, TaskSpec};

/// Time allowed for profile construction inside verification tasks.
const PROFILE_BUDGET: Duration = Duration::from_secs(60);

/// Fallback replicate count for Monte Carlo verification checks.
const DEFAULT_REPLICATES: u64 = 400;

/// Everything a finished task hands back for report writing.
pub struct TaskOutput {
    /// Primary CSV: file name, header line, data rows.
    pub csv: CsvFile,
    /// Optional second CSV (per-grid-point summaries for simulations).
    pub extra_csv: Option<CsvFile>,
    /// Task-specific results block for `summary.json`.
    pub results: Value,
    /// True when any verification check came back violated.
    pub any_violated: bool,
    /// True when results are partial (censored replicates, exhausted budget).
    pub partial: bool,
}

pub struct CsvFile {
    pub name: &'static str,
    pub header: &'static str,
    pub rows: Vec<String>,
}

impl CsvFile {
    pub fn body(&self) -> String {
        let mut out = String::with_capacity(self.header.len() + self.rows.len() * 32 + 2);
        out.push_str(self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }
}

pub fn run_task(config: &RunConfig, g: &GraphHandle, step_cap: u64) -> Result<TaskOutput> {
    match &config.task {
        TaskSpec::Simulate { n_grid, t_grid, replicates } => {
            simulate(g, n_grid, t_grid, *replicates, config.master_seed, step_cap)
        }
        TaskSpec::Exact { n_grid, return_t } => exact_task(g, n_grid, *return_t),
        TaskSpec::Coarse { n_max } => coarse_task(g, *n_max),
        TaskSpec::Verify {
            bounds: names,
            n,
            t,
            n_grid,
            t_grid,
            replicates,
            s_radius,
            window,
            slope_window,
            ell_horizon,
        } => {
            let params = BoundParams {
                n: *n,
                t: *t,
                n_grid: n_grid.clone(),
                t_grid: t_grid.clone(),
                replicates: replicates.unwrap_or(DEFAULT_REPLICATES),
                s_radius: *s_radius,
                window: window.unwrap_or(8),
                slope_window: slope_window.map(|w| (w[0], w[1])),
                ell_horizon: ell_horizon.unwrap_or(LINEAR_RANGE_T_MAX),
            };
            verify(g, names, &params, config.master_seed, step_cap)
        }
        TaskSpec::Sharpness { n_grid, replicates, slope_window } => {
            sharpness(g, n_grid, *replicates, slope_window.map(|w| (w[0], w[1])), config.master_seed, step_cap)
        }
        TaskSpec::Oscillation { t_min, t_max, per_decade, window, replicates } => {
            oscillation(g, *t_min, *t_max, *per_decade, *window, *replicates, config.master_seed, step_cap)
        }
    }
}

// --- simulate ---------------------------------------------------------------

fn point_json(points: &[CurvePoint]) -> Value {
    serde_json::to_value(points).expect("curve points serialize")
}

fn summary_rows(points: &[CurvePoint]) -> Vec<String> {
    points
        .iter()
        .map(|p| {
            format!(
                "{},{},{},{},{}",
                p.at,
                bounds::fmt_float(p.estimate.mean),
                bounds::fmt_float(p.estimate.std_error),
                p.estimate.n,
                p.estimate.censored
            )
        })
        .collect()
}

fn simulate(
    g: &GraphHandle,
    n_grid: &[u64],
    t_grid: &[u64],
    replicates: u64,
    master_seed: u64,
    step_cap: u64,
) -> Result<TaskOutput> {
    let mc = MonteCarlo { replicates, master_seed };
    let mut plan = if n_grid.is_empty() {
        let mut p = WalkPlan::horizon(*t_grid.last().expect("validated nonempty"));
        p.record_range_at = t_grid.to_vec();
        p
    } else {
        let mut p = WalkPlan::target_range(*n_grid.last().expect("validated nonempty"));
        p.record_discovery_counts = n_grid.to_vec();
        p
    };
    plan.step_cap = step_cap;
    let outcomes = run_replicates(g, &plan, mc).map_err(|e| anyhow!("simulation failed: {e}"))?;

    let mut rows = Vec::new();
    let mut censored_rows = 0u64;
    if n_grid.is_empty() {
        for (idx, o) in outcomes.iter().enumerate() {
            for (i, &t) in t_grid.iter().enumerate() {
                // A censored replicate stopped early, so its range values
                // are lower bounds rather than samples.
                if o.censored {
                    censored_rows += 1;
                }
                rows.push(format!("{idx},{},{t},{},{}", o.seed, o.ranges[i], o.censored));
            }
        }
    } else {
        for (idx, o) in outcomes.iter().enumerate() {
            for (i, &n) in n_grid.iter().enumerate() {
                match o.discovery_times[i] {
                    Some(time) => rows.push(format!("{idx},{},{n},{time},false", o.seed)),
                    None => {
                        censored_rows += 1;
                        rows.push(format!("{idx},{},{n},,true", o.seed));
                    }
                }
            }
        }
    }

    let (points, extra_name) = if n_grid.is_empty() {
        (range_estimates(&outcomes, t_grid), "RT_summary.csv")
    } else {
        (discovery_estimates(&outcomes, n_grid), "ET_summary.csv")
    };
    let grid_kind = if n_grid.is_empty() { "t" } else { "n" };
    let results = json!({
        "grid_kind": grid_kind,
        "points": point_json(&points),
        "censored_rows": censored_rows,
    });
    Ok(TaskOutput {
        csv: CsvFile {
            name: "simulate.csv",
            header: "replicate,seed,n_or_t,value,censored",
            rows,
        },
        extra_csv: Some(CsvFile {
            name: extra_name,
            header: "grid_point,mean,std_error,replicates,censored",
            rows: summary_rows(&points),
        }),
        results,
        any_violated: false,
        partial: censored_rows > 0,
    })
}

// --- exact -------------------------------------------------------------------

fn exact_task(g: &GraphHandle, n_grid: &[u64], return_t: Option<u64>) -> Result<TaskOutput> {
    let mut rows = Vec::new();
    let mut results = serde_json::Map::new();

    if let Some(&n_max) = n_grid.last() {
        let curve = range_lab_core::exact::discovery::expected_discovery_times(g, n_max)
            .map_err(|e| anyhow!("exact discovery sweep failed: {e}"))?;
        let mut pairs = Vec::new();
        for &n in n_grid {
            let value = curve[(n - 1) as usize];
            rows.push(format!("discovery,{n},{}", bounds::fmt_float(value)));
            pairs.push(json!([n, value]));
        }
        results.insert("discovery".into(), Value::Array(pairs));
    }
    if let Some(t) = return_t {
        let curve = range_lab_core::exact::distribution::return_probability_curve(g, g.origin(), t)
            .map_err(|e| anyhow!("exact return curve failed: {e}"))?;
        let mut pairs = Vec::new();
        for (s, &p) in curve.iter().enumerate() {
            rows.push(format!("return-probability,{s},{}", bounds::fmt_float(p)));
            pairs.push(json!([s, p]));
        }
        results.insert("return_probability".into(), Value::Array(pairs));
    }

    Ok(TaskOutput {
        csv: CsvFile { name: "exact.csv", header: "kind,index,value", rows },
        extra_csv: None,
        results: Value::Object(results),
        any_violated: false,
        partial: false,
    })
}

// --- coarse -------------------------------------------------------------------

fn coarse_task(g: &GraphHandle, n_max: u64) -> Result<TaskOutput> {
    let profile = coarse::build_profile(g, n_max, PROFILE_BUDGET)
        .map_err(|e| anyhow!("profile construction failed: {e}"))?;
    let mut rows = Vec::new();
    for (n, fv) in &profile.f {
        rows.push(format!("f,{n},{},{}", fv.value, fv.provenance.as_str()));
    }
    for (r, gv) in &profile.g {
        rows.push(format!("g,{r},{},{}", gv.value, gv.provenance.as_str()));
    }
    Ok(TaskOutput {
        csv: CsvFile { name: "coarse.csv", header: "kind,index,value,provenance", rows },
        extra_csv: None,
        results: serde_json::to_value(&profile).expect("profile serializes"),
        any_violated: false,
        partial: false,
    })
}

// --- verify -------------------------------------------------------------------

/// Parameters shared by all verification checks; unset fields fall back to
/// safe defaults when a check needs them.
#[derive(Clone, Debug)]
pub struct BoundParams {
    pub n: Option<u64>,
    pub t: Option<u64>,
    pub n_grid: Vec<u64>,
    pub t_grid: Vec<u64>,
    pub replicates: u64,
    pub s_radius: Option<u64>,
    pub window: u64,
    pub slope_window: Option<(f64, f64)>,
    pub ell_horizon: u64,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            n: None,
            t: None,
            n_grid: Vec::new(),
            t_grid: Vec::new(),
            replicates: DEFAULT_REPLICATES,
            s_radius: None,
            window: 8,
            slope_window: None,
            ell_horizon: LINEAR_RANGE_T_MAX,
        }
    }
}

impl BoundParams {
    fn need_n(&self) -> range_lab_core::Result<u64> {
        self.n.ok_or(CoreError::InvalidArgument("this check needs a discovery count n".into()))
    }
    fn need_t(&self) -> range_lab_core::Result<u64> {
        self.t.ok_or(CoreError::InvalidArgument("this check needs a horizon t".into()))
    }
}

/// Expected log-log growth exponent window for families with a known one.
fn default_slope_window(family: Family) -> Option<(f64, f64)> {
    match family {
        Family::MultiScale => Some((2.7, 3.3)),
        Family::Line => Some((1.8, 2.2)),
        _ => None,
    }
}

/// Escape sets are balls around the origin. For finite graphs the radius
/// shrinks until the complement is nonempty, so the check stays well-posed.
fn escape_set(
    g: &GraphHandle,
    radius: u64,
    shrink: bool,
) -> range_lab_core::Result<Vec<range_lab_core::VertexId>> {
    let mut r = radius;
    loop {
        let ball = graph::ball(g, g.origin(), r)?;
        let proper = match g.vertex_count() {
            Some(total) => ball.len() < total,
            None => true,
        };
        if proper {
            return Ok(ball);
        }
        if !shrink || r == 0 {
            return Err(CoreError::InvalidArgument(format!(
                "ball of radius {radius} covers the whole graph; nothing to escape to"
            )));
        }
        r -= 1;
    }
}

/// Run one verification check with explicit parameters.
pub fn run_bound_check(
    id: BoundId,
    g: &GraphHandle,
    p: &BoundParams,
    master_seed: u64,
    step_cap: u64,
) -> range_lab_core::Result<BoundReport> {
    let mc = MonteCarlo { replicates: p.replicates, master_seed };
    match id {
        BoundId::MainEstimate => {
            let n = p.need_n()?;
            let profile = coarse::build_profile(g, n, PROFILE_BUDGET)?;
            bounds::check_thm_main(g, &profile, n, mc, step_cap)
        }
        BoundId::UniversalDiscovery => bounds::check_universal_t(g, p.need_n()?, mc, step_cap),
        BoundId::UniversalRange => bounds::universal_r_check(g, p.need_t()?, mc, step_cap),
        BoundId::NeighborHit => bounds::check_neighbor_hit(g),
        BoundId::Escape => {
            let s = escape_set(g, p.s_radius.unwrap_or(2), p.s_radius.is_none())?;
            bounds::check_escape(g, &s, g.origin())
        }
        BoundId::Packing => {
            let n = p.need_n()?;
            let m = (n / 2).max(1);
            let profile = coarse::build_profile(g, m, PROFILE_BUDGET)?;
            bounds::check_packing(g, &profile, n, mc, step_cap)
        }
        BoundId::Sharpness => {
            if p.n_grid.is_empty() {
                return Err(CoreError::InvalidArgument(
                    "the sharpness check needs an n_grid".into(),
                ));
            }
            let window = p
                .slope_window
                .or_else(|| default_slope_window(g.family()))
                .ok_or(CoreError::InvalidArgument(
                    "no expected slope window is known for this family; pass slope_window".into(),
                ))?;
            bounds::check_sharpness(g, &p.n_grid, mc, step_cap, window)
        }
        BoundId::LocalTime => bounds::check_local_time(g, p.need_t()?, p.window, mc, step_cap),
        BoundId::ReturnProbability => bounds::check_return_probability(g, g.origin(), p.need_t()?),
        BoundId::LinearRange => {
            if p.t_grid.is_empty() {
                return Err(CoreError::InvalidArgument(
                    "the linear-range check needs a t_grid".into(),
                ));
            }
            bounds::check_linear_range(g, &p.t_grid, p.ell_horizon, p.window, mc, step_cap)
        }
    }
}

/// The checks `"all"` expands to on this graph. Checks whose preconditions
/// the graph cannot meet are left out up front; the remainder may still be
/// skipped at run time (flagged profile data, infeasible exact solves).
fn applicable_bounds(g: &GraphHandle, p: &BoundParams) -> Vec<BoundId> {
    let mut ids = vec![
        BoundId::MainEstimate,
        BoundId::UniversalDiscovery,
        BoundId::UniversalRange,
        BoundId::Escape,
        BoundId::Packing,
        BoundId::LocalTime,
        BoundId::ReturnProbability,
        BoundId::LinearRange,
    ];
    if g.vertex_count().is_some() {
        ids.insert(0, BoundId::NeighborHit);
    }
    if !p.n_grid.is_empty()
        && (p.slope_window.is_some() || default_slope_window(g.family()).is_some())
    {
        ids.push(BoundId::Sharpness);
    }
    ids
}

fn verify(
    g: &GraphHandle,
    names: &[String],
    params: &BoundParams,
    master_seed: u64,
    step_cap: u64,
) -> Result<TaskOutput> {
    let wildcard = names.iter().any(|s| s == "all");
    let mut effective = params.clone();
    if wildcard {
        // Fill the gaps so the wildcard exercises every runnable check.
        if effective.n.is_none() {
            let n = g.vertex_count().map_or(8, |v| (v as u64).min(8));
            effective.n = Some(n);
        }
        if effective.t.is_none() {
            effective.t = Some(100);
        }
        if effective.t_grid.is_empty() {
            effective.t_grid = vec![100, 1000];
        }
    }

    let ids: Vec<BoundId> = if wildcard {
        applicable_bounds(g, &effective)
    } else {
        names
            .iter()
            .map(|s| BoundId::parse(s).ok_or_else(|| anyhow!("unknown bound id '{s}'")))
            .collect::<Result<_>>()?
    };

    let mut reports: Vec<BoundReport> = Vec::new();
    let mut skipped: Vec<Value> = Vec::new();
    for id in ids {
        match run_bound_check(id, g, &effective, master_seed, step_cap) {
            Ok(report) => reports.push(report),
            // The wildcard runs what it can and records why the rest were
            // inapplicable; explicitly requested checks fail the run.
            Err(e) if wildcard => {
                skipped.push(json!({"bound": id.as_str(), "reason": e.to_string()}));
            }
            Err(e) => return Err(anyhow!("check {} failed: {e}", id.as_str())),
        }
    }

    let any_violated = reports.iter().any(|r| r.verdict == Verdict::Violated);
    let rows = reports.iter().map(|r| r.csv_row()).collect();
    let results = json!({
        "reports": serde_json::to_value(&reports).expect("reports serialize"),
        "skipped": skipped,
    });
    Ok(TaskOutput {
        csv: CsvFile { name: "verify.csv", header: BoundReport::CSV_HEADER, rows },
        extra_csv: None,
        results,
        any_violated,
        partial: false,
    })
}

// --- sharpness ----------------------------------------------------------------

fn sharpness(
    g: &GraphHandle,
    n_grid: &[u64],
    replicates: u64,
    slope_window: Option<(f64, f64)>,
    master_seed: u64,
    step_cap: u64,
) -> Result<TaskOutput> {
    let mc = MonteCarlo { replicates, master_seed };
    let fit = bounds::sharpness_fit(g, n_grid, mc, step_cap)
        .map_err(|e| anyhow!("sharpness fit failed: {e}"))?;
    let window = slope_window.or_else(|| default_slope_window(g.family()));
    let report = window
        .map(|w| bounds::check_sharpness(g, n_grid, mc, step_cap, w))
        .transpose()
        .map_err(|e| anyhow!("sharpness check failed: {e}"))?;

    let rows = fit
        .per_point
        .iter()
        .map(|(n, e)| {
            format!(
                "{n},{},{},{},{}",
                bounds::fmt_float(e.mean),
                bounds::fmt_float(e.std_error),
                e.n,
                e.censored
            )
        })
        .collect();
    let results = json!({
        "fit": serde_json::to_value(&fit).expect("fit serializes"),
        "report": report.as_ref().map(|r| serde_json::to_value(r).expect("report serializes")),
    });
    Ok(TaskOutput {
        csv: CsvFile {
            name: "sharpness.csv",
            header: "n,mean,std_error,replicates,censored",
            rows,
        },
        extra_csv: None,
        results,
        any_violated: false,
        partial: fit.per_point.iter().any(|(_, e)| e.censored > 0),
    })
}

// --- oscillation ----------------------------------------------------------------

fn oscillation(
    g: &GraphHandle,
    t_min: u64,
    t_max: u64,
    per_decade: u32,
    window: usize,
    replicates: u64,
    master_seed: u64,
    step_cap: u64,
) -> Result<TaskOutput> {
    let grid = fit::geometric_grid(t_min, t_max, per_decade)
        .map_err(|e| anyhow!("bad oscillation grid: {e}"))?;
    let mc = MonteCarlo { replicates, master_seed };
    let profile = bounds::oscillation_profile(g, &grid, window, mc, step_cap)
        .map_err(|e| anyhow!("oscillation scan failed: {e}"))?;

    let rows = profile
        .grid
        .iter()
        .zip(&profile.means)
        .map(|(t, e)| {
            format!(
                "{t},{},{},{},{}",
                bounds::fmt_float(e.mean),
                bounds::fmt_float(e.std_error),
                e.n,
                e.censored
            )
        })
        .collect();
    let partial = profile.means.iter().any(|e| e.censored > 0);
    let results = serde_json::to_value(&profile).expect("profile serializes");
    Ok(TaskOutput {
        csv: CsvFile {
            name: "oscillation.csv",
            header: "t,mean,std_error,replicates,censored",
            rows,
        },
        extra_csv: None,
        results,
        any_violated: false,
        partial,
    })
}
