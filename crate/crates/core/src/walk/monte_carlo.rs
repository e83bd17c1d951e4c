//! Parallel replication and summary statistics for walk experiments.
//!
//! Replicates are indexed `0..replicates`; each gets its own seed via
//! [`replicate_seed`](super::replicate_seed) and its own walk space, and the
//! results are collected *in index order* before any reduction. Mean and
//! standard error are therefore byte-identical across thread counts.
//!
//! Censoring: a replicate that hits the step cap before its stop rule
//! reports the cap time in place of any unreached discovery time, so every
//! mean over a grid with censored entries is a lower bound on the true
//! expectation. The censored count is carried on every estimate; verdict
//! logic downstream refuses to certify anything from censored data unless
//! the direction of the bound makes the lower bound conservative.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Family, GraphHandle};

use super::{run_replicate, StopRule, WalkOutcome, WalkPlan};

// ---------------------------------------------------------------------------
// Plans and estimates
// ---------------------------------------------------------------------------

/// How many replicates to run and under which master seed.
#[derive(Clone, Copy, Debug)]
pub struct MonteCarlo {
    pub replicates: u64,
    pub master_seed: u64,
}

/// A sample mean with its standard error.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    /// Number of replicates that contributed.
    pub n: u64,
    /// How many of them were censored by the step cap.
    pub censored: u64,
}

impl Estimate {
    /// Two-pass mean / standard error over an ordered sample.
    pub fn from_samples(samples: &[f64], censored: u64) -> Estimate {
        let n = samples.len() as u64;
        if n == 0 {
            return Estimate { mean: f64::NAN, std_error: f64::NAN, n: 0, censored };
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        if n == 1 {
            return Estimate { mean, std_error: f64::NAN, n, censored };
        }
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
            / (n as f64 - 1.0);
        Estimate { mean, std_error: (var / n as f64).sqrt(), n, censored }
    }

    /// Half-width of the confidence interval at normal quantile `z`.
    pub fn half_width(&self, z: f64) -> f64 {
        z * self.std_error
    }

    /// 95% confidence interval (`z = 1.96`).
    pub fn ci95(&self) -> (f64, f64) {
        let h = self.half_width(1.96);
        (self.mean - h, self.mean + h)
    }
}

/// One grid point of an estimated curve.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurvePoint {
    /// Grid coordinate: a time `t` or a discovery count `n`, per context.
    pub at: u64,
    pub estimate: Estimate,
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

/// Run all replicates of a plan, in parallel, ordered by replicate index.
pub fn run_replicates(
    g: &GraphHandle,
    plan: &WalkPlan,
    mc: MonteCarlo,
) -> Result<Vec<WalkOutcome>> {
    plan.validate()?;
    if mc.replicates == 0 {
        return Err(Error::InvalidArgument("replicate count must be positive".into()));
    }
    if let Some(v) = plan.start {
        if !g.contains(v) {
            return Err(Error::VertexNotInGraph(v));
        }
        if g.family() == Family::RegularTree && v != g.origin() {
            // Tree walks use replicate-local labels, and the graph is
            // vertex-transitive: every start is statistically the origin.
            return Err(Error::InvalidArgument(
                "regular-tree walks always start at the origin (any start is equivalent)"
                    .into(),
            ));
        }
    }
    Ok((0..mc.replicates)
        .into_par_iter()
        .map(|idx| run_replicate(g, plan, mc.master_seed, idx))
        .collect())
}

/// Estimate `E[T_n]` for each `n` in an ascending grid.
///
/// Censored replicates contribute the cap time for every unreached grid
/// point, so affected means are lower bounds.
pub fn estimate_discovery_times(
    g: &GraphHandle,
    counts: &[u64],
    mc: MonteCarlo,
    step_cap: u64,
) -> Result<Vec<CurvePoint>> {
    let Some(&target) = counts.last() else {
        return Err(Error::InvalidArgument("empty discovery grid".into()));
    };
    let plan = WalkPlan {
        stop: StopRule::TargetRange(target),
        start: None,
        record_discovery_counts: counts.to_vec(),
        record_range_at: Vec::new(),
        step_cap,
    };
    let outcomes = run_replicates(g, &plan, mc)?;
    Ok(discovery_estimates(&outcomes, counts))
}

/// Aggregate recorded discovery times into per-grid-point estimates.
///
/// The outcomes must come from a plan whose `record_discovery_counts` equals
/// `counts`. Censored replicates contribute their censoring time.
pub fn discovery_estimates(outcomes: &[WalkOutcome], counts: &[u64]) -> Vec<CurvePoint> {
    counts
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let mut censored = 0u64;
            let samples: Vec<f64> = outcomes
                .iter()
                .map(|o| match o.discovery_times[i] {
                    Some(t) => t as f64,
                    None => {
                        censored += 1;
                        o.final_time as f64
                    }
                })
                .collect();
            CurvePoint { at: k, estimate: Estimate::from_samples(&samples, censored) }
        })
        .collect()
}

/// Estimate `E[R_t]` for each `t` in an ascending grid (one walk per
/// replicate, sampled at every grid time).
pub fn estimate_range_curve(
    g: &GraphHandle,
    times: &[u64],
    mc: MonteCarlo,
    step_cap: u64,
) -> Result<Vec<CurvePoint>> {
    let Some(&horizon) = times.last() else {
        return Err(Error::InvalidArgument("empty time grid".into()));
    };
    let plan = WalkPlan {
        stop: StopRule::Horizon(horizon),
        start: None,
        record_discovery_counts: Vec::new(),
        record_range_at: times.to_vec(),
        step_cap,
    };
    let outcomes = run_replicates(g, &plan, mc)?;
    Ok(range_estimates(&outcomes, times))
}

/// Aggregate recorded ranges into per-grid-point estimates.
///
/// The outcomes must come from a plan whose `record_range_at` equals `times`.
/// Censored replicates contribute the range at the censoring time (a lower
/// bound on the true value).
pub fn range_estimates(outcomes: &[WalkOutcome], times: &[u64]) -> Vec<CurvePoint> {
    let censored = outcomes.iter().filter(|o| o.censored).count() as u64;
    times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let samples: Vec<f64> = outcomes.iter().map(|o| o.ranges[i] as f64).collect();
            CurvePoint { at: t, estimate: Estimate::from_samples(&samples, censored) }
        })
        .collect()
}
