//! The versioned JSON run configuration and its validation.

use anyhow::{anyhow, bail, Result};
use range_lab_core::graph::{catalog, GraphHandle};
use range_lab_core::walk;
use serde::{Deserialize, Serialize};

/// Schema understood by this binary; configs must declare it.
pub const SCHEMA_VERSION: u32 = 1;

/// One batch run: a graph, a task on it, and reproducibility knobs.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub graph: GraphSpec,
    pub task: TaskSpec,
    #[serde(default)]
    pub master_seed: u64,
    /// Per-replicate step cap. The `RANGE_LAB_STEP_CAP` environment variable
    /// overrides this; the engine default applies when both are absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_cap: Option<u64>,
    /// Where reports are written; the `--output` flag overrides.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
}

/// Graph selection: a catalog family, its numeric parameters, and an
/// optional truncation radius applied after construction.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<u64>,
}

impl GraphSpec {
    pub fn build(&self) -> Result<GraphHandle> {
        let g = catalog::build(&self.family, &self.params)
            .map_err(|e| anyhow!("cannot build graph: {e}"))?;
        match self.truncate {
            Some(radius) => range_lab_core::graph::truncate(&g, radius)
                .map_err(|e| anyhow!("cannot truncate graph: {e}")),
            None => Ok(g),
        }
    }
}

/// What to do with the graph.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskSpec {
    /// Monte Carlo estimation: discovery times over `n_grid`, or range over
    /// `t_grid` (exactly one must be given).
    Simulate {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        n_grid: Vec<u64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        t_grid: Vec<u64>,
        replicates: u64,
    },
    /// Exact finite-system curves: expected discovery times over `n_grid`
    /// and/or the origin return-probability curve up to `return_t`.
    Exact {
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        n_grid: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        return_t: Option<u64>,
    },
    /// Edge-density and volume-growth profile up to `n_max`.
    Coarse { n_max: u64 },
    /// Verify the named bounds (or `"all"` for every applicable one).
    Verify {
        bounds: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<u64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        n_grid: Vec<u64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        t_grid: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        replicates: Option<u64>,
        /// Escape check: the leaving set is `ball(origin, s_radius)`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s_radius: Option<u64>,
        /// Local-time scans on lazy graphs look this far from the origin.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<u64>,
        /// Expected log-log slope window for the sharpness fit.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slope_window: Option<[f64; 2]>,
        /// Horizon approximating the limiting local-time rate in the
        /// linear-range check.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ell_horizon: Option<u64>,
    },
    /// Fit the growth exponent of discovery times over `n_grid`.
    Sharpness {
        n_grid: Vec<u64>,
        replicates: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slope_window: Option<[f64; 2]>,
    },
    /// Windowed range-growth slopes over a geometric time grid.
    Oscillation {
        t_min: u64,
        t_max: u64,
        per_decade: u32,
        window: usize,
        replicates: u64,
    },
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            bail!(
                "unsupported schema_version {} (this binary speaks {SCHEMA_VERSION})",
                self.schema_version
            );
        }
        let ascending = |xs: &[u64]| xs.windows(2).all(|w| w[0] < w[1]);
        match &self.task {
            TaskSpec::Simulate { n_grid, t_grid, replicates } => {
                if n_grid.is_empty() == t_grid.is_empty() {
                    bail!("simulate needs exactly one of n_grid / t_grid");
                }
                if !ascending(n_grid) || !ascending(t_grid) {
                    bail!("grids must be strictly ascending");
                }
                if n_grid.first() == Some(&0) || t_grid.first() == Some(&0) {
                    bail!("grid values must be positive");
                }
                if *replicates == 0 {
                    bail!("replicates must be positive");
                }
            }
            TaskSpec::Exact { n_grid, return_t } => {
                if n_grid.is_empty() && return_t.is_none() {
                    bail!("exact needs n_grid and/or return_t");
                }
                if !ascending(n_grid) || n_grid.first() == Some(&0) {
                    bail!("n_grid must be strictly ascending and positive");
                }
            }
            TaskSpec::Coarse { n_max } => {
                if *n_max == 0 {
                    bail!("n_max must be positive");
                }
            }
            TaskSpec::Verify { bounds, n_grid, t_grid, replicates, .. } => {
                if bounds.is_empty() {
                    bail!("verify needs at least one bound id (or \"all\")");
                }
                for b in bounds {
                    if b != "all" && range_lab_core::bounds::BoundId::parse(b).is_none() {
                        bail!("unknown bound id '{b}'");
                    }
                }
                if !ascending(n_grid) || !ascending(t_grid) {
                    bail!("grids must be strictly ascending");
                }
                if replicates == &Some(0) {
                    bail!("replicates must be positive");
                }
            }
            TaskSpec::Sharpness { n_grid, replicates, .. } => {
                if n_grid.is_empty() || !ascending(n_grid) || n_grid[0] < 2 {
                    bail!("sharpness needs a strictly ascending n_grid starting at n >= 2");
                }
                if *replicates == 0 {
                    bail!("replicates must be positive");
                }
            }
            TaskSpec::Oscillation { t_min, t_max, per_decade, window, replicates } => {
                if *t_min < 2 || t_max <= t_min {
                    bail!("oscillation needs 2 <= t_min < t_max");
                }
                if *per_decade == 0 || *window < 3 || *replicates == 0 {
                    bail!("oscillation needs per_decade >= 1, window >= 3, replicates >= 1");
                }
            }
        }
        Ok(())
    }

    /// Effective step cap: environment override, then config, then default.
    pub fn step_cap(&self) -> u64 {
        if std::env::var(walk::STEP_CAP_ENV).is_ok() {
            return walk::step_cap_from_env();
        }
        self.step_cap.unwrap_or(walk::DEFAULT_STEP_CAP)
    }
}
