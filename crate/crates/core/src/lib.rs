//! Simulation and verification laboratory for the range of simple random
//! walks on finite and infinite graphs.
//!
//! The crate is organized in layers:
//!
//! * [`graph`] — a catalog of finite and lazy infinite graphs behind one
//!   handle type, with balls and truncations;
//! * [`exact`] — dense linear-algebra oracles on finite graphs: hitting and
//!   return times, escape times, occupancy distributions, expected discovery
//!   times, expected range;
//! * [`walk`] — a seeded, reproducible walk engine and Monte Carlo estimators
//!   for discovery times and range;
//! * [`coarse`] — the two coarse-geometry quantities the range bounds are
//!   phrased in: densest-subgraph profiles and volume growth;
//! * [`bounds`] — evaluation and verification of the discovery-time and
//!   range inequalities, plus growth-exponent fits.

pub mod bounds;
pub mod coarse;
pub mod error;
pub mod exact;
pub mod graph;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Family, GraphHandle, VertexId};
