//! Crate-wide error type.
//!
//! Every fallible public operation returns [`Result`]. Variants carry enough
//! context to be actionable from the CLI without string-parsing.

use crate::graph::VertexId;
use thiserror::Error;

/// Errors produced by graph construction, exact solvers, and estimators.
#[derive(Debug, Error)]
pub enum Error {
    /// Catalog lookup with a family name we do not know.
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    /// Family exists but the parameters are out of range or malformed.
    #[error("invalid parameters for `{family}`: {reason}")]
    InvalidParams {
        /// Catalog family name.
        family: &'static str,
        /// Human-readable violation.
        reason: String,
    },

    /// A vertex id that does not belong to the graph was passed in.
    #[error("vertex {0:?} is not part of the graph")]
    VertexNotInGraph(VertexId),

    /// The operation needs an explicit finite graph (or a truncation).
    #[error("`{op}` requires a finite graph; truncate the lazy graph first")]
    NotFinite {
        /// Name of the rejected operation.
        op: &'static str,
    },

    /// A target/witness set that must be non-empty was empty.
    #[error("target set is empty")]
    EmptyTargetSet,

    /// A vertex subset violated a precondition (proper, connected to outside, ...).
    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),

    /// A ball/truncation request would materialize too many vertices.
    #[error("truncation would hold {vertices} vertices (cap {cap}); choose a smaller radius")]
    TruncationTooLarge {
        /// Number of vertices the request would touch.
        vertices: usize,
        /// Hard cap.
        cap: usize,
    },

    /// A linear system exceeded the dense-solver cap.
    #[error("linear system has {states} states (cap {cap})")]
    SystemTooLarge {
        /// Requested number of unknowns.
        states: usize,
        /// Hard cap.
        cap: usize,
    },

    /// LU factorization failed; the system matrix is (numerically) singular.
    #[error("linear system with {states} states is singular")]
    SingularSystem {
        /// Number of unknowns.
        states: usize,
    },

    /// A solve finished but the verified residual was out of tolerance.
    #[error("linear solve residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge {
        /// Achieved relative residual.
        residual: f64,
        /// Allowed tolerance.
        tol: f64,
    },

    /// Exhaustive subset enumeration was asked for a size beyond the cap.
    #[error("exact subset enumeration capped at n <= {cap} (asked for {n})")]
    EnumerationCapExceeded {
        /// Requested subset size.
        n: u64,
        /// Hard cap.
        cap: u64,
    },

    /// Exhaustive subset enumeration ran out of its time budget.
    #[error("subset enumeration exceeded its {budget_ms} ms budget")]
    EnumerationBudgetExceeded {
        /// Budget that was exhausted, in milliseconds.
        budget_ms: u128,
    },

    /// The visited-set backward induction grew past its state cap.
    #[error("visited-set chain needs {sets} sets (cap {cap}); lower n or use sampling")]
    VisitedChainTooLarge {
        /// Number of distinct visited sets encountered so far.
        sets: usize,
        /// Hard cap.
        cap: usize,
    },

    /// An exact computation exceeded its elementary-operation budget.
    #[error("exact computation exceeded its work cap ({units} > {cap} units)")]
    WorkCapExceeded {
        /// Work spent so far, in solver-dependent units.
        units: u128,
        /// The cap that was hit.
        cap: u128,
    },

    /// A coarse profile is missing a value the caller needs.
    #[error("coarse profile has no {kind}({index})")]
    MissingCoarseValue {
        /// `"f"` or `"g"`.
        kind: &'static str,
        /// Argument at which the profile was queried.
        index: u64,
    },

    /// A certified bound was requested from flagged (non-exact) coarse data.
    #[error("refusing to certify a bound from flagged data: {0}")]
    FlaggedProvenance(String),

    /// Catch-all for malformed arguments (empty grids, non-increasing grids, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
