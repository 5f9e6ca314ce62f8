//! Normalized delivery time (NDT) analysis for M x K fog radio access
//! networks whose cloud reaches the edge nodes over a multicast fronthaul.
//!
//! - [`scheme`]: fronthaul/edge NDTs of zero forcing, interference
//!   alignment, cloud-aided delivery and coded multicast, plus time sharing.
//! - [`regime`]: fronthaul-rate breakpoints and the best scheme at mu = 1/M.
//! - [`envelope`]: the achievable NDT, as a closed form and as a plan.
//! - [`bounds`]: edge and cut-set lower bounds, optimality-gap audits.
//! - [`multicast`]: bit-level run of the coded-multicast protocol.
//! - [`sweep`]: parameter grids and per-point rows.

pub mod bounds;
pub mod config;
pub mod envelope;
pub mod error;
pub mod multicast;
pub mod ndt;
pub mod regime;
pub mod scheme;
pub mod sweep;

pub use bounds::{
    gap_audit, lower_bound, lower_bound_term, optimality_gap, BoundBreakdown, CutSetTerm,
    GapReport, GapViolation,
};
pub use config::NetworkConfig;
pub use envelope::{achievable_ndt, achievable_plan, regime_of, Anchor, DeliveryPlan, Regime};
pub use error::{Error, Result};
pub use multicast::{run_delivery, simulate_delivery, DeliveryReport};
pub use ndt::{pipelined_ndt, serial_ndt, Ndt, NdtPair};
pub use regime::{
    best_pipelined_at_cache_one_over_m, regime_thresholds, BestPipelined, PipelinedBranch,
    RegimeThresholds,
};
pub use scheme::{scheme_ndt, time_share, SchemeId, TimeShare};
pub use sweep::{evaluate_point, Quantity, Scalar, SweepRow, SweepSpec, ValueSpec};
