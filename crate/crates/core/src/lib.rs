//! Fixed points and best proximity points of pseudocontractive-type
//! self-mappings on convex subsets of Euclidean space.
//!
//! The crate provides:
//!
//! * norm-induced metrics and the squared-distance envelope bounds
//!   ([`metric`]);
//! * closed convex sets with exact projections and alternating-projection
//!   set distance ([`sets`]);
//! * the parameterized contraction inequalities, slack sequences ξ_n,
//!   contraction constants, parameter-region predicates, and a classifier
//!   for intermediate-sense schedule regimes ([`contraction`], [`params`]);
//! * Picard orbits of piecewise-affine maps with distance traces and
//!   fixed-point extraction ([`iterate`]);
//! * 2-cyclic mappings, cyclicity verification, and best-proximity runs
//!   with even/odd subsequence analysis ([`cyclic`]);
//! * a corpus of closed-form scenarios and a JSON scenario-file loader
//!   ([`scenario`]).
//!
//! All values are immutable once constructed and every operation is pure,
//! so everything here can be used concurrently without coordination.

pub mod contraction;
pub mod cyclic;
pub mod error;
pub mod iterate;
pub mod metric;
pub mod params;
pub mod point;
pub mod rng;
pub mod scenario;
pub mod sets;

pub use contraction::{
    bound_check, classify_schedule, classify_schedule_with, cyclic_slack_condition,
    definition_checks, empirical_mu, inequality_residual, k_expansive, k_nonexpansive,
    limit_condition, low_beta_band, low_beta_band_distance_scaled, region_xi_zero, step_report,
    xi_slack, ContractionReport, DefinitionCheck, InequalityVariant, ScheduleClass, StepBranch,
    StrictMuBand, XiZeroRegion,
};
pub use cyclic::{
    best_proximity_run, cyclic_k, gamma_floor, gamma_floor_from_k, gamma_margin_schedule,
    gamma_step_constraint, proximity_distance_trace, verify_cyclicity, CyclicPair,
    CyclicityFailure, ProximityResult,
};
pub use error::{Error, Result};
pub use iterate::{
    detect_fixed_point, orbit, pair_trace, squared_gap_deltas, tail_residuals, AffinePiece,
    IterationTrace, MapDef, DEFAULT_MAX_STEPS, DEFAULT_TOL,
};
pub use metric::{distance, envelope_residuals, MetricDef};
pub use params::{
    tail_window, OverN, ParamPoint, ParamSchedule, RawParams, ScheduleFamily, ScheduleLimits,
};
pub use point::Point;
pub use scenario::{
    builtin, builtin_scenarios, load_scenario, Expected, ExpectedValue, Scenario, SetPair,
};
pub use sets::{
    set_distance, set_distance_default, ConvexSetDescriptor, Halfspace, MEMBERSHIP_TOL,
};
