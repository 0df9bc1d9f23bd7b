//! The parameterized contraction inequalities, their slack sequences,
//! contraction constants, parameter regions, and the schedule classifier.
//!
//! Everything here is arithmetic over a `ParamPoint` (α, β, μ, γ) and a pair
//! of distances `d_xy = d(x, y)`, `d_t = d(T^n x, T^n y)`:
//!
//! * the contractive inequality in its cross-term form
//!   `d_t² ≤ α d_xy² + β (d_xy² + d_t²) + 2 μ β d_xy d_t + ξ (+ γ D²)`
//!   or its squared-term form, where `2 μ β d_xy d_t` becomes `2 μ β d_t²`;
//! * the slack ξ = max(0, (1−β) d_t² − (α+β) d_xy² − μ-term) chosen so the
//!   inequality holds with equality or better;
//! * the contraction constants `k = (α + β(1+2μ)) / (1−β)` (nonexpansive
//!   branch) and `k = (α + β) / (1 − β(1+2μ))` (expansive branch), whose
//!   joint limit condition is `α + 2β(1+μ) → 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{tail_window, ParamPoint, ParamSchedule, RawParams, ScheduleFamily};

/// Numerical slack for inequality verdicts.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// Which form the contractive inequality takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityVariant {
    /// μ-term couples both distances: 2 μ β d(x,y) d(Tx,Ty).
    CrossTerm,
    /// μ-term uses the image distance squared: 2 μ β d²(Tx,Ty).
    SquaredTerm,
    /// Cross-term form with the cyclic γ D² allowance.
    CyclicCrossTerm,
    /// Squared-term form with the cyclic γ D² allowance.
    CyclicSquaredTerm,
}

impl InequalityVariant {
    pub fn is_cyclic(self) -> bool {
        matches!(self, Self::CyclicCrossTerm | Self::CyclicSquaredTerm)
    }

    pub fn squared_mu_term(self) -> bool {
        matches!(self, Self::SquaredTerm | Self::CyclicSquaredTerm)
    }
}

/// Which proof branch a step falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepBranch {
    /// d(T^n x, T^n y) <= d(x, y); constant (α + β(1+2μ)) / (1−β).
    Nonexpansive,
    /// d(T^n x, T^n y) >= d(x, y); constant (α + β) / (1 − β(1+2μ)).
    Expansive,
}

/// Per-step evaluation of the contractive inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    /// Slack ξ making the inequality hold (0 when it holds on its own).
    pub xi: f64,
    /// RHS − LHS of the inequality with ξ included.
    pub residual: f64,
    /// Contraction constant of the step branch, when its denominator allows.
    pub k: Option<f64>,
    pub branch: StepBranch,
    /// Whether the inequality holds (residual >= −1e−12).
    pub holds: bool,
}

/// Minimal feasible cross-term coefficient ρ in [−1, 1] with
/// `d_diff² ≤ d_xy² + d_t² + 2 ρ d_xy d_t`, where `d_diff` is the distance
/// between the difference vectors x − y and T^n x − T^n y.
///
/// When `d_xy · d_t` vanishes every ρ is feasible and the minimum of the
/// interval, −1, is returned. Errors when the triple violates the envelope
/// bounds by more than 1e−9 (no feasible ρ exists then).
pub fn empirical_mu(d_xy: f64, d_t: f64, d_diff: f64) -> Result<f64> {
    for (v, name) in [(d_xy, "d_xy"), (d_t, "d_t"), (d_diff, "d_diff")] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::RejectedInput(format!(
                "{name} must be a nonnegative finite distance, got {v}"
            )));
        }
    }
    let d2 = d_diff * d_diff;
    let lo = (d_xy - d_t) * (d_xy - d_t);
    let hi = (d_xy + d_t) * (d_xy + d_t);
    let violation = (lo - d2).max(d2 - hi);
    if violation > 1e-9 {
        return Err(Error::InconsistentDistances {
            d_xy,
            d_t,
            d_diff,
            violation,
        });
    }
    let product = d_xy * d_t;
    if product < 1e-12 {
        return Ok(-1.0);
    }
    Ok(((d2 - d_xy * d_xy - d_t * d_t) / (2.0 * product)).clamp(-1.0, 1.0))
}

/// Raw (unclamped) slack of the inequality: LHS − RHS with ξ = 0, γ = 0.
fn raw_slack(variant: InequalityVariant, p: &ParamPoint, d_xy: f64, d_t: f64) -> f64 {
    let mu_term = if variant.squared_mu_term() {
        2.0 * p.mu() * p.beta() * d_t * d_t
    } else {
        2.0 * p.mu() * p.beta() * d_xy * d_t
    };
    (1.0 - p.beta()) * d_t * d_t - (p.alpha() + p.beta()) * d_xy * d_xy - mu_term
}

/// Slack ξ_n >= 0 making the inequality hold with equality or better:
/// max(0, (1−β) d_t² − (α+β) d_xy² − μ-term).
///
/// ξ = 0 exactly when the inequality already holds without help. The cyclic
/// γ D² allowance is not part of ξ; it enters the residual and the reported
/// cyclic condition ξ − γ D² separately.
pub fn xi_slack(variant: InequalityVariant, p: &ParamPoint, d_xy: f64, d_t: f64) -> f64 {
    raw_slack(variant, p, d_xy, d_t).max(0.0)
}

/// The cyclic slack condition ξ_n − γ_n D², the quantity that must vanish
/// asymptotically for a valid cyclic schedule (ξ itself only has to approach
/// the γ D² allowance, not zero, when the sets are apart).
pub fn cyclic_slack_condition(
    variant: InequalityVariant,
    p: &ParamPoint,
    d_xy: f64,
    d_t: f64,
    set_gap: f64,
) -> f64 {
    xi_slack(variant, p, d_xy, d_t) - p.gamma() * set_gap * set_gap
}

/// Contraction constant of the nonexpansive branch,
/// `(α + β(1 + 2μ)) / (1 − β)`. Requires β < 1; at or above 1 the branch is
/// excluded (positive slack would make the bound unbounded).
///
/// Equals 1 exactly when α + 2β(1 + μ) = 1.
pub fn k_nonexpansive(p: &ParamPoint) -> Result<f64> {
    if p.beta() >= 1.0 {
        return Err(Error::DivisionRegime(format!(
            "nonexpansive-branch constant needs beta < 1, got {}",
            p.beta()
        )));
    }
    Ok((p.alpha() + p.beta() * (1.0 + 2.0 * p.mu())) / (1.0 - p.beta()))
}

/// Contraction constant of the expansive branch,
/// `(α + β) / (1 − β(1 + 2μ))`. Requires β(1 + 2μ) < 1.
///
/// At least 1 exactly when μ >= (1 − α − 2β) / (2β) (for β > 0), i.e. when
/// μ sits in the expansive μ-band.
pub fn k_expansive(p: &ParamPoint) -> Result<f64> {
    let denom = 1.0 - p.beta() * (1.0 + 2.0 * p.mu());
    if denom <= 0.0 {
        return Err(Error::DivisionRegime(format!(
            "expansive-branch constant needs beta (1 + 2 mu) < 1, got {}",
            p.beta() * (1.0 + 2.0 * p.mu())
        )));
    }
    Ok((p.alpha() + p.beta()) / denom)
}

/// The three-way disjunction on (μ, β) equivalent to ξ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XiZeroRegion {
    /// β < 1 and μ in [−(α+β)/(2β), (1−α−2β)/(2β)].
    LowBeta,
    /// β > 1 and μ below −(α+β)/(2β).
    HighBeta,
    /// μ in [(1−α−2β)/(2β), (1−β)/(2β)].
    MuBand,
    /// None of the three disjuncts.
    None,
}

impl std::fmt::Display for XiZeroRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            XiZeroRegion::LowBeta => "low_beta",
            XiZeroRegion::HighBeta => "high_beta",
            XiZeroRegion::MuBand => "mu_band",
            XiZeroRegion::None => "none",
        };
        f.write_str(s)
    }
}

/// Classify (α, β, μ) into the ξ = 0 disjunction, first match in the listed
/// order. β = 0 degenerates to the low-β disjunct.
pub fn region_xi_zero(p: &ParamPoint) -> XiZeroRegion {
    let (alpha, beta, mu) = (p.alpha(), p.beta(), p.mu());
    if beta == 0.0 {
        return XiZeroRegion::LowBeta;
    }
    let low = -(alpha + beta) / (2.0 * beta);
    let mid = (1.0 - alpha - 2.0 * beta) / (2.0 * beta);
    let high = (1.0 - beta) / (2.0 * beta);
    if beta < 1.0 && mu >= low && mu <= mid {
        XiZeroRegion::LowBeta
    } else if beta > 1.0 && mu < low {
        XiZeroRegion::HighBeta
    } else if mu >= mid && mu <= high {
        XiZeroRegion::MuBand
    } else {
        XiZeroRegion::None
    }
}

/// Endpoints of the low-β μ-band, `[−(α+β)/(2β), (1−α−2β)/(2β)]`.
/// Nonempty exactly when β <= 1.
pub fn low_beta_band(p: &ParamPoint) -> Option<(f64, f64)> {
    if p.beta() == 0.0 {
        return None;
    }
    let low = -(p.alpha() + p.beta()) / (2.0 * p.beta());
    let mid = (1.0 - p.alpha() - 2.0 * p.beta()) / (2.0 * p.beta());
    Some((low, mid))
}

/// The low-β μ-band with its upper endpoint scaled by the pair distance,
/// `[−(α+β)/(2β), (1−α−2β)/(2β d_xy)]`. The distance-free band is the one
/// the analysis uses throughout; this variant is exposed for comparison.
pub fn low_beta_band_distance_scaled(p: &ParamPoint, d_xy: f64) -> Option<(f64, f64)> {
    if p.beta() == 0.0 || d_xy <= 0.0 {
        return None;
    }
    let low = -(p.alpha() + p.beta()) / (2.0 * p.beta());
    let mid = (1.0 - p.alpha() - 2.0 * p.beta()) / (2.0 * p.beta() * d_xy);
    Some((low, mid))
}

/// RHS − LHS of the chosen inequality variant, with the supplied ξ and, for
/// cyclic variants, the γ D² allowance (`set_gap` is D). `holds` is residual
/// >= −1e−12.
pub fn inequality_residual(
    variant: InequalityVariant,
    p: &ParamPoint,
    d_xy: f64,
    d_t: f64,
    xi: f64,
    set_gap: f64,
) -> (f64, bool) {
    let mu_term = if variant.squared_mu_term() {
        2.0 * p.mu() * p.beta() * d_t * d_t
    } else {
        2.0 * p.mu() * p.beta() * d_xy * d_t
    };
    let gamma_term = if variant.is_cyclic() {
        p.gamma() * set_gap * set_gap
    } else {
        0.0
    };
    let residual =
        p.alpha() * d_xy * d_xy + p.beta() * (d_xy * d_xy + d_t * d_t) + mu_term + xi + gamma_term
            - d_t * d_t;
    (residual, residual >= -RESIDUAL_TOL)
}

/// Verify the branch bound `d_t² ≤ k d_xy² + ξ / denom` for the step branch,
/// where k and denom are the branch's constant and denominator.
///
/// For μ >= 0 the bound is implied by the inequality holding with its own
/// slack (the μ-term substitution is a majorization there); for μ < 0 it is
/// an independent check that can fail even when the inequality holds.
///
/// Errors when the inputs are not in the branch (wrong distance ordering or
/// a denominator outside its regime).
pub fn bound_check(
    branch: StepBranch,
    p: &ParamPoint,
    d_xy: f64,
    d_t: f64,
    xi: f64,
) -> Result<bool> {
    let rhs = match branch {
        StepBranch::Nonexpansive => {
            if d_t > d_xy + RESIDUAL_TOL {
                return Err(Error::BranchMismatch(format!(
                    "nonexpansive branch requires d_t <= d_xy, got {d_t} > {d_xy}"
                )));
            }
            let k = k_nonexpansive(p).map_err(|_| {
                Error::BranchMismatch("nonexpansive branch requires beta < 1".into())
            })?;
            k * d_xy * d_xy + xi / (1.0 - p.beta())
        }
        StepBranch::Expansive => {
            if d_t < d_xy - RESIDUAL_TOL {
                return Err(Error::BranchMismatch(format!(
                    "expansive branch requires d_t >= d_xy, got {d_t} < {d_xy}"
                )));
            }
            let k = k_expansive(p).map_err(|_| {
                Error::BranchMismatch("expansive branch requires beta (1 + 2 mu) < 1".into())
            })?;
            let denom = 1.0 - p.beta() * (1.0 + 2.0 * p.mu());
            k * d_xy * d_xy + xi / denom
        }
    };
    // the bound can hold with exact equality, so compare with a tolerance
    // scaled to the magnitudes involved
    let tol = RESIDUAL_TOL * (1.0 + rhs.abs() + d_t * d_t);
    Ok(d_t * d_t <= rhs + tol)
}

/// Evaluate one step of the inequality: slack, residual, branch, and the
/// branch contraction constant. At β = 1 the nonexpansive constant is
/// undefined and an expansive-branch-only analysis is reported.
pub fn step_report(
    variant: InequalityVariant,
    p: &ParamPoint,
    d_xy: f64,
    d_t: f64,
    set_gap: f64,
) -> ContractionReport {
    let xi = xi_slack(variant, p, d_xy, d_t);
    let (residual, holds) = inequality_residual(variant, p, d_xy, d_t, xi, set_gap);
    let branch = if d_t <= d_xy {
        StepBranch::Nonexpansive
    } else {
        StepBranch::Expansive
    };
    let k = match branch {
        StepBranch::Nonexpansive => k_nonexpansive(p).or_else(|_| k_expansive(p)).ok(),
        StepBranch::Expansive => k_expansive(p).ok(),
    };
    ContractionReport {
        xi,
        residual,
        k,
        branch,
        holds,
    }
}

/// True when `α_n + 2 β_n (1 + μ_n)` stays within `tol` of 1 across the
/// schedule's tail window at the given horizon.
pub fn limit_condition(schedule: &ParamSchedule, horizon: usize, tol: f64) -> bool {
    if horizon == 0 {
        return false;
    }
    let window = tail_window(horizon);
    (horizon - window + 1..=horizon).all(|n| {
        let p = schedule.at(n);
        (p.alpha() + 2.0 * p.beta() * (1.0 + p.mu()) - 1.0).abs() < tol
    })
}

/// Verdicts of the schedule classifier, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScheduleClass {
    /// β constant in [0,1), α_n ↓ 1, μ_n → −1.
    StrictPseudoIS,
    /// β_n → 1 in [0,1], α_n ↓ 1, μ_n → −1.
    PseudoIS,
    /// β constant in [0,1), α_n → α in [0,1), μ_n → μ below the strict band.
    StrictContractiveIS,
    /// β_n → 1 in [0,1), α_n → α in [0,1), μ_n → μ in [−1, −(1+α)/2).
    ContractiveIS,
    Unclassified,
}

impl std::fmt::Display for ScheduleClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which μ-limit band the strict-contractive check uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrictMuBand {
    /// μ < (1 − α − 2β) / (2β); the default.
    AlphaAdjusted,
    /// μ < (1−β)/(2β) · min(1, 1/(α+β)); the alternative reading.
    Scaled,
}

/// Outcome of testing one definition's membership and limit conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefinitionCheck {
    pub class: ScheduleClass,
    pub passed: bool,
    /// First violated condition, with the index where it failed when
    /// pointwise.
    pub failure: Option<String>,
}

struct SeqView {
    points: Vec<ParamPoint>,
    lim: RawParams,
    window_start: usize,
}

impl SeqView {
    fn new(schedule: &ParamSchedule, horizon: usize) -> Self {
        let points = (1..=horizon).map(|n| schedule.at(n)).collect();
        let lim = schedule.limit_params();
        let window_start = horizon - tail_window(horizon) + 1;
        Self {
            points,
            lim,
            window_start,
        }
    }

    /// First n (1-based) where the predicate fails.
    fn first_violation(&self, f: impl Fn(&ParamPoint) -> bool) -> Option<usize> {
        self.points.iter().position(|p| !f(p)).map(|i| i + 1)
    }

    /// Deviations from the limit must not grow (within tol) across the tail
    /// window; guards against limits inconsistent with the emitted tail.
    fn tail_consistent(&self, get: impl Fn(&ParamPoint) -> f64, lim: f64, tol: f64) -> bool {
        let devs: Vec<f64> = self.points[self.window_start - 1..]
            .iter()
            .map(|p| (get(p) - lim).abs())
            .collect();
        devs.windows(2).all(|w| w[1] <= w[0] + tol)
    }
}

/// Strict upper bound (1 − β)/(2β), +∞ at β = 0.
fn mu_upper(beta: f64) -> f64 {
    if beta == 0.0 {
        f64::INFINITY
    } else {
        (1.0 - beta) / (2.0 * beta)
    }
}

fn check_strict_pseudo(v: &SeqView, tol: f64) -> DefinitionCheck {
    let class = ScheduleClass::StrictPseudoIS;
    let beta0 = v.points[0].beta();
    let fail = |failure: String| DefinitionCheck {
        class,
        passed: false,
        failure: Some(failure),
    };
    if let Some(n) = v.first_violation(|p| (p.beta() - beta0).abs() <= 1e-12) {
        return fail(format!("beta_n not constant at n={n}"));
    }
    if !(0.0..1.0).contains(&beta0) {
        return fail(format!("constant beta {beta0} outside [0, 1)"));
    }
    if let Some(n) = v.first_violation(|p| p.alpha() >= 1.0 - 1e-12) {
        return fail(format!("alpha_n below 1 at n={n}"));
    }
    if let Some(n) = v.first_violation(|p| p.mu() >= -1.0 - 1e-12 && p.mu() < mu_upper(beta0)) {
        return fail(format!("mu_n outside [-1, (1-beta)/(2 beta)) at n={n}"));
    }
    if (v.lim.alpha - 1.0).abs() > tol || !v.tail_consistent(|p| p.alpha(), v.lim.alpha, tol) {
        return fail(format!("alpha limit {} is not 1", v.lim.alpha));
    }
    if (v.lim.mu + 1.0).abs() > tol || !v.tail_consistent(|p| p.mu(), v.lim.mu, tol) {
        return fail(format!("mu limit {} is not -1", v.lim.mu));
    }
    DefinitionCheck {
        class,
        passed: true,
        failure: None,
    }
}

fn check_pseudo(v: &SeqView, tol: f64) -> DefinitionCheck {
    let class = ScheduleClass::PseudoIS;
    let fail = |failure: String| DefinitionCheck {
        class,
        passed: false,
        failure: Some(failure),
    };
    if let Some(n) = v.first_violation(|p| p.beta() <= 1.0 + 1e-12) {
        return fail(format!("beta_n above 1 at n={n}"));
    }
    if let Some(n) = v.first_violation(|p| p.alpha() >= 1.0 - 1e-12) {
        return fail(format!("alpha_n below 1 at n={n}"));
    }
    if let Some(n) = v.first_violation(|p| p.mu() >= -1.0 - 1e-12 && p.mu() < mu_upper(p.beta())) {
        return fail(format!("mu_n outside [-1, (1-beta_n)/(2 beta_n)) at n={n}"));
    }
    if (v.lim.alpha - 1.0).abs() > tol || !v.tail_consistent(|p| p.alpha(), v.lim.alpha, tol) {
        return fail(format!("alpha limit {} is not 1", v.lim.alpha));
    }
    if (v.lim.beta - 1.0).abs() > tol || !v.tail_consistent(|p| p.beta(), v.lim.beta, tol) {
        return fail(format!("beta limit {} is not 1", v.lim.beta));
    }
    if (v.lim.mu + 1.0).abs() > tol || !v.tail_consistent(|p| p.mu(), v.lim.mu, tol) {
        return fail(format!("mu limit {} is not -1", v.lim.mu));
    }
    DefinitionCheck {
        class,
        passed: true,
        failure: None,
    }
}

fn check_strict_contractive(v: &SeqView, tol: f64, band: StrictMuBand) -> DefinitionCheck {
    let class = ScheduleClass::StrictContractiveIS;
    let beta0 = v.points[0].beta();
    let fail = |failure: String| DefinitionCheck {
        class,
        passed: false,
        failure: Some(failure),
    };
    if let Some(n) = v.first_violation(|p| (p.beta() - beta0).abs() <= 1e-12) {
        return fail(format!("beta_n not constant at n={n}"));
    }
    if !(0.0..1.0).contains(&beta0) {
        return fail(format!("constant beta {beta0} outside [0, 1)"));
    }
    if let Some(n) = v.first_violation(|p| p.mu() >= -1.0 - 1e-12 && p.mu() < mu_upper(beta0)) {
        return fail(format!("mu_n outside [-1, (1-beta)/(2 beta)) at n={n}"));
    }
    if !(v.lim.alpha >= -tol && v.lim.alpha < 1.0)
        || !v.tail_consistent(|p| p.alpha(), v.lim.alpha, tol)
    {
        return fail(format!("alpha limit {} outside [0, 1)", v.lim.alpha));
    }
    let mu_band = match band {
        StrictMuBand::AlphaAdjusted => {
            if beta0 == 0.0 {
                f64::INFINITY
            } else {
                (1.0 - v.lim.alpha - 2.0 * beta0) / (2.0 * beta0)
            }
        }
        StrictMuBand::Scaled => {
            let denom = v.lim.alpha + beta0;
            let scale = if denom <= 0.0 {
                1.0
            } else {
                (1.0 / denom).min(1.0)
            };
            mu_upper(beta0) * scale
        }
    };
    if !(v.lim.mu >= -1.0 - tol && v.lim.mu < mu_band)
        || !v.tail_consistent(|p| p.mu(), v.lim.mu, tol)
    {
        return fail(format!("mu limit {} outside [-1, {mu_band})", v.lim.mu));
    }
    DefinitionCheck {
        class,
        passed: true,
        failure: None,
    }
}

fn check_contractive(v: &SeqView, tol: f64) -> DefinitionCheck {
    let class = ScheduleClass::ContractiveIS;
    let fail = |failure: String| DefinitionCheck {
        class,
        passed: false,
        failure: Some(failure),
    };
    if let Some(n) = v.first_violation(|p| (0.0..1.0).contains(&p.beta())) {
        return fail(format!("beta_n outside [0, 1) at n={n}"));
    }
    if let Some(n) = v.first_violation(|p| p.mu() >= -1.0 - 1e-12 && p.mu() < mu_upper(p.beta())) {
        return fail(format!("mu_n outside [-1, (1-beta_n)/(2 beta_n)) at n={n}"));
    }
    if !(v.lim.alpha >= -tol && v.lim.alpha < 1.0)
        || !v.tail_consistent(|p| p.alpha(), v.lim.alpha, tol)
    {
        return fail(format!("alpha limit {} outside [0, 1)", v.lim.alpha));
    }
    if (v.lim.beta - 1.0).abs() > tol || !v.tail_consistent(|p| p.beta(), v.lim.beta, tol) {
        return fail(format!("beta limit {} is not 1", v.lim.beta));
    }
    let mu_band = -(1.0 + v.lim.alpha) / 2.0;
    if !(v.lim.mu >= -1.0 - tol && v.lim.mu < mu_band)
        || !v.tail_consistent(|p| p.mu(), v.lim.mu, tol)
    {
        return fail(format!("mu limit {} outside [-1, {mu_band})", v.lim.mu));
    }
    DefinitionCheck {
        class,
        passed: true,
        failure: None,
    }
}

/// Run all four definition checks at the given horizon, strongest first:
/// strict-contractive, contractive, strict-pseudocontractive,
/// pseudocontractive.
pub fn definition_checks(
    schedule: &ParamSchedule,
    horizon: usize,
    tol: f64,
    band: StrictMuBand,
) -> Vec<DefinitionCheck> {
    assert!(horizon >= 1, "classification needs at least one index");
    let v = SeqView::new(schedule, horizon);
    vec![
        check_strict_contractive(&v, tol, band),
        check_contractive(&v, tol),
        check_strict_pseudo(&v, tol),
        check_pseudo(&v, tol),
    ]
}

/// Classify a schedule against the four intermediate-sense definitions,
/// returning the strongest match (contractive verdicts take precedence over
/// pseudocontractive ones).
pub fn classify_schedule(schedule: &ParamSchedule, horizon: usize, tol: f64) -> ScheduleClass {
    classify_schedule_with(schedule, horizon, tol, StrictMuBand::AlphaAdjusted)
}

pub fn classify_schedule_with(
    schedule: &ParamSchedule,
    horizon: usize,
    tol: f64,
    band: StrictMuBand,
) -> ScheduleClass {
    definition_checks(schedule, horizon, tol, band)
        .into_iter()
        .find(|c| c.passed)
        .map_or(ScheduleClass::Unclassified, |c| c.class)
}

/// Convenience: a constant schedule from a single parameter point.
pub fn constant_schedule(p: &ParamPoint) -> ParamSchedule {
    ParamSchedule {
        family: ScheduleFamily::Constant {
            alpha: p.alpha(),
            beta: p.beta(),
            mu: p.mu(),
            gamma: p.gamma(),
        },
        limits: None,
    }
}
