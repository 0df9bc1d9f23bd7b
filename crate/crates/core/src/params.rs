//! Parameter points (α, β, μ, γ) and their n-indexed schedules.
//!
//! Schedules are the analytic families the classifier and sweep tooling
//! understand: constant, `base + c/n`, geometric decay to a limit, and an
//! explicit table. Each family has a known limit, so asymptotic conditions
//! can be checked against exact limit values instead of guessing from a
//! finite tail.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One evaluation of the parameter sequences at a fixed index n.
///
/// Invariants: α, β, γ >= 0 and μ >= −1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ParamPoint {
    alpha: f64,
    beta: f64,
    mu: f64,
    gamma: f64,
}

/// Unvalidated (α, β, μ, γ) quadruple used by schedule families and serde.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    #[serde(default)]
    pub gamma: f64,
}

impl ParamPoint {
    pub fn new(alpha: f64, beta: f64, mu: f64, gamma: f64) -> Result<Self> {
        if [alpha, beta, mu, gamma].iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "parameter point",
            });
        }
        if alpha < 0.0 || beta < 0.0 || gamma < 0.0 {
            return Err(Error::InvalidParam(format!(
                "alpha, beta, gamma must be >= 0 (got {alpha}, {beta}, {gamma})"
            )));
        }
        if mu < -1.0 {
            return Err(Error::InvalidParam(format!("mu must be >= -1 (got {mu})")));
        }
        Ok(Self {
            alpha,
            beta,
            mu,
            gamma,
        })
    }

    /// (α, β, μ) with γ = 0.
    pub fn plain(alpha: f64, beta: f64, mu: f64) -> Result<Self> {
        Self::new(alpha, beta, mu, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl TryFrom<RawParams> for ParamPoint {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        ParamPoint::new(r.alpha, r.beta, r.mu, r.gamma)
    }
}

impl From<ParamPoint> for RawParams {
    fn from(p: ParamPoint) -> Self {
        RawParams {
            alpha: p.alpha,
            beta: p.beta,
            mu: p.mu,
            gamma: p.gamma,
        }
    }
}

/// One component of a `base + c/n` schedule.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OverN {
    pub base: f64,
    #[serde(default)]
    pub c: f64,
}

impl OverN {
    pub fn constant(base: f64) -> Self {
        Self { base, c: 0.0 }
    }

    fn at(&self, n: usize) -> f64 {
        self.base + self.c / n as f64
    }
}

/// The analytic schedule families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ScheduleFamily {
    /// Same parameters at every n.
    Constant {
        alpha: f64,
        beta: f64,
        mu: f64,
        #[serde(default)]
        gamma: f64,
    },
    /// Each component follows `base + c/n`, converging to its base.
    OnePlusCOverN {
        alpha: OverN,
        beta: OverN,
        mu: OverN,
        #[serde(default)]
        gamma: OverN,
    },
    /// `limit + (start − limit) · rate^n` per component, with rate in [0, 1).
    GeometricDecayToLimit {
        start: RawParams,
        limit: RawParams,
        rate: f64,
    },
    /// Values read from a table; indices beyond the table repeat the last row.
    ExplicitTable { rows: Vec<ParamPoint> },
}

/// Declared limits of a schedule, overriding the family-derived ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleLimits {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    #[serde(default)]
    pub gamma: f64,
}

/// A parameter schedule: a family plus optional declared limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSchedule {
    #[serde(flatten)]
    pub family: ScheduleFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<ScheduleLimits>,
}

impl ParamSchedule {
    pub fn new(family: ScheduleFamily) -> Result<Self> {
        let s = Self {
            family,
            limits: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn constant(alpha: f64, beta: f64, mu: f64, gamma: f64) -> Result<Self> {
        Self::new(ScheduleFamily::Constant {
            alpha,
            beta,
            mu,
            gamma,
        })
    }

    /// Check that every emitted point satisfies the `ParamPoint` invariants.
    ///
    /// The parameter constraints are box constraints and every family moves
    /// each component monotonically between its n = 1 value and its limit, so
    /// validating both endpoints covers all n.
    pub fn validate(&self) -> Result<()> {
        match &self.family {
            ScheduleFamily::Constant {
                alpha,
                beta,
                mu,
                gamma,
            } => ParamPoint::new(*alpha, *beta, *mu, *gamma).map(|_| ()),
            ScheduleFamily::OnePlusCOverN {
                alpha,
                beta,
                mu,
                gamma,
            } => {
                ParamPoint::new(alpha.at(1), beta.at(1), mu.at(1), gamma.at(1))?;
                ParamPoint::new(alpha.base, beta.base, mu.base, gamma.base)?;
                Ok(())
            }
            ScheduleFamily::GeometricDecayToLimit { start, limit, rate } => {
                if !rate.is_finite() || !(0.0..1.0).contains(rate) {
                    return Err(Error::InvalidParam(format!(
                        "geometric decay rate must be in [0, 1), got {rate}"
                    )));
                }
                ParamPoint::try_from(*start)?;
                ParamPoint::try_from(*limit)?;
                Ok(())
            }
            ScheduleFamily::ExplicitTable { rows } => {
                if rows.is_empty() {
                    return Err(Error::InvalidParam(
                        "explicit table must have at least one row".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Parameters at index n (n >= 1).
    pub fn at(&self, n: usize) -> ParamPoint {
        assert!(n >= 1, "schedules are 1-indexed");
        let raw = match &self.family {
            ScheduleFamily::Constant {
                alpha,
                beta,
                mu,
                gamma,
            } => RawParams {
                alpha: *alpha,
                beta: *beta,
                mu: *mu,
                gamma: *gamma,
            },
            ScheduleFamily::OnePlusCOverN {
                alpha,
                beta,
                mu,
                gamma,
            } => RawParams {
                alpha: alpha.at(n),
                beta: beta.at(n),
                mu: mu.at(n),
                gamma: gamma.at(n),
            },
            ScheduleFamily::GeometricDecayToLimit { start, limit, rate } => {
                let w = rate.powi(n as i32);
                RawParams {
                    alpha: limit.alpha + (start.alpha - limit.alpha) * w,
                    beta: limit.beta + (start.beta - limit.beta) * w,
                    mu: limit.mu + (start.mu - limit.mu) * w,
                    gamma: limit.gamma + (start.gamma - limit.gamma) * w,
                }
            }
            ScheduleFamily::ExplicitTable { rows } => {
                return rows[(n - 1).min(rows.len() - 1)];
            }
        };
        ParamPoint::try_from(raw).expect("schedule validated at construction")
    }

    /// Limit values: declared if present, otherwise derived from the family.
    pub fn limit_params(&self) -> RawParams {
        if let Some(l) = self.limits {
            return RawParams {
                alpha: l.alpha,
                beta: l.beta,
                mu: l.mu,
                gamma: l.gamma,
            };
        }
        match &self.family {
            ScheduleFamily::Constant {
                alpha,
                beta,
                mu,
                gamma,
            } => RawParams {
                alpha: *alpha,
                beta: *beta,
                mu: *mu,
                gamma: *gamma,
            },
            ScheduleFamily::OnePlusCOverN {
                alpha,
                beta,
                mu,
                gamma,
            } => RawParams {
                alpha: alpha.base,
                beta: beta.base,
                mu: mu.base,
                gamma: gamma.base,
            },
            ScheduleFamily::GeometricDecayToLimit { limit, .. } => *limit,
            ScheduleFamily::ExplicitTable { rows } => {
                (*rows.last().expect("validated nonempty")).into()
            }
        }
    }

    /// True when every tail value (n >= n_tail, up to `horizon`) is within
    /// `tol` of the limit values.
    pub fn tail_within(&self, n_tail: usize, horizon: usize, tol: f64) -> bool {
        let lim = self.limit_params();
        (n_tail..=horizon).all(|n| {
            let p = self.at(n);
            (p.alpha() - lim.alpha).abs() <= tol
                && (p.beta() - lim.beta).abs() <= tol
                && (p.mu() - lim.mu).abs() <= tol
                && (p.gamma() - lim.gamma).abs() <= tol
        })
    }
}

/// Size of the tail window used by finite-horizon limit checks:
/// max(20, horizon / 5), capped at the horizon itself.
pub fn tail_window(horizon: usize) -> usize {
    (horizon / 5).max(20).min(horizon)
}
