//! Norm-induced metrics and the squared-distance envelope bounds.
//!
//! Every metric here is induced by a norm, d(x, y) = ‖x − y‖, so it is
//! automatically translation invariant and homogeneous. Those two properties
//! are what make the envelope inequality
//!
//! ```text
//! (d(x,y) − d(u,v))² ≤ d²(x − y, u − v) ≤ (d(x,y) + d(u,v))²
//! ```
//!
//! hold for arbitrary quadruples, which in turn guarantees that the minimal
//! feasible cross-term coefficient computed by
//! [`empirical_mu`](crate::contraction::empirical_mu) exists in [−1, 1].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point;

/// A norm-induced metric on R^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricDef {
    /// d(x,y) = sqrt(Σ (x_i − y_i)²)
    Euclidean,
    /// d(x,y) = (Σ |x_i − y_i|^p)^{1/p}; `p = inf` gives the max norm.
    PNorm { p: f64 },
    /// d(x,y) = sqrt(Σ w_i (x_i − y_i)²) with all w_i > 0.
    WeightedEuclidean { weights: Vec<f64> },
}

impl MetricDef {
    pub fn p_norm(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidMetric(format!(
                "p-norm requires p >= 1, got {p}"
            )));
        }
        Ok(MetricDef::PNorm { p })
    }

    pub fn weighted_euclidean(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidMetric(
                "weighted metric requires finite positive weights".into(),
            ));
        }
        Ok(MetricDef::WeightedEuclidean { weights })
    }

    /// Check the constraints the variant carries.
    pub fn validate(&self) -> Result<()> {
        match self {
            MetricDef::Euclidean => Ok(()),
            MetricDef::PNorm { p } => Self::p_norm(*p).map(|_| ()),
            MetricDef::WeightedEuclidean { weights } => {
                Self::weighted_euclidean(weights.clone()).map(|_| ())
            }
        }
    }

    /// Whether the inducing norm is uniformly convex. Euclidean and p-norms
    /// with 1 < p < ∞ are; p = 1 and p = ∞ are not. Reports use this to flag
    /// runs whose fixed-point-existence hypotheses are unmet.
    pub fn uniformly_convex(&self) -> bool {
        match self {
            MetricDef::Euclidean | MetricDef::WeightedEuclidean { .. } => true,
            MetricDef::PNorm { p } => *p > 1.0 && p.is_finite(),
        }
    }
}

/// d(x, y) under the given metric.
///
/// Symmetric, zero exactly on equal coordinate vectors, and finite for all
/// valid points. Errors on dimension mismatch (including a weight vector of
/// the wrong length).
pub fn distance(metric: &MetricDef, x: &Point, y: &Point) -> Result<f64> {
    x.check_dim(y)?;
    let diffs = x.coords().iter().zip(y.coords()).map(|(a, b)| a - b);
    match metric {
        MetricDef::Euclidean => Ok(diffs.map(|d| d * d).sum::<f64>().sqrt()),
        MetricDef::PNorm { p } => {
            if *p == 1.0 {
                Ok(diffs.map(f64::abs).sum())
            } else if *p == 2.0 {
                Ok(diffs.map(|d| d * d).sum::<f64>().sqrt())
            } else if p.is_infinite() {
                Ok(diffs.map(f64::abs).fold(0.0, f64::max))
            } else {
                Ok(diffs.map(|d| d.abs().powf(*p)).sum::<f64>().powf(1.0 / p))
            }
        }
        MetricDef::WeightedEuclidean { weights } => {
            if weights.len() != x.dim() {
                return Err(Error::DimensionMismatch {
                    expected: x.dim(),
                    found: weights.len(),
                });
            }
            Ok(diffs
                .zip(weights)
                .map(|(d, w)| w * d * d)
                .sum::<f64>()
                .sqrt())
        }
    }
}

/// Slack of the squared-distance envelope on the quadruple (x, y, u, v),
/// where (u, v) play the images (T^n x, T^n y).
///
/// Returns `(lower_slack, upper_slack)`:
///
/// ```text
/// lower_slack = d²(x−y, u−v) − (d(x,y) − d(u,v))²
/// upper_slack = (d(x,y) + d(u,v))² − d²(x−y, u−v)
/// ```
///
/// For a norm-induced metric both are nonnegative, which certifies that the
/// set of feasible cross-term coefficients ρ is nonempty.
pub fn envelope_residuals(
    metric: &MetricDef,
    x: &Point,
    y: &Point,
    u: &Point,
    v: &Point,
) -> Result<(f64, f64)> {
    let d_xy = distance(metric, x, y)?;
    let d_uv = distance(metric, u, v)?;
    let diff_xy = x.sub(y)?;
    let diff_uv = u.sub(v)?;
    let d_diff = distance(metric, &diff_xy, &diff_uv)?;

    let lower_bound = (d_xy - d_uv) * (d_xy - d_uv);
    let upper_bound = (d_xy + d_uv) * (d_xy + d_uv);
    Ok((d_diff * d_diff - lower_bound, upper_bound - d_diff * d_diff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn euclidean_pythagorean() {
        let d = distance(&MetricDef::Euclidean, &pt(&[0.0, 0.0]), &pt(&[3.0, 4.0])).unwrap();
        assert_eq!(d, 5.0);
    }

    #[test]
    fn zero_on_identical_points() {
        for m in [
            MetricDef::Euclidean,
            MetricDef::p_norm(3.0).unwrap(),
            MetricDef::weighted_euclidean(vec![2.0, 0.5]).unwrap(),
        ] {
            let x = pt(&[1.5, -2.5]);
            assert_eq!(distance(&m, &x, &x).unwrap(), 0.0);
        }
    }

    #[test]
    fn translation_invariance_euclidean() {
        let x = pt(&[1.0, 1.0]);
        let y = pt(&[-2.0, -3.0]);
        let z = pt(&[5.0, 5.0]);
        let d0 = distance(&MetricDef::Euclidean, &x, &y).unwrap();
        let d1 = distance(
            &MetricDef::Euclidean,
            &x.add(&z).unwrap(),
            &y.add(&z).unwrap(),
        )
        .unwrap();
        assert_eq!(d0, 5.0);
        assert_eq!(d1, 5.0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let x = pt(&[1.0]);
        let y = pt(&[1.0, 2.0]);
        assert!(distance(&MetricDef::Euclidean, &x, &y).is_err());
        let w = MetricDef::weighted_euclidean(vec![1.0]).unwrap();
        assert!(distance(&w, &pt(&[0.0, 0.0]), &pt(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn invalid_metrics_rejected() {
        assert!(MetricDef::p_norm(0.5).is_err());
        assert!(MetricDef::p_norm(f64::NAN).is_err());
        assert!(MetricDef::weighted_euclidean(vec![1.0, 0.0]).is_err());
        assert!(MetricDef::weighted_euclidean(vec![]).is_err());
    }

    #[test]
    fn max_norm() {
        let m = MetricDef::p_norm(f64::INFINITY).unwrap();
        let d = distance(&m, &pt(&[0.0, 0.0]), &pt(&[3.0, -4.0])).unwrap();
        assert_eq!(d, 4.0);
        assert!(!m.uniformly_convex());
        assert!(MetricDef::p_norm(3.0).unwrap().uniformly_convex());
    }

    #[test]
    fn envelope_identity_shift() {
        // u − v = x − y: the difference of differences is zero, so the lower
        // bound (d − d)² = 0 is attained exactly.
        let (lo, hi) = envelope_residuals(
            &MetricDef::Euclidean,
            &pt(&[1.0, 0.0]),
            &pt(&[0.0, 0.0]),
            &pt(&[2.0, 0.0]),
            &pt(&[1.0, 0.0]),
        )
        .unwrap();
        assert_eq!(lo, 0.0);
        assert_eq!(hi, 4.0);
    }

    #[test]
    fn envelope_antipodal() {
        // u − v = −(x − y): d(x−y, u−v) = 2, upper bound (1+1)² is attained.
        let (lo, hi) = envelope_residuals(
            &MetricDef::Euclidean,
            &pt(&[1.0, 0.0]),
            &pt(&[0.0, 0.0]),
            &pt(&[-1.0, 0.0]),
            &pt(&[0.0, 0.0]),
        )
        .unwrap();
        assert_eq!(lo, 4.0);
        assert_eq!(hi, 0.0);
    }

    #[test]
    fn envelope_orthogonal() {
        // x − y = (1,0), u − v = (0,1): d²(diff) = 2 sits midway in [0, 4].
        let (lo, hi) = envelope_residuals(
            &MetricDef::Euclidean,
            &pt(&[1.0, 0.0]),
            &pt(&[0.0, 0.0]),
            &pt(&[0.0, 1.0]),
            &pt(&[0.0, 0.0]),
        )
        .unwrap();
        assert!((lo - 2.0).abs() < 1e-12);
        assert!((hi - 2.0).abs() < 1e-12);
    }
}
