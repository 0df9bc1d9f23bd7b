//! Picard orbits of piecewise-affine self-mappings and their distance traces.
//!
//! A map is a list of (region, matrix, offset) pieces evaluated
//! first-match-first; an optional region-free piece acts as fallback and must
//! come last. Orbits are plain Picard iteration x, Tx, T²x, ... with no
//! acceleration, so runs are exactly reproducible.

use serde::{Deserialize, Serialize};

use crate::contraction::{step_report, ContractionReport, InequalityVariant};
use crate::error::{Error, Result};
use crate::metric::{distance, MetricDef};
use crate::params::ParamSchedule;
use crate::point::Point;
use crate::sets::{ConvexSetDescriptor, MEMBERSHIP_TOL};

/// Default convergence tolerance for fixed-point detection.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default iteration budget when no explicit step count is chosen.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// One affine piece y = M x + b, applicable on `region` (everywhere when None).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffinePiece {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<ConvexSetDescriptor>,
    /// Row-major n×n matrix.
    pub matrix: Vec<Vec<f64>>,
    pub offset: Vec<f64>,
}

/// A piecewise-affine self-mapping of R^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMapDef", into = "RawMapDef")]
pub struct MapDef {
    pieces: Vec<AffinePiece>,
    dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawMapDef {
    pieces: Vec<AffinePiece>,
}

impl TryFrom<RawMapDef> for MapDef {
    type Error = Error;

    fn try_from(raw: RawMapDef) -> Result<Self> {
        MapDef::new(raw.pieces)
    }
}

impl From<MapDef> for RawMapDef {
    fn from(m: MapDef) -> Self {
        RawMapDef { pieces: m.pieces }
    }
}

impl MapDef {
    pub fn new(pieces: Vec<AffinePiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidSet("map needs at least one piece".into()));
        }
        let dim = pieces[0].offset.len();
        if dim == 0 {
            return Err(Error::InvalidSet("map dimension must be >= 1".into()));
        }
        for (i, piece) in pieces.iter().enumerate() {
            if piece.offset.len() != dim
                || piece.matrix.len() != dim
                || piece.matrix.iter().any(|row| row.len() != dim)
            {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: piece.offset.len().max(piece.matrix.len()),
                });
            }
            if piece
                .matrix
                .iter()
                .flatten()
                .chain(&piece.offset)
                .any(|v| !v.is_finite())
            {
                return Err(Error::NonFinite {
                    context: "map coefficient",
                });
            }
            if let Some(region) = &piece.region {
                region.validate()?;
                if region.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: region.dim(),
                    });
                }
            } else if i + 1 != pieces.len() {
                return Err(Error::InvalidSet(
                    "the region-free fallback piece must be last".into(),
                ));
            }
        }
        Ok(Self { pieces, dim })
    }

    /// Single affine piece applicable everywhere.
    pub fn affine(matrix: Vec<Vec<f64>>, offset: Vec<f64>) -> Result<Self> {
        Self::new(vec![AffinePiece {
            region: None,
            matrix,
            offset,
        }])
    }

    /// 1-dimensional x ↦ a x + b.
    pub fn scalar_affine(a: f64, b: f64) -> Result<Self> {
        Self::affine(vec![vec![a]], vec![b])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    /// Apply the first matching piece. Errors when no piece region contains
    /// the point and there is no fallback.
    pub fn apply(&self, x: &Point) -> Result<Point> {
        self.apply_at(x, 0)
    }

    fn apply_at(&self, x: &Point, step: usize) -> Result<Point> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        for piece in &self.pieces {
            let matches = match &piece.region {
                None => true,
                Some(region) => region.contains(x, MEMBERSHIP_TOL),
            };
            if matches {
                let coords = piece
                    .matrix
                    .iter()
                    .zip(&piece.offset)
                    .map(|(row, off)| {
                        row.iter().zip(x.coords()).map(|(m, c)| m * c).sum::<f64>() + off
                    })
                    .collect();
                return Point::new(coords);
            }
        }
        Err(Error::UndefinedMap { step })
    }
}

/// A recorded Picard orbit with its per-step distances and, when computed on
/// a pair of starts, per-index pair distances and inequality reports.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    metric: MetricDef,
    points: Vec<Point>,
    step_distances: Vec<f64>,
    pair_distances: Option<Vec<f64>>,
    reports: Option<Vec<ContractionReport>>,
}

impl IterationTrace {
    pub fn metric(&self) -> &MetricDef {
        &self.metric
    }

    /// The orbit x, Tx, T²x, ...
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// d(T^n x, T^{n+1} x), one entry per consecutive pair.
    pub fn step_distances(&self) -> &[f64] {
        &self.step_distances
    }

    /// d(T^n x, T^n y) when the trace was computed on a pair.
    pub fn pair_distances(&self) -> Option<&[f64]> {
        self.pair_distances.as_deref()
    }

    /// Per-step inequality reports when a schedule was attached (report at
    /// position i covers iterate n = i + 1).
    pub fn reports(&self) -> Option<&[ContractionReport]> {
        self.reports.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last_point(&self) -> &Point {
        self.points
            .last()
            .expect("trace always holds the start point")
    }
}

/// Compute the Picard orbit of length `n_steps` + 1 from `x0`.
pub fn orbit(
    metric: &MetricDef,
    map: &MapDef,
    x0: &Point,
    n_steps: usize,
) -> Result<IterationTrace> {
    if n_steps < 1 {
        return Err(Error::RejectedInput("orbit needs at least one step".into()));
    }
    let mut points = Vec::with_capacity(n_steps + 1);
    let mut step_distances = Vec::with_capacity(n_steps);
    points.push(x0.clone());
    for step in 0..n_steps {
        let next = map.apply_at(&points[step], step)?;
        step_distances.push(distance(metric, &points[step], &next)?);
        points.push(next);
    }
    Ok(IterationTrace {
        metric: metric.clone(),
        points,
        step_distances,
        pair_distances: None,
        reports: None,
    })
}

/// Orbit of `x0` with the pair distances d(T^n x0, T^n y0) recorded, and,
/// when a schedule is attached, a per-step inequality report against the
/// original pair distance d(x0, y0).
pub fn pair_trace(
    metric: &MetricDef,
    map: &MapDef,
    x0: &Point,
    y0: &Point,
    n_steps: usize,
    schedule: Option<&ParamSchedule>,
    variant: Option<InequalityVariant>,
) -> Result<IterationTrace> {
    let mut trace = orbit(metric, map, x0, n_steps)?;
    let mut y = y0.clone();
    let mut pair = Vec::with_capacity(n_steps + 1);
    pair.push(distance(metric, x0, y0)?);
    for step in 0..n_steps {
        y = map.apply_at(&y, step)?;
        pair.push(distance(metric, &trace.points[step + 1], &y)?);
    }
    if let Some(schedule) = schedule {
        let variant = variant.unwrap_or(InequalityVariant::CrossTerm);
        let d_xy = pair[0];
        let reports = (1..=n_steps)
            .map(|n| step_report(variant, &schedule.at(n), d_xy, pair[n], 0.0))
            .collect();
        trace.reports = Some(reports);
    }
    trace.pair_distances = Some(pair);
    Ok(trace)
}

/// Extract the orbit limit as a fixed point: the last iterate z qualifies
/// when both the final step displacement and the re-evaluated d(z, Tz) are
/// below `tol`. The re-evaluation is always performed; the trace alone is
/// never trusted.
pub fn detect_fixed_point(trace: &IterationTrace, map: &MapDef, tol: f64) -> Result<Option<Point>> {
    let Some(last_step) = trace.step_distances.last() else {
        return Ok(None);
    };
    if *last_step >= tol {
        return Ok(None);
    }
    let z = trace.last_point();
    let image = map.apply(z)?;
    let moved = distance(&trace.metric, z, &image)?;
    Ok(if moved < tol { Some(z.clone()) } else { None })
}

/// d(points[n], points[n+m]) for every valid n; the gap sequence whose decay
/// witnesses Cauchy behavior of the orbit.
pub fn tail_residuals(trace: &IterationTrace, m: usize) -> Result<Vec<f64>> {
    if m < 1 || m >= trace.points.len() {
        return Err(Error::RejectedInput(format!(
            "offset m must be in [1, {}), got {m}",
            trace.points.len()
        )));
    }
    (0..trace.points.len() - m)
        .map(|n| distance(&trace.metric, &trace.points[n], &trace.points[n + m]))
        .collect()
}

/// Consecutive differences of squared pair distances,
/// d²(T^{n+1}x, T^{n+1}y) − d²(T^n x, T^n y); their decay to zero is the
/// squared-gap stabilization the asymptotic theory claims.
pub fn squared_gap_deltas(trace: &IterationTrace) -> Result<Vec<f64>> {
    let pair = trace
        .pair_distances
        .as_ref()
        .ok_or_else(|| Error::RejectedInput("trace has no pair distances".into()))?;
    Ok(pair.windows(2).map(|w| w[1] * w[1] - w[0] * w[0]).collect())
}
