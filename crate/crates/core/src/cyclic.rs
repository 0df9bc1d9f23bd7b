//! 2-cyclic self-mappings T(A) ⊆ B, T(B) ⊆ A: cyclicity verification,
//! cyclic contraction constants with the γ D² allowance, and best-proximity
//! runs with even/odd subsequence analysis.
//!
//! For disjoint sets the orbit cannot converge — consecutive iterates sit in
//! different sets, so d(T^n x, T^{n+1} x) is at least the set gap D — but
//! the even and odd subsequences can, and their limits form the best
//! proximity pair (z, Tz) with d(z, Tz) = D. When the sets intersect, D = 0
//! and the pair collapses to the unique fixed point.

use crate::contraction::{k_expansive, k_nonexpansive};
use crate::error::{Error, Result};
use crate::iterate::MapDef;
use crate::metric::{distance, MetricDef};
use crate::params::ParamPoint;
use crate::point::Point;
use crate::rng::SplitMix64;
use crate::sets::{set_distance_default, ConvexSetDescriptor, MEMBERSHIP_TOL};

/// How many gap entries from the end of the even/odd subsequences feed the
/// reported limit gaps.
const GAP_TAIL_WINDOW: usize = 10;

/// A violating sample found while probing cyclicity.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicityFailure {
    /// The sampled point.
    pub sample: Point,
    /// Its image under the map.
    pub image: Point,
    /// Whether the sample came from A (true) or B (false).
    pub from_a: bool,
    /// Euclidean distance of the image to the target set.
    pub distance: f64,
}

/// Probe T(A) ⊆ B and T(B) ⊆ A on seeded samples.
///
/// Returns `Ok(None)` when every sampled image lands in the target set
/// within the membership tolerance, and the first violating sample
/// otherwise.
pub fn verify_cyclicity(
    a: &ConvexSetDescriptor,
    b: &ConvexSetDescriptor,
    map: &MapDef,
    sample_count: usize,
    seed: u64,
) -> Result<Option<CyclicityFailure>> {
    if sample_count < 1 {
        return Err(Error::RejectedInput("sample_count must be >= 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    for (source, target, from_a) in [(a, b, true), (b, a, false)] {
        for _ in 0..sample_count {
            let sample = source.sample(&mut rng)?;
            let image = map.apply(&sample)?;
            let nearest = target.project(&image)?;
            let dist = distance(&MetricDef::Euclidean, &image, &nearest)?;
            if dist > MEMBERSHIP_TOL {
                return Ok(Some(CyclicityFailure {
                    sample,
                    image,
                    from_a,
                    distance: dist,
                }));
            }
        }
    }
    Ok(None)
}

/// A cyclic pair (A, B) with its mapping and cached set gap D.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicPair {
    set_a: ConvexSetDescriptor,
    set_b: ConvexSetDescriptor,
    map: MapDef,
    gap: f64,
}

impl CyclicPair {
    /// Validate the sets, verify cyclicity on 10³ seeded samples, and cache
    /// D = dist(A, B) from alternating projections.
    pub fn new(
        set_a: ConvexSetDescriptor,
        set_b: ConvexSetDescriptor,
        map: MapDef,
    ) -> Result<Self> {
        Self::with_samples(set_a, set_b, map, 1000, 0x5eed)
    }

    pub fn with_samples(
        set_a: ConvexSetDescriptor,
        set_b: ConvexSetDescriptor,
        map: MapDef,
        sample_count: usize,
        seed: u64,
    ) -> Result<Self> {
        set_a.validate()?;
        set_b.validate()?;
        if set_a.dim() != map.dim() || set_b.dim() != map.dim() {
            return Err(Error::DimensionMismatch {
                expected: map.dim(),
                found: set_a.dim().max(set_b.dim()),
            });
        }
        if let Some(failure) = verify_cyclicity(&set_a, &set_b, &map, sample_count, seed)? {
            return Err(Error::CyclicityViolation {
                index: 0,
                distance: failure.distance,
            });
        }
        let gap = set_distance_default(&set_a, &set_b)?;
        Ok(Self {
            set_a,
            set_b,
            map,
            gap,
        })
    }

    pub fn set_a(&self) -> &ConvexSetDescriptor {
        &self.set_a
    }

    pub fn set_b(&self) -> &ConvexSetDescriptor {
        &self.set_b
    }

    pub fn map(&self) -> &MapDef {
        &self.map
    }

    /// Cached D = dist(A, B).
    pub fn gap(&self) -> f64 {
        self.gap
    }
}

/// Cyclic contraction constant: the expansive-branch form
/// `(α + β) / (1 − β(1+2μ))` when `expansive_step`, the nonexpansive-branch
/// form `(α + β(1+2μ)) / (1 − β)` otherwise. Same arithmetic as the
/// non-cyclic constants; exposed separately so the cyclic branch predicate
/// can attach.
pub fn cyclic_k(p: &ParamPoint, expansive_step: bool) -> Result<f64> {
    if expansive_step {
        k_expansive(p)
    } else {
        k_nonexpansive(p)
    }
}

/// Lower bound max(0, 1 − k) that a valid γ schedule must respect.
pub fn gamma_floor(p: &ParamPoint, expansive_step: bool) -> Result<f64> {
    Ok(gamma_floor_from_k(cyclic_k(p, expansive_step)?))
}

/// The floor itself, for a known contraction constant.
pub fn gamma_floor_from_k(k: f64) -> f64 {
    (1.0 - k).max(0.0)
}

/// γ built from the contraction margin: δ (1 − k) (1 − β).
///
/// Vanishes as k → 1 faster than (1 − β), which is what makes the γ D²
/// allowance disappear in the limit. Callers pair this with the side
/// condition β <= 1 ⇒ μ <= −(1+α)/2 on the schedule.
pub fn gamma_margin_schedule(delta: f64, k: f64, beta: f64) -> f64 {
    delta * (1.0 - k) * (1.0 - beta)
}

/// The β = 1 consistency rule: a nonexpansive step with β = 1 forces γ = 0.
/// Returns false exactly when that implication is violated.
pub fn gamma_step_constraint(p: &ParamPoint, nonexpansive_step: bool) -> bool {
    !(nonexpansive_step && p.beta() == 1.0 && p.gamma() != 0.0)
}

/// Outcome of a best-proximity run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityResult {
    /// Claimed best proximity point in A (limit of the A-side subsequence).
    pub z: Point,
    /// Its image T z, the claimed best proximity point in B.
    pub t_z: Point,
    /// The cached set gap D.
    pub gap_estimate: f64,
    /// Largest d(T^{2n} x, T^{2n+2} x) over the tail window.
    pub even_limit_gap: f64,
    /// Largest d(T^{2n+1} x, T^{2n+3} x) over the tail window.
    pub odd_limit_gap: f64,
    /// Both tail gaps below tolerance and d(z, Tz) within tolerance of D.
    pub converged: bool,
    pub iterations: usize,
    /// Whether the start point was taken in A.
    pub start_in_a: bool,
}

/// Iterate the cyclic map and check whether the sequence alternates between
/// the sets as claimed; error at the first offending index.
fn cyclic_orbit(pair: &CyclicPair, x0: &Point, n_steps: usize) -> Result<(Vec<Point>, bool)> {
    let in_a = pair.set_a.contains(x0, MEMBERSHIP_TOL);
    let in_b = pair.set_b.contains(x0, MEMBERSHIP_TOL);
    if !in_a && !in_b {
        return Err(Error::RejectedInput(
            "start point lies in neither A nor B".into(),
        ));
    }
    let start_in_a = in_a;
    let mut points = Vec::with_capacity(n_steps + 1);
    points.push(x0.clone());
    for step in 0..n_steps {
        let next = pair.map.apply(&points[step])?;
        // even offsets stay on the start side, odd offsets on the other
        let expect_a = if (step + 1) % 2 == 0 {
            start_in_a
        } else {
            !start_in_a
        };
        let target = if expect_a { &pair.set_a } else { &pair.set_b };
        if !target.contains(&next, MEMBERSHIP_TOL) {
            let nearest = target.project(&next)?;
            let dist = distance(&MetricDef::Euclidean, &next, &nearest)?;
            return Err(Error::CyclicityViolation {
                index: step + 1,
                distance: dist,
            });
        }
        points.push(next);
    }
    Ok((points, start_in_a))
}

/// Largest gap between consecutive subsequence entries over the tail window.
fn tail_gap(metric: &MetricDef, subsequence: &[&Point]) -> Result<f64> {
    let gaps: Vec<f64> = subsequence
        .windows(2)
        .map(|w| distance(metric, w[0], w[1]))
        .collect::<Result<_>>()?;
    let start = gaps.len().saturating_sub(GAP_TAIL_WINDOW);
    Ok(gaps[start..].iter().copied().fold(0.0, f64::max))
}

/// Run a best-proximity iteration from `x0` in A ∪ B for `n_steps` >= 4.
///
/// The even-index subsequence lands on the start side and the odd-index one
/// on the other; z is always reported as the A-side limit and Tz as its
/// image, so the result reads as the best proximity pair (z, Tz) in (A, B)
/// regardless of where the run started.
pub fn best_proximity_run(
    pair: &CyclicPair,
    metric: &MetricDef,
    x0: &Point,
    n_steps: usize,
    tol: f64,
) -> Result<ProximityResult> {
    if n_steps < 4 {
        return Err(Error::RejectedInput(format!(
            "need at least 4 iterations, got {n_steps}"
        )));
    }
    let (points, start_in_a) = cyclic_orbit(pair, x0, n_steps)?;
    let evens: Vec<&Point> = points.iter().step_by(2).collect();
    let odds: Vec<&Point> = points.iter().skip(1).step_by(2).collect();

    let even_limit_gap = tail_gap(metric, &evens)?;
    let odd_limit_gap = tail_gap(metric, &odds)?;

    let a_side_last = if start_in_a {
        (*evens.last().expect("nonempty")).clone()
    } else {
        (*odds.last().expect("n_steps >= 4")).clone()
    };
    let t_z = pair.map.apply(&a_side_last)?;
    let pair_distance = distance(metric, &a_side_last, &t_z)?;
    let converged =
        even_limit_gap < tol && odd_limit_gap < tol && (pair_distance - pair.gap).abs() < tol;

    Ok(ProximityResult {
        z: a_side_last,
        t_z,
        gap_estimate: pair.gap,
        even_limit_gap,
        odd_limit_gap,
        converged,
        iterations: n_steps,
        start_in_a,
    })
}

/// d(T^n x, T^{n+1} x) along the cyclic orbit; each entry is at least the
/// set gap, and for convergent runs the sequence decreases to it.
pub fn proximity_distance_trace(
    pair: &CyclicPair,
    metric: &MetricDef,
    x0: &Point,
    n_steps: usize,
) -> Result<Vec<f64>> {
    let (points, _) = cyclic_orbit(pair, x0, n_steps)?;
    points
        .windows(2)
        .map(|w| distance(metric, &w[0], &w[1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euclid() -> MetricDef {
        MetricDef::Euclidean
    }

    fn pt(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn negation_pair() -> CyclicPair {
        CyclicPair::new(
            ConvexSetDescriptor::interval(1.0, 2.0).unwrap(),
            ConvexSetDescriptor::interval(-2.0, -1.0).unwrap(),
            MapDef::scalar_affine(-1.0, 0.0).unwrap(),
        )
        .unwrap()
    }

    fn parallel_segments_pair() -> CyclicPair {
        // T(t, s) = (t/2, -s) swaps the segments and halves the parameter
        CyclicPair::new(
            ConvexSetDescriptor::segment(vec![0.0, 1.0], vec![1.0, 1.0]).unwrap(),
            ConvexSetDescriptor::segment(vec![0.0, -1.0], vec![1.0, -1.0]).unwrap(),
            MapDef::affine(vec![vec![0.5, 0.0], vec![0.0, -1.0]], vec![0.0, 0.0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn negation_swaps_intervals() {
        let pair = negation_pair();
        assert!((pair.gap() - 2.0).abs() < 1e-10);
        let ok = verify_cyclicity(pair.set_a(), pair.set_b(), pair.map(), 100, 1).unwrap();
        assert!(ok.is_none());
    }

    #[test]
    fn identity_fails_cyclicity_with_counterexample() {
        let a = ConvexSetDescriptor::interval(1.0, 2.0).unwrap();
        let b = ConvexSetDescriptor::interval(-2.0, -1.0).unwrap();
        let id = MapDef::scalar_affine(1.0, 0.0).unwrap();
        let failure = verify_cyclicity(&a, &b, &id, 100, 1).unwrap().unwrap();
        assert!(failure.from_a);
        // identity keeps the sample in [1, 2], at least distance 2 from B
        assert!(failure.distance >= 2.0 - 1e-9);
        assert!(CyclicPair::new(a, b, id).is_err());
    }

    #[test]
    fn parallel_segments_are_cyclic() {
        let pair = parallel_segments_pair();
        assert!((pair.gap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn cyclic_k_matches_branch_constants() {
        let p = ParamPoint::plain(0.5, 0.2, -0.5).unwrap();
        assert_eq!(cyclic_k(&p, false).unwrap(), k_nonexpansive(&p).unwrap());
        let q = ParamPoint::plain(0.5, 0.2, 0.5).unwrap();
        assert_eq!(cyclic_k(&q, true).unwrap(), k_expansive(&q).unwrap());
        let r = ParamPoint::plain(0.7, 0.0, 3.0).unwrap();
        assert_eq!(cyclic_k(&r, false).unwrap(), 0.7);
        assert_eq!(cyclic_k(&r, true).unwrap(), 0.7);
    }

    #[test]
    fn gamma_floor_values() {
        assert!((gamma_floor_from_k(0.625) - 0.375).abs() < 1e-15);
        assert_eq!(gamma_floor_from_k(7.0 / 6.0), 0.0);
        assert_eq!(gamma_floor_from_k(1.0), 0.0);
        let p = ParamPoint::plain(0.5, 0.2, -0.5).unwrap();
        assert!((gamma_floor(&p, false).unwrap() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn gamma_margin_schedule_values() {
        assert!((gamma_margin_schedule(1.0, 0.9, 0.5) - 0.05).abs() < 1e-15);
        assert_eq!(gamma_margin_schedule(1.0, 1.0, 0.5), 0.0);
        assert_eq!(gamma_margin_schedule(1.0, 0.9, 1.0), 0.0);
    }

    #[test]
    fn gamma_step_constraint_cases() {
        let bad = ParamPoint::new(1.0, 1.0, 0.0, 0.1).unwrap();
        assert!(!gamma_step_constraint(&bad, true));
        let ok = ParamPoint::new(1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(gamma_step_constraint(&ok, true));
        let off_branch = ParamPoint::new(1.0, 0.5, 0.0, 0.1).unwrap();
        assert!(gamma_step_constraint(&off_branch, true));
        assert!(gamma_step_constraint(&bad, false));
    }

    #[test]
    fn parallel_segments_best_proximity() {
        let pair = parallel_segments_pair();
        let res = best_proximity_run(&pair, &euclid(), &pt(&[1.0, 1.0]), 60, 1e-9).unwrap();
        assert!(res.converged);
        assert!(res.start_in_a);
        assert!((res.gap_estimate - 2.0).abs() < 1e-10);
        assert!((res.z.coords()[0]).abs() < 1e-9);
        assert!((res.z.coords()[1] - 1.0).abs() < 1e-12);
        assert!((res.t_z.coords()[0]).abs() < 1e-9);
        assert!((res.t_z.coords()[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn negation_two_cycle_is_proximal() {
        let pair = negation_pair();
        let res = best_proximity_run(&pair, &euclid(), &pt(&[1.0]), 20, 1e-9).unwrap();
        assert!(res.converged);
        assert_eq!(res.z.coords(), &[1.0]);
        assert_eq!(res.t_z.coords(), &[-1.0]);
        assert_eq!(res.even_limit_gap, 0.0);
        assert_eq!(res.odd_limit_gap, 0.0);
    }

    #[test]
    fn start_in_b_reports_a_side_point() {
        let pair = parallel_segments_pair();
        let res = best_proximity_run(&pair, &euclid(), &pt(&[1.0, -1.0]), 61, 1e-9).unwrap();
        assert!(!res.start_in_a);
        // z is still the A-side limit
        assert!((res.z.coords()[1] - 1.0).abs() < 1e-12);
        assert!((res.t_z.coords()[1] + 1.0).abs() < 1e-12);
        assert!(res.converged);
    }

    #[test]
    fn run_preconditions() {
        let pair = negation_pair();
        assert!(best_proximity_run(&pair, &euclid(), &pt(&[1.0]), 3, 1e-9).is_err());
        assert!(best_proximity_run(&pair, &euclid(), &pt(&[5.0]), 10, 1e-9).is_err());
    }

    #[test]
    fn distance_trace_decreases_to_gap() {
        let pair = parallel_segments_pair();
        let trace = proximity_distance_trace(&pair, &euclid(), &pt(&[1.0, 1.0]), 40).unwrap();
        for (n, d) in trace.iter().enumerate() {
            let expected = ((0.5f64.powi(n as i32 + 1)).powi(2) + 4.0).sqrt();
            assert!((d - expected).abs() < 1e-12, "entry {n}");
            assert!(*d >= pair.gap() - 1e-9);
        }
        assert!((trace.last().unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn distance_trace_constant_for_isometry() {
        let pair = negation_pair();
        let trace = proximity_distance_trace(&pair, &euclid(), &pt(&[1.5]), 10).unwrap();
        assert!(trace.iter().all(|d| (d - 3.0).abs() < 1e-12));
    }

    fn intersecting_pair() -> CyclicPair {
        // clamp((x + 1.5)/2, 1, 2) is cyclic on [0,2] and [1,3], which overlap
        let le_half = ConvexSetDescriptor::halfspace_intersection(vec![crate::sets::Halfspace {
            normal: vec![1.0],
            offset: 0.5,
        }])
        .unwrap();
        let ge_half = ConvexSetDescriptor::halfspace_intersection(vec![crate::sets::Halfspace {
            normal: vec![-1.0],
            offset: -2.5,
        }])
        .unwrap();
        let map = MapDef::new(vec![
            crate::iterate::AffinePiece {
                region: Some(le_half),
                matrix: vec![vec![0.0]],
                offset: vec![1.0],
            },
            crate::iterate::AffinePiece {
                region: Some(ge_half),
                matrix: vec![vec![0.0]],
                offset: vec![2.0],
            },
            crate::iterate::AffinePiece {
                region: None,
                matrix: vec![vec![0.5]],
                offset: vec![0.75],
            },
        ])
        .unwrap();
        CyclicPair::new(
            ConvexSetDescriptor::interval(0.0, 2.0).unwrap(),
            ConvexSetDescriptor::interval(1.0, 3.0).unwrap(),
            map,
        )
        .unwrap()
    }

    #[test]
    fn intersecting_sets_trace_decreases_to_zero() {
        let pair = intersecting_pair();
        assert!(pair.gap() < 1e-10);
        let trace = proximity_distance_trace(&pair, &euclid(), &pt(&[0.0]), 60).unwrap();
        for w in trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(trace.last().unwrap() < &1e-9);
    }

    #[test]
    fn intersecting_sets_collapse_to_fixed_point() {
        let pair = intersecting_pair();
        let res = best_proximity_run(&pair, &euclid(), &pt(&[0.0]), 60, 1e-9).unwrap();
        assert!(res.converged);
        assert!((res.z.coords()[0] - 1.5).abs() < 1e-9);
        assert!(distance(&euclid(), &res.z, &res.t_z).unwrap() < 1e-9);
    }

    #[test]
    fn converged_proximity_points_are_members() {
        for (pair, x0, steps) in [
            (parallel_segments_pair(), pt(&[1.0, 1.0]), 60),
            (negation_pair(), pt(&[1.0]), 20),
        ] {
            let res = best_proximity_run(&pair, &euclid(), &x0, steps, 1e-9).unwrap();
            assert!(res.converged);
            let proj_z = pair.set_a().project(&res.z).unwrap();
            assert!(distance(&euclid(), &res.z, &proj_z).unwrap() < 1e-9);
            let proj_tz = pair.set_b().project(&res.t_z).unwrap();
            assert!(distance(&euclid(), &res.t_z, &proj_tz).unwrap() < 1e-9);
            assert!(
                distance(&euclid(), &res.z, &res.t_z).unwrap() >= res.gap_estimate - 1e-9,
                "pair distance can never undercut the set gap"
            );
        }
    }
}
