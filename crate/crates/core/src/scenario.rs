//! Built-in analytic scenarios and scenario-file loading.
//!
//! Each built-in scenario carries expected values with a note describing the
//! closed-form derivation behind them, so every run can be checked against
//! ground truth that was computed independently of the iteration machinery.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::contraction::ScheduleClass;
use crate::error::{Error, Result};
use crate::iterate::{AffinePiece, MapDef};
use crate::metric::MetricDef;
use crate::params::{OverN, ParamSchedule, ScheduleFamily};
use crate::point::Point;
use crate::sets::{ConvexSetDescriptor, Halfspace};

/// An expected value with the derivation note that justifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedValue<T> {
    pub value: T,
    pub note: String,
}

impl<T> ExpectedValue<T> {
    pub fn new(value: T, note: &str) -> Self {
        Self {
            value,
            note: note.to_string(),
        }
    }
}

/// Ground truth a scenario claims about itself; all fields optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<ExpectedValue<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_proximity_pair: Option<ExpectedValue<(Point, Point)>>,
    /// Expected set gap dist(A, B).
    #[serde(default, rename = "D", skip_serializing_if = "Option::is_none")]
    pub set_gap: Option<ExpectedValue<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<ExpectedValue<ScheduleClass>>,
    /// For isometries: the pair-distance value the whole trace must hold.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_pair_distance: Option<ExpectedValue<f64>>,
}

impl Expected {
    pub fn is_empty(&self) -> bool {
        self.fixed_point.is_none()
            && self.best_proximity_pair.is_none()
            && self.set_gap.is_none()
            && self.verdict.is_none()
            && self.constant_pair_distance.is_none()
    }
}

/// The two sets of a cyclic scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetPair {
    #[serde(rename = "A")]
    pub a: ConvexSetDescriptor,
    #[serde(rename = "B")]
    pub b: ConvexSetDescriptor,
}

/// A runnable scenario: metric, map, optional cyclic sets, optional
/// parameter schedule, start point(s), and expected values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub dim: usize,
    pub metric: MetricDef,
    pub map: MapDef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<SetPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ParamSchedule>,
    pub start: Point,
    /// Second start point for pair-distance traces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<Point>,
    #[serde(default, skip_serializing_if = "Expected::is_empty")]
    pub expected: Expected,
}

impl Scenario {
    /// Check every cross-field invariant, naming the violated one.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidScenario(msg));
        if self.name.is_empty() {
            return fail("name must be nonempty".into());
        }
        if self.dim == 0 {
            return fail("dim must be >= 1".into());
        }
        self.metric.validate()?;
        if let MetricDef::WeightedEuclidean { weights } = &self.metric {
            if weights.len() != self.dim {
                return fail(format!(
                    "metric weights have dimension {} but scenario dim is {}",
                    weights.len(),
                    self.dim
                ));
            }
        }
        if self.map.dim() != self.dim {
            return fail(format!(
                "map has dimension {} but scenario dim is {}",
                self.map.dim(),
                self.dim
            ));
        }
        if let Some(sets) = &self.sets {
            sets.a.validate()?;
            sets.b.validate()?;
            if sets.a.dim() != self.dim || sets.b.dim() != self.dim {
                return fail("set dimension does not match scenario dim".into());
            }
        }
        if let Some(schedule) = &self.schedule {
            schedule.validate()?;
        }
        if self.start.dim() != self.dim {
            return fail("start point dimension does not match scenario dim".into());
        }
        if let Some(pair) = &self.pair {
            if pair.dim() != self.dim {
                return fail("pair point dimension does not match scenario dim".into());
            }
        }
        if let Some(fp) = &self.expected.fixed_point {
            if fp.value.dim() != self.dim {
                return fail("expected fixed point dimension does not match scenario dim".into());
            }
            if fp.note.is_empty() {
                return fail("expected fixed point is missing its derivation note".into());
            }
        }
        if let Some(bp) = &self.expected.best_proximity_pair {
            if bp.value.0.dim() != self.dim || bp.value.1.dim() != self.dim {
                return fail(
                    "expected proximity pair dimension does not match scenario dim".into(),
                );
            }
            if bp.note.is_empty() {
                return fail("expected proximity pair is missing its derivation note".into());
            }
        }
        if let Some(d) = &self.expected.set_gap {
            if d.value < 0.0 || !d.value.is_finite() {
                return fail(format!(
                    "expected set gap must be a finite nonnegative real, got {}",
                    d.value
                ));
            }
            if d.note.is_empty() {
                return fail("expected set gap is missing its derivation note".into());
            }
            if self.sets.is_none() {
                return fail("expected set gap requires sets".into());
            }
        }
        if let Some(v) = &self.expected.verdict {
            if v.note.is_empty() {
                return fail("expected verdict is missing its derivation note".into());
            }
            if self.schedule.is_none() {
                return fail("expected verdict requires a schedule".into());
            }
        }
        if let Some(c) = &self.expected.constant_pair_distance {
            if c.note.is_empty() {
                return fail(
                    "expected constant pair distance is missing its derivation note".into(),
                );
            }
            if self.pair.is_none() {
                return fail("expected constant pair distance requires a pair start".into());
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }
}

fn pt(coords: &[f64]) -> Point {
    Point::new(coords.to_vec()).expect("builtin coordinates are finite")
}

/// s1: halving contraction x ↦ x/2 + 1 on the line, with a strictly
/// pseudocontractive schedule attached.
fn s1_halving_contraction() -> Scenario {
    Scenario {
        name: "s1".into(),
        dim: 1,
        metric: MetricDef::Euclidean,
        map: MapDef::scalar_affine(0.5, 1.0).expect("valid map"),
        sets: None,
        schedule: Some(ParamSchedule {
            family: ScheduleFamily::OnePlusCOverN {
                alpha: OverN { base: 1.0, c: 1.0 },
                beta: OverN::constant(0.3),
                mu: OverN { base: -1.0, c: 0.5 },
                gamma: OverN::default(),
            },
            limits: None,
        }),
        start: pt(&[0.0]),
        pair: Some(pt(&[8.0])),
        expected: Expected {
            fixed_point: Some(ExpectedValue::new(pt(&[2.0]), "solve x = x/2 + 1")),
            verdict: Some(ExpectedValue::new(
                ScheduleClass::StrictPseudoIS,
                "constant beta 0.3 with alpha_n = 1 + 1/n down to 1 and mu_n = -1 + 1/(2n) down to -1",
            )),
            ..Expected::default()
        },
    }
}

/// s2: cyclic isometry x ↦ −x between [1, 2] and [−2, −1]; the proximal
/// pair (1, −1) is a two-cycle.
fn s2_cyclic_isometry() -> Scenario {
    Scenario {
        name: "s2".into(),
        dim: 1,
        metric: MetricDef::Euclidean,
        map: MapDef::scalar_affine(-1.0, 0.0).expect("valid map"),
        sets: Some(SetPair {
            a: ConvexSetDescriptor::interval(1.0, 2.0).expect("valid interval"),
            b: ConvexSetDescriptor::interval(-2.0, -1.0).expect("valid interval"),
        }),
        schedule: None,
        start: pt(&[1.0]),
        pair: Some(pt(&[-1.0])),
        expected: Expected {
            set_gap: Some(ExpectedValue::new(
                2.0,
                "gap between the intervals [1,2] and [-2,-1]",
            )),
            best_proximity_pair: Some(ExpectedValue::new(
                (pt(&[1.0]), pt(&[-1.0])),
                "negation two-cycle at the interval endpoints nearest each other",
            )),
            constant_pair_distance: Some(ExpectedValue::new(
                2.0,
                "negation is an isometry, so d(T^n x, T^n y) = d(x, y) = 2",
            )),
            ..Expected::default()
        },
    }
}

/// s3: cyclic contraction between the parallel segments y = 1 and y = −1,
/// T(t, s) = (t/2, −s); even iterates (t/4^n, 1) collapse to (0, 1).
fn s3_parallel_segments() -> Scenario {
    Scenario {
        name: "s3".into(),
        dim: 2,
        metric: MetricDef::Euclidean,
        map: MapDef::affine(vec![vec![0.5, 0.0], vec![0.0, -1.0]], vec![0.0, 0.0])
            .expect("valid map"),
        sets: Some(SetPair {
            a: ConvexSetDescriptor::segment(vec![0.0, 1.0], vec![1.0, 1.0]).expect("valid segment"),
            b: ConvexSetDescriptor::segment(vec![0.0, -1.0], vec![1.0, -1.0])
                .expect("valid segment"),
        }),
        // With gamma D² = 0.75 · 4 = 3 the cyclic slack condition
        // xi - gamma D² vanishes exactly on this scenario.
        schedule: Some(ParamSchedule {
            family: ScheduleFamily::Constant {
                alpha: 0.25,
                beta: 0.0,
                mu: 0.0,
                gamma: 0.75,
            },
            limits: None,
        }),
        start: pt(&[1.0, 1.0]),
        pair: Some(pt(&[1.0, -1.0])),
        expected: Expected {
            set_gap: Some(ExpectedValue::new(
                2.0,
                "parallel segments at vertical gap 2",
            )),
            best_proximity_pair: Some(ExpectedValue::new(
                (pt(&[0.0, 1.0]), pt(&[0.0, -1.0])),
                "even iterates (t/4^n, 1) collapse to t = 0",
            )),
            verdict: Some(ExpectedValue::new(
                ScheduleClass::StrictContractiveIS,
                "constant alpha 0.25 in [0,1) with beta = 0",
            )),
            ..Expected::default()
        },
    }
}

/// s4: intersecting intervals [0, 2] and [1, 3] with the clamped halving map
/// x ↦ clamp((x + 1.5)/2, 1, 2); the gap is 0 and the unique fixed point
/// 1.5 lies in the intersection.
fn s4_intersecting_sets() -> Scenario {
    let le_half = ConvexSetDescriptor::halfspace_intersection(vec![Halfspace {
        normal: vec![1.0],
        offset: 0.5,
    }])
    .expect("valid halfspace");
    let ge_two_half = ConvexSetDescriptor::halfspace_intersection(vec![Halfspace {
        normal: vec![-1.0],
        offset: -2.5,
    }])
    .expect("valid halfspace");
    Scenario {
        name: "s4".into(),
        dim: 1,
        metric: MetricDef::Euclidean,
        map: MapDef::new(vec![
            AffinePiece {
                region: Some(le_half),
                matrix: vec![vec![0.0]],
                offset: vec![1.0],
            },
            AffinePiece {
                region: Some(ge_two_half),
                matrix: vec![vec![0.0]],
                offset: vec![2.0],
            },
            AffinePiece {
                region: None,
                matrix: vec![vec![0.5]],
                offset: vec![0.75],
            },
        ])
        .expect("valid map"),
        sets: Some(SetPair {
            a: ConvexSetDescriptor::interval(0.0, 2.0).expect("valid interval"),
            b: ConvexSetDescriptor::interval(1.0, 3.0).expect("valid interval"),
        }),
        schedule: Some(ParamSchedule {
            family: ScheduleFamily::Constant {
                alpha: 0.5,
                beta: 0.0,
                mu: 0.0,
                gamma: 0.5,
            },
            limits: None,
        }),
        start: pt(&[0.0]),
        pair: Some(pt(&[2.0])),
        expected: Expected {
            fixed_point: Some(ExpectedValue::new(pt(&[1.5]), "solve x = (x + 1.5)/2")),
            set_gap: Some(ExpectedValue::new(0.0, "the intervals overlap on [1, 2]")),
            verdict: Some(ExpectedValue::new(
                ScheduleClass::StrictContractiveIS,
                "constant alpha 0.5 in [0,1) with beta = 0",
            )),
            ..Expected::default()
        },
    }
}

/// s5: planar rotation by 60 degrees; an isometry with constant pair
/// distances and no fixed point along the unit orbit.
fn s5_planar_rotation() -> Scenario {
    let c = 0.5;
    let s = 3.0_f64.sqrt() / 2.0;
    Scenario {
        name: "s5".into(),
        dim: 2,
        metric: MetricDef::Euclidean,
        map: MapDef::affine(vec![vec![c, -s], vec![s, c]], vec![0.0, 0.0]).expect("valid map"),
        sets: None,
        schedule: None,
        start: pt(&[1.0, 0.0]),
        pair: Some(pt(&[0.0, 0.0])),
        expected: Expected {
            constant_pair_distance: Some(ExpectedValue::new(
                1.0,
                "rotations are isometries, so the distance to the fixed origin stays 1",
            )),
            ..Expected::default()
        },
    }
}

/// The shipped scenario corpus.
pub fn builtin_scenarios() -> Vec<Scenario> {
    vec![
        s1_halving_contraction(),
        s2_cyclic_isometry(),
        s3_parallel_segments(),
        s4_intersecting_sets(),
        s5_planar_rotation(),
    ]
}

/// Look up a built-in scenario by name.
pub fn builtin(name: &str) -> Option<Scenario> {
    builtin_scenarios().into_iter().find(|s| s.name == name)
}

/// Load and fully validate a scenario from a JSON file.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    let scenario: Scenario = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    scenario.validate()?;
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_lookup() {
        assert!(builtin("s1").is_some());
        assert_eq!(
            builtin("s2")
                .unwrap()
                .expected
                .set_gap
                .as_ref()
                .unwrap()
                .value,
            2.0
        );
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn builtins_validate() {
        for s in builtin_scenarios() {
            s.validate()
                .unwrap_or_else(|e| panic!("{} invalid: {e}", s.name));
        }
    }

    #[test]
    fn round_trip_all_builtins() {
        let dir = std::env::temp_dir();
        for s in builtin_scenarios() {
            let path = dir.join(format!("fixprox_rt_{}.json", s.name));
            std::fs::write(&path, s.to_json()).unwrap();
            let back = load_scenario(&path).unwrap();
            assert_eq!(s, back, "round trip changed {}", s.name);
            std::fs::remove_file(&path).ok();
        }
    }

    #[test]
    fn load_rejects_matrix_dimension_mismatch() {
        let text = r#"{
            "name": "bad", "dim": 2,
            "metric": {"kind": "euclidean"},
            "map": {"pieces": [{"matrix": [[1.0]], "offset": [0.0, 0.0]}]},
            "start": [0.0, 0.0]
        }"#;
        let err = serde_json::from_str::<Scenario>(text).unwrap_err();
        assert!(err.to_string().contains("dimension"));
    }

    #[test]
    fn load_rejects_negative_beta() {
        let text = r#"{
            "name": "bad", "dim": 1,
            "metric": {"kind": "euclidean"},
            "map": {"pieces": [{"matrix": [[0.5]], "offset": [0.0]}]},
            "schedule": {"family": "constant", "alpha": 1.0, "beta": -0.5, "mu": 0.0},
            "start": [0.0]
        }"#;
        let path = std::env::temp_dir().join("fixprox_bad_beta.json");
        std::fs::write(&path, text).unwrap();
        let err = load_scenario(&path).unwrap_err();
        std::fs::remove_file(&path).ok();
        assert!(err.to_string().contains("beta"), "got: {err}");
    }

    #[test]
    fn validate_names_the_violated_invariant() {
        let mut s = builtin("s1").unwrap();
        s.start = pt(&[0.0, 0.0]);
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("start point dimension"));

        let mut s = builtin("s1").unwrap();
        s.expected.fixed_point.as_mut().unwrap().note.clear();
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("derivation note"));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(load_scenario(Path::new("/nonexistent/scenario.json")).is_err());
    }
}
