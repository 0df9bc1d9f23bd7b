//! Implementations of the run, classify, sweep, and proximity subcommands.
//!
//! Errors returned as `Err(String)` are input errors (exit code 2); an
//! `Ok` carries the process exit code under the 0 = pass/informational,
//! 1 = expected-value-failure contract.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::result::Result;

use fixprox_core::rng::SplitMix64;
use fixprox_core::*;

use crate::output::{
    fmt_coords, proximity_csv, trace_csv, CheckLine, ConvergenceSummary, ProximitySummary,
    RunReport, RunStatus,
};

const VERDICT_TOL: f64 = 1e-6;
const GAP_CHECK_TOL: f64 = 1e-8;
const PAIR_POINT_TOL: f64 = 1e-6;
const CONSTANT_TRACE_TOL: f64 = 1e-12;
/// Constant schedules are horizon-independent; a short horizon keeps sweep
/// cells cheap.
const SWEEP_HORIZON: usize = 4;

fn resolve_scenario(arg: &str) -> Result<Scenario, String> {
    if let Some(s) = builtin(arg) {
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.exists() {
        return load_scenario(path).map_err(|e| e.to_string());
    }
    Err(format!(
        "scenario '{arg}' is neither a builtin name nor an existing file"
    ))
}

fn resolve_schedule(arg: &str) -> Result<ParamSchedule, String> {
    if arg.trim_start().starts_with('{') {
        let schedule: ParamSchedule =
            serde_json::from_str(arg).map_err(|e| format!("inline schedule: {e}"))?;
        schedule.validate().map_err(|e| e.to_string())?;
        return Ok(schedule);
    }
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let schedule: ParamSchedule =
            serde_json::from_str(&text).map_err(|e| format!("{arg}: {e}"))?;
        schedule.validate().map_err(|e| e.to_string())?;
        return Ok(schedule);
    }
    if let Some(s) = builtin(arg) {
        if let Some(schedule) = s.schedule {
            return Ok(schedule);
        }
        return Err(format!("builtin scenario '{arg}' has no schedule"));
    }
    Err(format!(
        "schedule '{arg}' is not inline JSON, a file, or a builtin scenario"
    ))
}

fn write_out(path: &Path, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn hypotheses_note(metric: &MetricDef) -> Option<String> {
    if metric.uniformly_convex() {
        None
    } else {
        Some(
            "metric is not uniformly convex; theorem hypotheses unmet for fixed-point existence"
                .into(),
        )
    }
}

pub fn cmd_run(
    scenario_arg: &str,
    iters: usize,
    tol: f64,
    out: Option<PathBuf>,
    horizon: usize,
    json: bool,
) -> Result<i32, String> {
    let scenario = resolve_scenario(scenario_arg)?;
    let out_path = out.unwrap_or_else(|| PathBuf::from(format!("{}_trace.csv", scenario.name)));

    let trace = match &scenario.pair {
        Some(y0) => pair_trace(
            &scenario.metric,
            &scenario.map,
            &scenario.start,
            y0,
            iters,
            scenario.schedule.as_ref(),
            Some(InequalityVariant::CrossTerm),
        ),
        None => orbit(&scenario.metric, &scenario.map, &scenario.start, iters),
    }
    .map_err(|e| e.to_string())?;

    let fixed = detect_fixed_point(&trace, &scenario.map, tol).map_err(|e| e.to_string())?;

    let cyclic_pair = match &scenario.sets {
        Some(sets) => Some(
            CyclicPair::new(sets.a.clone(), sets.b.clone(), scenario.map.clone())
                .map_err(|e| e.to_string())?,
        ),
        None => None,
    };
    let proximity = match &cyclic_pair {
        Some(pair) => Some(
            best_proximity_run(pair, &scenario.metric, &scenario.start, iters.max(4), tol)
                .map_err(|e| e.to_string())?,
        ),
        None => None,
    };

    let mut checks = Vec::new();
    if let Some(expected) = &scenario.expected.fixed_point {
        let (actual, pass) = match &fixed {
            Some(z) => {
                let err =
                    distance(&scenario.metric, z, &expected.value).map_err(|e| e.to_string())?;
                (fmt_coords(z.coords()), err <= tol)
            }
            None => ("none".into(), false),
        };
        checks.push(CheckLine {
            name: "fixed_point".into(),
            expected: fmt_coords(expected.value.coords()),
            actual,
            tolerance: tol,
            pass,
        });
    }
    if let (Some(expected), Some(pair)) = (&scenario.expected.set_gap, &cyclic_pair) {
        checks.push(CheckLine {
            name: "set_gap".into(),
            expected: expected.value.to_string(),
            actual: pair.gap().to_string(),
            tolerance: GAP_CHECK_TOL,
            pass: (pair.gap() - expected.value).abs() <= GAP_CHECK_TOL,
        });
    }
    if let (Some(expected), Some(res)) = (&scenario.expected.best_proximity_pair, &proximity) {
        let dz =
            distance(&scenario.metric, &res.z, &expected.value.0).map_err(|e| e.to_string())?;
        let dtz =
            distance(&scenario.metric, &res.t_z, &expected.value.1).map_err(|e| e.to_string())?;
        checks.push(CheckLine {
            name: "best_proximity_pair".into(),
            expected: format!(
                "{} / {}",
                fmt_coords(expected.value.0.coords()),
                fmt_coords(expected.value.1.coords())
            ),
            actual: format!(
                "{} / {}",
                fmt_coords(res.z.coords()),
                fmt_coords(res.t_z.coords())
            ),
            tolerance: PAIR_POINT_TOL,
            pass: res.converged && dz <= PAIR_POINT_TOL && dtz <= PAIR_POINT_TOL,
        });
    }
    let verdict = scenario
        .schedule
        .as_ref()
        .map(|s| classify_schedule(s, horizon.max(1), VERDICT_TOL));
    if let (Some(expected), Some(actual)) = (&scenario.expected.verdict, &verdict) {
        checks.push(CheckLine {
            name: "verdict".into(),
            expected: expected.value.to_string(),
            actual: actual.to_string(),
            tolerance: VERDICT_TOL,
            pass: *actual == expected.value,
        });
    }
    if let Some(expected) = &scenario.expected.constant_pair_distance {
        let pair = trace
            .pair_distances()
            .ok_or_else(|| "scenario has constant_pair_distance but no pair start".to_string())?;
        let (min, max) = pair
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
                (lo.min(*d), hi.max(*d))
            });
        let variation = max - min;
        checks.push(CheckLine {
            name: "constant_pair_distance".into(),
            expected: expected.value.to_string(),
            actual: format!("{} (variation {variation})", pair[0]),
            tolerance: CONSTANT_TRACE_TOL,
            pass: variation < CONSTANT_TRACE_TOL && (pair[0] - expected.value).abs() <= 1e-9,
        });
    }

    write_out(&out_path, &trace_csv(&trace))?;

    let pair_distance = match (&proximity, &scenario.metric) {
        (Some(res), m) => Some(distance(m, &res.z, &res.t_z).map_err(|e| e.to_string())?),
        _ => None,
    };
    let report = RunReport {
        scenario: scenario.name.clone(),
        verdict: verdict.map(|v| v.to_string()),
        hypotheses_unmet: hypotheses_note(&scenario.metric),
        convergence: ConvergenceSummary {
            fixed_point: fixed.map(|z| z.coords().to_vec()),
            proximity: proximity
                .as_ref()
                .map(|res| ProximitySummary::new(res, pair_distance.unwrap_or(f64::NAN))),
            final_step_distance: *trace.step_distances().last().unwrap_or(&0.0),
            iterations: iters,
        },
        cyclic_slack_tail: None,
        trace_path: out_path.display().to_string(),
        checks,
        status: RunStatus::Informational,
    };
    let report = RunReport {
        status: RunReport::status_from_checks(&report.checks),
        ..report
    };
    print!("{}", report.render(json));
    Ok(report.status.exit_code())
}

pub fn cmd_classify(
    schedule_arg: &str,
    horizon: usize,
    tol: f64,
    scaled_band: bool,
    json: bool,
) -> Result<i32, String> {
    let schedule = resolve_schedule(schedule_arg)?;
    if horizon == 0 {
        return Err("horizon must be >= 1".into());
    }
    let band = if scaled_band {
        StrictMuBand::Scaled
    } else {
        StrictMuBand::AlphaAdjusted
    };
    let checks = definition_checks(&schedule, horizon, tol, band);
    let verdict = checks
        .iter()
        .find(|c| c.passed)
        .map_or(ScheduleClass::Unclassified, |c| c.class);

    if json {
        #[derive(serde::Serialize)]
        struct ClassifyReport<'a> {
            verdict: String,
            horizon: usize,
            tolerance: f64,
            checks: &'a [DefinitionCheck],
        }
        let report = ClassifyReport {
            verdict: verdict.to_string(),
            horizon,
            tolerance: tol,
            checks: &checks,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        println!("verdict: {verdict}");
        for c in &checks {
            match &c.failure {
                None => println!("  {:<22} PASS", c.class.to_string()),
                Some(why) => println!("  {:<22} FAIL  {why}", c.class.to_string()),
            }
        }
    }
    Ok(0)
}

fn parse_range(name: &str, text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("--{name} must be LO:HI, got '{text}'"))?;
    let lo: f64 = lo
        .parse()
        .map_err(|_| format!("--{name}: bad number '{lo}'"))?;
    let hi: f64 = hi
        .parse()
        .map_err(|_| format!("--{name}: bad number '{hi}'"))?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(format!(
            "--{name}: range [{lo}, {hi}] is not a finite LO <= HI"
        ));
    }
    Ok((lo, hi))
}

fn grid_values(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

pub fn cmd_sweep(
    alpha: &str,
    beta: &str,
    mu: &str,
    steps: usize,
    out: &Path,
) -> Result<i32, String> {
    if steps < 2 {
        return Err("--steps must be >= 2".into());
    }
    let (a_lo, a_hi) = parse_range("alpha", alpha)?;
    let (b_lo, b_hi) = parse_range("beta", beta)?;
    let (m_lo, m_hi) = parse_range("mu", mu)?;
    if a_lo < 0.0 || b_lo < 0.0 {
        return Err("alpha and beta ranges must stay nonnegative".into());
    }
    if m_lo < -1.0 {
        return Err("mu range must stay at or above -1".into());
    }

    let mut csv = String::from(
        "alpha,beta,mu,region,k_nonexpansive,k_expansive,gamma_floor,\
         strict_contractive,contractive,strict_pseudo,pseudo\n",
    );
    for a in grid_values(a_lo, a_hi, steps) {
        for b in grid_values(b_lo, b_hi, steps) {
            for m in grid_values(m_lo, m_hi, steps) {
                let p = ParamPoint::plain(a, b, m).map_err(|e| e.to_string())?;
                let region = region_xi_zero(&p);
                let ka = k_nonexpansive(&p).ok();
                let kb = k_expansive(&p).ok();
                let floor = ka.or(kb).map(gamma_floor_from_k);
                let schedule = ParamSchedule::constant(a, b, m, 0.0).map_err(|e| e.to_string())?;
                let bands = definition_checks(
                    &schedule,
                    SWEEP_HORIZON,
                    VERDICT_TOL,
                    StrictMuBand::AlphaAdjusted,
                );
                let _ = write!(csv, "{a},{b},{m},{region}");
                for v in [ka, kb, floor] {
                    match v {
                        Some(x) => {
                            let _ = write!(csv, ",{x}");
                        }
                        None => csv.push(','),
                    }
                }
                for check in &bands {
                    let _ = write!(csv, ",{}", u8::from(check.passed));
                }
                csv.push('\n');
            }
        }
    }
    write_out(out, &csv)?;
    println!("wrote {} cells to {}", steps * steps * steps, out.display());
    Ok(0)
}

pub fn cmd_proximity(
    scenario_arg: &str,
    iters: usize,
    tol: f64,
    out: Option<PathBuf>,
    seed: u64,
    starts: usize,
    json: bool,
) -> Result<i32, String> {
    let scenario = resolve_scenario(scenario_arg)?;
    let sets = scenario
        .sets
        .as_ref()
        .ok_or_else(|| format!("scenario '{}' has no cyclic sets", scenario.name))?;
    let pair = CyclicPair::new(sets.a.clone(), sets.b.clone(), scenario.map.clone())
        .map_err(|e| e.to_string())?;
    let out_path = out.unwrap_or_else(|| PathBuf::from(format!("{}_proximity.csv", scenario.name)));
    let iters = iters.max(4);

    let dists = proximity_distance_trace(&pair, &scenario.metric, &scenario.start, iters)
        .map_err(|e| e.to_string())?;
    let res = best_proximity_run(&pair, &scenario.metric, &scenario.start, iters, tol)
        .map_err(|e| e.to_string())?;
    let orbit_trace = orbit(&scenario.metric, &scenario.map, &scenario.start, iters)
        .map_err(|e| e.to_string())?;
    let points: Vec<Vec<f64>> = orbit_trace
        .points()
        .iter()
        .map(|p| p.coords().to_vec())
        .collect();
    write_out(&out_path, &proximity_csv(&points, &dists, pair.gap()))?;

    let mut checks = Vec::new();
    if let Some(expected) = &scenario.expected.set_gap {
        checks.push(CheckLine {
            name: "set_gap".into(),
            expected: expected.value.to_string(),
            actual: pair.gap().to_string(),
            tolerance: GAP_CHECK_TOL,
            pass: (pair.gap() - expected.value).abs() <= GAP_CHECK_TOL,
        });
    }
    if let Some(expected) = &scenario.expected.best_proximity_pair {
        let dz =
            distance(&scenario.metric, &res.z, &expected.value.0).map_err(|e| e.to_string())?;
        let dtz =
            distance(&scenario.metric, &res.t_z, &expected.value.1).map_err(|e| e.to_string())?;
        checks.push(CheckLine {
            name: "best_proximity_pair".into(),
            expected: format!(
                "{} / {}",
                fmt_coords(expected.value.0.coords()),
                fmt_coords(expected.value.1.coords())
            ),
            actual: format!(
                "{} / {}",
                fmt_coords(res.z.coords()),
                fmt_coords(res.t_z.coords())
            ),
            tolerance: PAIR_POINT_TOL,
            pass: res.converged && dz <= PAIR_POINT_TOL && dtz <= PAIR_POINT_TOL,
        });
    }
    if starts > 1 {
        // multi-start uniqueness probe: runs from seeded samples of A must
        // land on the same A-side point
        let mut rng = SplitMix64::new(seed);
        let mut limits = vec![res.z.clone()];
        for _ in 0..starts {
            let x0 = sets.a.sample(&mut rng).map_err(|e| e.to_string())?;
            let r = best_proximity_run(&pair, &scenario.metric, &x0, iters, tol)
                .map_err(|e| e.to_string())?;
            limits.push(r.z);
        }
        let mut spread = 0.0f64;
        for i in 0..limits.len() {
            for j in i + 1..limits.len() {
                let d = distance(&scenario.metric, &limits[i], &limits[j])
                    .map_err(|e| e.to_string())?;
                spread = spread.max(d);
            }
        }
        checks.push(CheckLine {
            name: "multi_start_agreement".into(),
            expected: format!("spread <= {}", 10.0 * tol),
            actual: format!("spread {spread}"),
            tolerance: 10.0 * tol,
            pass: spread <= 10.0 * tol,
        });
    }

    // with a schedule and a B-side partner, report the tail of the cyclic
    // slack condition xi_n - gamma_n D², the quantity a valid cyclic
    // schedule must drive to zero
    let cyclic_slack_tail = match (&scenario.schedule, &scenario.pair) {
        (Some(schedule), Some(y0)) => {
            let trace = pair_trace(
                &scenario.metric,
                &scenario.map,
                &scenario.start,
                y0,
                iters,
                None,
                None,
            )
            .map_err(|e| e.to_string())?;
            let pd = trace
                .pair_distances()
                .expect("pair trace carries distances");
            let d_xy = pd[0];
            pd.last().map(|d_t| {
                cyclic_slack_condition(
                    InequalityVariant::CyclicCrossTerm,
                    &schedule.at(iters),
                    d_xy,
                    *d_t,
                    pair.gap(),
                )
            })
        }
        _ => None,
    };

    let pair_distance = distance(&scenario.metric, &res.z, &res.t_z).map_err(|e| e.to_string())?;
    let report = RunReport {
        scenario: scenario.name.clone(),
        verdict: None,
        hypotheses_unmet: hypotheses_note(&scenario.metric),
        convergence: ConvergenceSummary {
            fixed_point: None,
            proximity: Some(ProximitySummary::new(&res, pair_distance)),
            final_step_distance: *dists.last().unwrap_or(&0.0),
            iterations: iters,
        },
        cyclic_slack_tail,
        trace_path: out_path.display().to_string(),
        checks,
        status: RunStatus::Informational,
    };
    let report = RunReport {
        status: RunReport::status_from_checks(&report.checks),
        ..report
    };
    print!("{}", report.render(json));
    Ok(report.status.exit_code())
}
