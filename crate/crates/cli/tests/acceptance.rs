//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Criteria 1-8 exercise the library directly; criterion 9 drives the
//! compiled binary. Every tolerance is pinned here, in code.

use std::process::Command;

use fixprox_core::rng::SplitMix64;
use fixprox_core::*;

fn pt(coords: &[f64]) -> Point {
    Point::new(coords.to_vec()).unwrap()
}

/// Criterion 1: on 10^5 seeded parameter points with beta in (0,1) and
/// beta(1+2mu) < 1, the three quantities k_nonexpansive - 1,
/// k_expansive - 1, and alpha + 2 beta (1 + mu) - 1 vanish together,
/// exact to 1e-12.
#[test]
fn criterion_1_formula_identities() {
    let mut rng = SplitMix64::new(101);
    let mut checked = 0usize;
    while checked < 100_000 {
        let alpha = rng.range(0.0, 3.0);
        let beta = rng.range(1e-9, 1.0);
        let mu = rng.range(-1.0, 3.0);
        if beta >= 1.0 || beta * (1.0 + 2.0 * mu) >= 1.0 {
            continue;
        }
        checked += 1;
        let p = ParamPoint::plain(alpha, beta, mu).unwrap();
        let c = alpha + 2.0 * beta * (1.0 + mu) - 1.0;
        let ka = k_nonexpansive(&p).unwrap();
        let kb = k_expansive(&p).unwrap();
        assert!(
            ((ka - 1.0) * (1.0 - beta) - c).abs() <= 1e-12,
            "nonexpansive identity broken at ({alpha}, {beta}, {mu})"
        );
        assert!(
            ((kb - 1.0) * (1.0 - beta * (1.0 + 2.0 * mu)) - c).abs() <= 1e-12,
            "expansive identity broken at ({alpha}, {beta}, {mu})"
        );
        if c > 1e-12 {
            assert!(ka > 1.0 && kb > 1.0);
        } else if c < -1e-12 {
            assert!(ka < 1.0 && kb < 1.0);
        }
    }
    // points constructed to sit exactly on the limit surface: both constants
    // equal 1 to machine precision
    for _ in 0..10_000 {
        let alpha = rng.range(0.0, 1.0);
        let beta = rng.range(0.01, 0.9);
        let mu = (1.0 - alpha - 2.0 * beta) / (2.0 * beta);
        if mu < -1.0 {
            continue;
        }
        let p = ParamPoint::plain(alpha, beta, mu).unwrap();
        assert!((k_nonexpansive(&p).unwrap() - 1.0).abs() <= 1e-12);
        assert!((k_expansive(&p).unwrap() - 1.0).abs() <= 1e-12);
    }
    println!("[PASS] criterion 1: contraction-constant identities exact to 1e-12 on 10^5 samples");
}

/// Criterion 2: for 10^5 random (variant, params, d_xy, d_t), the slack from
/// xi_slack makes the inequality hold with residual in
/// [-1e-12, 1e-12] ∪ (0, inf), and xi = 0 exactly when the raw residual is
/// nonpositive.
#[test]
fn criterion_2_slack_correctness() {
    let mut rng = SplitMix64::new(202);
    let variants = [
        InequalityVariant::CrossTerm,
        InequalityVariant::SquaredTerm,
        InequalityVariant::CyclicCrossTerm,
        InequalityVariant::CyclicSquaredTerm,
    ];
    for i in 0..100_000 {
        let p = ParamPoint::new(
            rng.range(0.0, 2.0),
            rng.range(0.0, 2.0),
            rng.range(-1.0, 2.0),
            rng.range(0.0, 2.0),
        )
        .unwrap();
        let d_xy = rng.range(0.0, 8.0);
        let d_t = rng.range(0.0, 8.0);
        let gap = rng.range(0.0, 2.0);
        let variant = variants[i % 4];
        let xi = xi_slack(variant, &p, d_xy, d_t);
        let (raw_residual, _) = inequality_residual(variant, &p, d_xy, d_t, 0.0, 0.0);
        let raw = -raw_residual;
        if raw <= 0.0 {
            assert_eq!(xi, 0.0, "xi must be exactly 0 when raw residual <= 0");
        } else {
            assert!(xi > 0.0, "xi must be positive when raw residual > 0");
        }
        let (residual, holds) = inequality_residual(variant, &p, d_xy, d_t, xi, gap);
        assert!(holds, "inequality must hold with its own slack");
        assert!(residual >= -1e-12);
        let gamma_term = if variant.is_cyclic() {
            p.gamma() * gap * gap
        } else {
            0.0
        };
        if raw > 0.0 {
            // xi cancels the deficit exactly, leaving only the cyclic allowance
            assert!(
                (residual - gamma_term).abs() <= 1e-12,
                "residual {residual} vs gamma term {gamma_term}"
            );
        }
    }
    println!("[PASS] criterion 2: slack correctness on 10^5 samples");
}

/// Grid oracle for the minimal feasible cross-term coefficient: smallest
/// rho = -1 + i * 1e-6 satisfying the defining inequality. Feasibility is
/// monotone nondecreasing in rho, so bisection over the grid returns the
/// same index a linear scan would.
fn mu_grid_oracle(d_xy: f64, d_t: f64, d_diff: f64) -> f64 {
    if d_xy * d_t < 1e-12 {
        return -1.0;
    }
    const STEP: f64 = 1e-6;
    const N: u64 = 2_000_000;
    let feasible = |i: u64| {
        let rho = -1.0 + i as f64 * STEP;
        d_diff * d_diff <= d_xy * d_xy + d_t * d_t + 2.0 * rho * d_xy * d_t
    };
    if feasible(0) {
        return -1.0;
    }
    let (mut lo, mut hi) = (0u64, N);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    -1.0 + hi as f64 * STEP
}

/// Criterion 3: empirical_mu matches the 1e-6-step grid oracle within 1e-5
/// on 10^4 random distance triples satisfying the envelope, whose residuals
/// stay above -1e-12.
#[test]
fn criterion_3_mu_oracle_equivalence() {
    let metric = MetricDef::Euclidean;
    let mut rng = SplitMix64::new(303);
    for _ in 0..10_000 {
        let dim = 2 + (rng.next_u64() % 3) as usize;
        let sample = |rng: &mut SplitMix64| {
            Point::new((0..dim).map(|_| rng.range(-4.0, 4.0)).collect()).unwrap()
        };
        let (x, y, u, v) = (
            sample(&mut rng),
            sample(&mut rng),
            sample(&mut rng),
            sample(&mut rng),
        );
        let (lo_res, hi_res) = envelope_residuals(&metric, &x, &y, &u, &v).unwrap();
        assert!(
            lo_res >= -1e-12 && hi_res >= -1e-12,
            "envelope residual negative"
        );

        let d_xy = distance(&metric, &x, &y).unwrap();
        let d_t = distance(&metric, &u, &v).unwrap();
        let d_diff = distance(&metric, &x.sub(&y).unwrap(), &u.sub(&v).unwrap()).unwrap();
        let fast = empirical_mu(d_xy, d_t, d_diff).unwrap();
        let slow = mu_grid_oracle(d_xy, d_t, d_diff);
        assert!(
            (fast - slow).abs() <= 1e-5,
            "mu mismatch: {fast} vs oracle {slow} on ({d_xy}, {d_t}, {d_diff})"
        );
    }
    println!(
        "[PASS] criterion 3: empirical mu matches the grid oracle within 1e-5 on 10^4 triples"
    );
}

/// Criterion 4: scenario s1 converges to 2 within 1e-9 in at most 60
/// iterations; tail residuals for offsets 1..3 and the squared-gap deltas
/// all sit below 1e-8 at the tail.
#[test]
fn criterion_4_fixed_point_reproduction() {
    let s1 = builtin("s1").unwrap();
    let trace = orbit(&s1.metric, &s1.map, &s1.start, 60).unwrap();
    let z = detect_fixed_point(&trace, &s1.map, 1e-9)
        .unwrap()
        .expect("s1 must converge within 60 iterations");
    assert!((z.coords()[0] - 2.0).abs() <= 1e-9, "fixed point {z}");

    for m in 1..=3 {
        let residuals = tail_residuals(&trace, m).unwrap();
        let tail = &residuals[residuals.len().saturating_sub(5)..];
        assert!(
            tail.iter().all(|r| *r < 1e-8),
            "tail residuals at offset {m}: {tail:?}"
        );
    }

    let y0 = s1.pair.clone().unwrap();
    let pair = pair_trace(&s1.metric, &s1.map, &s1.start, &y0, 60, None, None).unwrap();
    let deltas = squared_gap_deltas(&pair).unwrap();
    let tail = &deltas[deltas.len() - 5..];
    assert!(
        tail.iter().all(|d| d.abs() < 1e-8),
        "squared-gap tail: {tail:?}"
    );
    println!(
        "[PASS] criterion 4: s1 reaches 2 within 1e-9 in <= 60 iterations with vanishing tails"
    );
}

/// Criterion 5: scenario s3 reproduces the best proximity pair
/// ((0,1), (0,-1)) at gap 2 within tolerance in at most 100 iterations; the
/// consecutive-distance trace decreases to 2; even/odd gaps vanish; ten
/// seeded starts agree on z within 1e-5.
#[test]
fn criterion_5_best_proximity_reproduction() {
    let s3 = builtin("s3").unwrap();
    let sets = s3.sets.clone().unwrap();
    let pair = CyclicPair::new(sets.a.clone(), sets.b, s3.map.clone()).unwrap();
    assert!((pair.gap() - 2.0).abs() <= 1e-8);

    let res = best_proximity_run(&pair, &s3.metric, &s3.start, 100, 1e-8).unwrap();
    assert!(res.converged);
    assert!(distance(&s3.metric, &res.z, &pt(&[0.0, 1.0])).unwrap() <= 1e-6);
    assert!(distance(&s3.metric, &res.t_z, &pt(&[0.0, -1.0])).unwrap() <= 1e-6);
    assert!(res.even_limit_gap < 1e-8 && res.odd_limit_gap < 1e-8);

    let trace = proximity_distance_trace(&pair, &s3.metric, &s3.start, 100).unwrap();
    for w in trace.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "distance trace must decrease");
    }
    assert!((trace.last().unwrap() - 2.0).abs() <= 1e-6);

    let mut rng = SplitMix64::new(505);
    let mut limits = Vec::new();
    for _ in 0..10 {
        let x0 = sets.a.sample(&mut rng).unwrap();
        let r = best_proximity_run(&pair, &s3.metric, &x0, 100, 1e-8).unwrap();
        limits.push(r.z);
    }
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            let d = distance(&s3.metric, &limits[i], &limits[j]).unwrap();
            assert!(d <= 1e-5, "start-point dependence: z's differ by {d}");
        }
    }
    println!(
        "[PASS] criterion 5: s3 best proximity pair, decreasing trace, and 10-start uniqueness"
    );
}

/// Criterion 6: scenario s4 (intersecting sets) has gap 0 and the unique
/// fixed point 1.5 within 1e-9.
#[test]
fn criterion_6_intersecting_sets_reduction() {
    let s4 = builtin("s4").unwrap();
    let sets = s4.sets.clone().unwrap();
    let pair = CyclicPair::new(sets.a, sets.b, s4.map.clone()).unwrap();
    assert!(pair.gap() <= 1e-10, "gap must vanish for intersecting sets");

    let trace = orbit(&s4.metric, &s4.map, &s4.start, 100).unwrap();
    let z = detect_fixed_point(&trace, &s4.map, 1e-9)
        .unwrap()
        .expect("s4 must converge");
    assert!((z.coords()[0] - 1.5).abs() <= 1e-9);

    let res = best_proximity_run(&pair, &s4.metric, &s4.start, 100, 1e-9).unwrap();
    assert!(res.converged);
    assert!(distance(&s4.metric, &res.z, &res.t_z).unwrap() <= 1e-9);
    println!("[PASS] criterion 6: s4 collapses to the unique fixed point 1.5 at gap 0");
}

/// Criterion 7: the three classifier examples return StrictPseudoIS,
/// ContractiveIS, and Unclassified at horizon 10^3 and tolerance 1e-6.
#[test]
fn criterion_7_classifier_regimes() {
    let strict_pseudo = ParamSchedule {
        family: ScheduleFamily::OnePlusCOverN {
            alpha: OverN { base: 1.0, c: 1.0 },
            beta: OverN::constant(0.3),
            mu: OverN { base: -1.0, c: 0.5 },
            gamma: OverN::default(),
        },
        limits: None,
    };
    assert_eq!(
        classify_schedule(&strict_pseudo, 1000, 1e-6),
        ScheduleClass::StrictPseudoIS
    );

    let contractive = ParamSchedule {
        family: ScheduleFamily::OnePlusCOverN {
            alpha: OverN { base: 0.5, c: 1.0 },
            beta: OverN { base: 1.0, c: -1.0 },
            mu: OverN::constant(-0.8),
            gamma: OverN::default(),
        },
        limits: None,
    };
    assert_eq!(
        classify_schedule(&contractive, 1000, 1e-6),
        ScheduleClass::ContractiveIS
    );

    let unclassified = ParamSchedule::constant(2.0, 0.0, 0.0, 0.0).unwrap();
    assert_eq!(
        classify_schedule(&unclassified, 1000, 1e-6),
        ScheduleClass::Unclassified
    );
    println!(
        "[PASS] criterion 7: classifier returns StrictPseudoIS / ContractiveIS / Unclassified"
    );
}

/// Criterion 8: the isometric scenarios s2 and s5 keep pair distances
/// constant to 1e-12, and s2's proximal pair realizes d = D = 2.
#[test]
fn criterion_8_isometry_sanity() {
    for name in ["s2", "s5"] {
        let s = builtin(name).unwrap();
        let y0 = s.pair.clone().unwrap();
        let trace = pair_trace(&s.metric, &s.map, &s.start, &y0, 60, None, None).unwrap();
        let pair = trace.pair_distances().unwrap();
        let (min, max) = pair
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
                (lo.min(*d), hi.max(*d))
            });
        assert!(
            max - min < 1e-12,
            "{name}: pair distance varied by {}",
            max - min
        );
    }

    let s2 = builtin("s2").unwrap();
    let sets = s2.sets.clone().unwrap();
    let pair = CyclicPair::new(sets.a, sets.b, s2.map.clone()).unwrap();
    assert!((pair.gap() - 2.0).abs() <= 1e-8);
    let res = best_proximity_run(&pair, &s2.metric, &s2.start, 20, 1e-9).unwrap();
    assert!(res.converged);
    let d = distance(&s2.metric, &res.z, &res.t_z).unwrap();
    assert!((d - 2.0).abs() <= 1e-12, "proximal pair distance {d}");
    println!("[PASS] criterion 8: s2/s5 pair distances constant; s2 proximal pair realizes D = 2");
}

fn fixprox(args: &[&str], dir: &std::path::Path) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fixprox"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Criterion 9: identical invocations produce byte-identical outputs, and
/// the exit-code contract holds on a deliberately failing expected value.
#[test]
fn criterion_9_cli_determinism_and_exit_codes() {
    let dir = std::env::temp_dir().join("fixprox_acceptance_cli");
    std::fs::create_dir_all(&dir).unwrap();

    let run_args = [
        "run",
        "--scenario",
        "s1",
        "--iters",
        "80",
        "--out",
        "run_trace.csv",
    ];
    let (code_a, stdout_a) = fixprox(&run_args, &dir);
    let csv_a = std::fs::read(dir.join("run_trace.csv")).unwrap();
    let (code_b, stdout_b) = fixprox(&run_args, &dir);
    let csv_b = std::fs::read(dir.join("run_trace.csv")).unwrap();
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(stdout_a, stdout_b, "run stdout must be byte-identical");
    assert_eq!(csv_a, csv_b, "run trace must be byte-identical");

    let sweep_args = [
        "sweep", "--alpha", "0:2", "--beta", "0:0.9", "--mu", "-1:1", "--steps", "5", "--out",
        "grid.csv",
    ];
    let (code_a, stdout_a) = fixprox(&sweep_args, &dir);
    let grid_a = std::fs::read(dir.join("grid.csv")).unwrap();
    let (code_b, stdout_b) = fixprox(&sweep_args, &dir);
    let grid_b = std::fs::read(dir.join("grid.csv")).unwrap();
    assert_eq!((code_a, code_b), (0, 0));
    assert_eq!(stdout_a, stdout_b);
    assert_eq!(grid_a, grid_b, "sweep grid must be byte-identical");

    // deliberately wrong expected fixed point: exit code 1
    let mut bad = builtin("s1").unwrap();
    bad.expected.fixed_point = Some(ExpectedValue::new(
        Point::new(vec![3.0]).unwrap(),
        "deliberately wrong target",
    ));
    let bad_path = dir.join("bad_expectation.json");
    std::fs::write(&bad_path, bad.to_json()).unwrap();
    let (code, _) = fixprox(
        &[
            "run",
            "--scenario",
            bad_path.to_str().unwrap(),
            "--out",
            "bad_trace.csv",
        ],
        &dir,
    );
    assert_eq!(code, 1, "failing expected value must exit 1");

    // unresolvable scenario: exit code 2
    let (code, _) = fixprox(&["run", "--scenario", "no_such_scenario"], &dir);
    assert_eq!(code, 2, "input error must exit 2");
    println!("[PASS] criterion 9: CLI byte-determinism and exit-code contract");
}
