//! Report types and writers shared by the subcommands.
//!
//! Everything written here is byte-deterministic for identical inputs:
//! floats go through Rust's shortest-round-trip formatting and all field
//! orders are fixed.

use std::fmt::Write as _;

use serde::Serialize;

use fixprox_core::{IterationTrace, ProximityResult};

/// One expected-value check inside a run report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: f64,
    pub pass: bool,
}

/// Overall status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Pass,
    Fail,
    Informational,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Pass | RunStatus::Informational => 0,
            RunStatus::Fail => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProximitySummary {
    pub z: Vec<f64>,
    pub t_z: Vec<f64>,
    pub pair_distance: f64,
    pub gap_estimate: f64,
    pub even_limit_gap: f64,
    pub odd_limit_gap: f64,
    pub converged: bool,
}

impl ProximitySummary {
    pub fn new(res: &ProximityResult, pair_distance: f64) -> Self {
        Self {
            z: res.z.coords().to_vec(),
            t_z: res.t_z.coords().to_vec(),
            pair_distance,
            gap_estimate: res.gap_estimate,
            even_limit_gap: res.even_limit_gap,
            odd_limit_gap: res.odd_limit_gap,
            converged: res.converged,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proximity: Option<ProximitySummary>,
    pub final_step_distance: f64,
    pub iterations: usize,
}

/// The run/proximity report emitted as text or JSON.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    /// Present when the metric is not uniformly convex, so the
    /// fixed-point-existence hypotheses are unmet.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses_unmet: Option<String>,
    pub convergence: ConvergenceSummary,
    /// Final value of the cyclic slack condition xi_n - gamma_n D² when the
    /// scenario carries a schedule and a pair start.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclic_slack_tail: Option<f64>,
    pub trace_path: String,
    pub checks: Vec<CheckLine>,
    pub status: RunStatus,
}

impl RunReport {
    pub fn status_from_checks(checks: &[CheckLine]) -> RunStatus {
        if checks.is_empty() {
            RunStatus::Informational
        } else if checks.iter().all(|c| c.pass) {
            RunStatus::Pass
        } else {
            RunStatus::Fail
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario: {}", self.scenario);
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        if let Some(w) = &self.hypotheses_unmet {
            let _ = writeln!(out, "warning: {w}");
        }
        if let Some(fp) = &self.convergence.fixed_point {
            let _ = writeln!(out, "fixed point: {}", fmt_coords(fp));
        }
        if let Some(p) = &self.convergence.proximity {
            let _ = writeln!(out, "proximity point z: {}", fmt_coords(&p.z));
            let _ = writeln!(out, "proximity point Tz: {}", fmt_coords(&p.t_z));
            let _ = writeln!(out, "d(z, Tz): {}", p.pair_distance);
            let _ = writeln!(out, "set gap estimate: {}", p.gap_estimate);
            let _ = writeln!(
                out,
                "even/odd tail gaps: {} / {}",
                p.even_limit_gap, p.odd_limit_gap
            );
            let _ = writeln!(out, "converged: {}", p.converged);
        }
        if let Some(tail) = self.cyclic_slack_tail {
            let _ = writeln!(out, "cyclic slack condition tail: {tail}");
        }
        let _ = writeln!(
            out,
            "final step distance: {} after {} iterations",
            self.convergence.final_step_distance, self.convergence.iterations
        );
        let _ = writeln!(out, "trace: {}", self.trace_path);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check {}: expected {} got {} (tol {}) -> {}",
                c.name,
                c.expected,
                c.actual,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "status: {}",
            match self.status {
                RunStatus::Pass => "pass",
                RunStatus::Fail => "fail",
                RunStatus::Informational => "informational",
            }
        );
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            s
        } else {
            self.render_text()
        }
    }
}

pub fn fmt_coords(coords: &[f64]) -> String {
    let mut s = String::from("(");
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{c}");
    }
    s.push(')');
    s
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Write a trace CSV with the fixed column schema
/// `n,x0..x{d-1},step_distance,pair_distance,xi,k,residual`; cells without a
/// value stay empty so the header never changes shape.
pub fn trace_csv(trace: &IterationTrace) -> String {
    let dim = trace.points()[0].dim();
    let mut out = String::from("n");
    for i in 0..dim {
        let _ = write!(out, ",x{i}");
    }
    out.push_str(",step_distance,pair_distance,xi,k,residual\n");
    for (n, point) in trace.points().iter().enumerate() {
        let _ = write!(out, "{n}");
        for c in point.coords() {
            let _ = write!(out, ",{c}");
        }
        let step = trace.step_distances().get(n).copied();
        let pair = trace.pair_distances().and_then(|p| p.get(n).copied());
        // report at index n - 1 covers iterate n
        let report = trace
            .reports()
            .and_then(|r| n.checked_sub(1).and_then(|i| r.get(i)));
        let _ = writeln!(
            out,
            ",{},{},{},{},{}",
            fmt_opt(step),
            fmt_opt(pair),
            fmt_opt(report.map(|r| r.xi)),
            fmt_opt(report.and_then(|r| r.k)),
            fmt_opt(report.map(|r| r.residual)),
        );
    }
    out
}

/// CSV for a proximity distance trace: consecutive-iterate distances and
/// their excess over the set gap.
pub fn proximity_csv(points: &[Vec<f64>], dists: &[f64], gap: f64) -> String {
    let dim = points[0].len();
    let mut out = String::from("n");
    for i in 0..dim {
        let _ = write!(out, ",x{i}");
    }
    out.push_str(",dist_to_next,excess_over_gap\n");
    for (n, coords) in points.iter().enumerate() {
        let _ = write!(out, "{n}");
        for c in coords {
            let _ = write!(out, ",{c}");
        }
        match dists.get(n) {
            Some(d) => {
                let _ = writeln!(out, ",{d},{}", d - gap);
            }
            None => out.push_str(",,\n"),
        }
    }
    out
}
