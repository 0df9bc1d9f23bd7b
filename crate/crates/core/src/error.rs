//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong when constructing domain values or running
/// an analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// Two points (or a point and a set/map) live in different dimensions.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A coordinate or parameter is NaN or infinite where a finite value is required.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// A metric definition violates its own constraints (p < 1, nonpositive weight, ...).
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    /// A convex set descriptor violates its own constraints (lower bound above
    /// upper bound, negative radius, ...).
    #[error("invalid set: {0}")]
    InvalidSet(String),

    /// A halfspace intersection admits no feasible point.
    #[error("infeasible set: halfspace intersection is empty (max violation {max_violation:.3e})")]
    InfeasibleSet { max_violation: f64 },

    /// An iterative routine ran out of iterations before reaching its tolerance.
    #[error("no convergence after {iterations} iterations (best estimate {best_estimate})")]
    NonConvergence {
        best_estimate: f64,
        iterations: usize,
    },

    /// A contraction-constant denominator is outside the regime where the
    /// formula is defined (beta >= 1 for the nonexpansive branch,
    /// beta * (1 + 2 mu) >= 1 for the expansive one).
    #[error("division regime violated: {0}")]
    DivisionRegime(String),

    /// Distance triple violates the envelope bounds beyond tolerance, so no
    /// minimal feasible rho exists.
    #[error(
        "inconsistent distances: d(x,y)={d_xy}, d(Tx,Ty)={d_t}, d(x-y,Tx-Ty)={d_diff} \
         violate the envelope by {violation:.3e}"
    )]
    InconsistentDistances {
        d_xy: f64,
        d_t: f64,
        d_diff: f64,
        violation: f64,
    },

    /// A bound check was requested for the branch whose precondition the
    /// inputs do not satisfy.
    #[error("branch mismatch: {0}")]
    BranchMismatch(String),

    /// A parameter point or schedule violates its invariants.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// An orbit left every region of a piecewise map with no fallback piece.
    #[error("map undefined at step {step}: point matches no piece region")]
    UndefinedMap { step: usize },

    /// A claimed cyclic mapping sent a point of one set outside the other.
    #[error(
        "cyclicity violated at index {index}: image lies {distance:.3e} outside the target set"
    )]
    CyclicityViolation { index: usize, distance: f64 },

    /// A request with arguments outside the documented domain.
    #[error("rejected input: {0}")]
    RejectedInput(String),

    /// A scenario file failed validation, with the violated invariant named.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// A scenario file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
