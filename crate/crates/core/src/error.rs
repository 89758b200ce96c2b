use thiserror::Error;

use crate::fif::ValidationReport;
use crate::shape::ShapeClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("{what}: expected length {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("knots must be strictly increasing (x[{index}] >= x[{}])", index + 1)]
    NonIncreasingKnots { index: usize },

    #[error("{what}[{index}] is not finite")]
    NonFinite { what: &'static str, index: usize },

    #[error("invalid IFS parameters: {0}")]
    InvalidParameters(ValidationReport),

    #[error("x = {x} lies outside [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    #[error("tolerance {tolerance:e} not reached within depth {depth} (certified bound {achieved:e}, value {value})")]
    ToleranceNotMet {
        value: f64,
        achieved: f64,
        tolerance: f64,
        depth: usize,
    },

    #[error("attractor sample needs {needed} points, budget is {budget}")]
    PointBudgetExceeded { needed: usize, budget: usize },

    #[error("interval {}: alpha = {alpha} is not below a^2 = {limit}, one-sided second derivatives are undefined", interval + 1)]
    SecondDerivativeUndefined {
        interval: usize,
        alpha: f64,
        limit: f64,
    },

    #[error("{shape}: necessary condition violated: {}", violations.join("; "))]
    NecessaryCondition {
        shape: ShapeClass,
        violations: Vec<String>,
    },

    #[error("{shape}: interval {} is infeasible: {reason}", interval + 1)]
    Infeasible {
        shape: ShapeClass,
        interval: usize,
        reason: String,
    },

    #[error("{shape}: parameters violate shape constraints: {}", violations.join("; "))]
    ShapeConstraints {
        shape: ShapeClass,
        violations: Vec<String>,
    },

    #[error("segment joint at x = {x}: {what} differs across segments")]
    JointMismatch { x: f64, what: &'static str },

    #[error("{0}")]
    InvalidArgument(String),
}
