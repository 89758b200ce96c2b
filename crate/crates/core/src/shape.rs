//! Admissible IFS parameter regions for shape-preserving fits, automatic
//! parameter selection, and numerical shape verification on attractor
//! samples.
//!
//! All formulas are written for increasing (monotone) and convex data.
//! Decreasing and concave problems are solved on the negated data
//! `(y, d) -> (-y, -d)`; since the interpolant is linear in `(y, d)` for
//! fixed `(α, r)`, the parameters carry over unchanged.
//!
//! Scaling-factor bounds are exclusive: a selected `α_i` must lie strictly
//! below its reported maximum, except when the maximum is forced to zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::HermiteData;
use crate::error::{Error, Result};
use crate::eval::{sample_attractor_with, SampleOptions};
use crate::fif::{validate_parameters, FifParameters, RationalCubicFif, DEFAULT_KAPPA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeClass {
    MonotoneIncreasing,
    MonotoneDecreasing,
    Convex,
    Concave,
    Positive,
    /// Convex and increasing; fitted with the convex scheme, which implies
    /// monotonicity under the increasing-slope condition with `d_1 >= 0`.
    ConvexMonotoneIncreasing,
    Unconstrained,
}

impl ShapeClass {
    pub const ALL: [ShapeClass; 7] = [
        ShapeClass::MonotoneIncreasing,
        ShapeClass::MonotoneDecreasing,
        ShapeClass::Convex,
        ShapeClass::Concave,
        ShapeClass::Positive,
        ShapeClass::ConvexMonotoneIncreasing,
        ShapeClass::Unconstrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShapeClass::MonotoneIncreasing => "monotone-increasing",
            ShapeClass::MonotoneDecreasing => "monotone-decreasing",
            ShapeClass::Convex => "convex",
            ShapeClass::Concave => "concave",
            ShapeClass::Positive => "positive",
            ShapeClass::ConvexMonotoneIncreasing => "convex-monotone-increasing",
            ShapeClass::Unconstrained => "unconstrained",
        }
    }

    /// The increasing/convex problem this class is reduced to, and whether
    /// the data must be negated first.
    fn canonical(self) -> (ShapeClass, bool) {
        match self {
            ShapeClass::MonotoneDecreasing => (ShapeClass::MonotoneIncreasing, true),
            ShapeClass::Concave => (ShapeClass::Convex, true),
            other => (other, false),
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let shape = match key.as_str() {
            "monotone" | "increasing" | "monotone-increasing" => ShapeClass::MonotoneIncreasing,
            "decreasing" | "monotone-decreasing" => ShapeClass::MonotoneDecreasing,
            "convex" => ShapeClass::Convex,
            "concave" => ShapeClass::Concave,
            "positive" => ShapeClass::Positive,
            "convex-monotone" | "convex-monotone-increasing" | "convex-increasing" => {
                ShapeClass::ConvexMonotoneIncreasing
            }
            "none" | "unconstrained" => ShapeClass::Unconstrained,
            _ => {
                return Err(Error::InvalidArgument(format!("unknown shape class '{s}'")));
            }
        };
        Ok(shape)
    }
}

/// Source of one term in a scaling-factor bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `κ a_i` (monotone, positive, unconstrained) or `κ a_i²` (convex).
    Contraction,
    /// `d_i h_i / (d_1 (x_N - x_1))`.
    LeftDerivative,
    /// `d_{i+1} h_i / (d_N (x_N - x_1))`.
    RightDerivative,
    /// `Δ_i h_i / (y_N - y_1)`.
    Chord,
    /// `h_i (d_{i+1} - Δ_i) / (d_N (x_N - x_1) - (y_N - y_1))`.
    RightSlopeGap,
    /// `h_i (Δ_i - d_i) / ((y_N - y_1) - d_1 (x_N - x_1))`.
    LeftSlopeGap,
    /// `y_i / y_1`.
    LeftValue,
    /// `y_{i+1} / y_N`.
    RightValue,
    /// Flat or straight interval: the scaling factor must vanish.
    Degenerate,
}

impl Criterion {
    pub fn label(self) -> &'static str {
        match self {
            Criterion::Contraction => "contraction",
            Criterion::LeftDerivative => "left-derivative",
            Criterion::RightDerivative => "right-derivative",
            Criterion::Chord => "chord",
            Criterion::RightSlopeGap => "right-slope-gap",
            Criterion::LeftSlopeGap => "left-slope-gap",
            Criterion::LeftValue => "left-value",
            Criterion::RightValue => "right-value",
            Criterion::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundTerm {
    pub criterion: Criterion,
    /// `None` when the term's denominator vanishes and it imposes nothing.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalBound {
    pub interval: usize,
    pub terms: Vec<BoundTerm>,
    /// Minimum over all terms, the contraction term included.
    pub alpha_max: f64,
    /// Minimum over the data-dependent terms only (`None` if all dropped).
    pub data_only_max: Option<f64>,
    /// The interval is flat/straight and `α_i` must be zero.
    pub forced_zero: bool,
    /// Lower bound on `r_i` when `α_i = 0`.
    pub r_lower: f64,
    /// Whether `r_i` must exceed `r_lower` strictly.
    pub r_strict: bool,
}

impl IntervalBound {
    /// True when the contraction term is the binding one and differs from
    /// the data-only minimum.
    pub fn contraction_binds(&self) -> bool {
        matches!(self.data_only_max, Some(d) if d > self.alpha_max)
    }
}

/// Per-interval admissible ranges for `α_i` and `r_i` under a shape class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub shape: ShapeClass,
    pub kappa: f64,
    pub intervals: Vec<IntervalBound>,
    pub diagnostics: Vec<String>,
}

impl BoundsReport {
    pub fn alpha_max(&self) -> Vec<f64> {
        self.intervals.iter().map(|b| b.alpha_max).collect()
    }
}

/// Lower bound on a shape parameter for a given scaling factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RBound {
    pub lower: f64,
    pub strict: bool,
    /// Default choice: the degree-reducing value for monotone and convex
    /// fits, otherwise `max(3, lower + 1)`.
    pub optimal: f64,
}

impl RBound {
    pub fn admits(&self, r: f64) -> bool {
        if self.strict {
            r > self.lower
        } else {
            r >= self.lower
        }
    }

    fn free() -> Self {
        Self {
            lower: -1.0,
            strict: true,
            optimal: 3.0,
        }
    }
}

fn necessary_error(shape: ShapeClass, violations: Vec<String>) -> Result<()> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::NecessaryCondition { shape, violations })
    }
}

fn term(criterion: Criterion, num: f64, den: f64) -> BoundTerm {
    BoundTerm {
        criterion,
        value: (den != 0.0).then(|| num / den),
    }
}

fn finish(
    interval: usize,
    terms: Vec<BoundTerm>,
    forced_zero: bool,
    r_lower: f64,
    r_strict: bool,
) -> IntervalBound {
    let data_only_max = terms
        .iter()
        .filter(|t| t.criterion != Criterion::Contraction)
        .filter_map(|t| t.value)
        .reduce(f64::min);
    let all = terms.iter().filter_map(|t| t.value).fold(f64::INFINITY, f64::min);
    let alpha_max = if forced_zero { 0.0 } else { all.max(0.0) };
    IntervalBound {
        interval,
        terms,
        alpha_max,
        data_only_max,
        forced_zero,
        r_lower,
        r_strict,
    }
}

// ---------------------------------------------------------------- monotone

fn monotone_necessary(data: &HermiteData, shape: ShapeClass) -> Result<()> {
    let mut v = Vec::new();
    for (i, &delta) in data.delta().iter().enumerate() {
        if delta < 0.0 {
            v.push(format!("data decrease on interval {} (slope {delta})", i + 1));
        } else if delta == 0.0 && (data.d()[i] != 0.0 || data.d()[i + 1] != 0.0) {
            v.push(format!(
                "flat interval {} needs d_{} = d_{} = 0",
                i + 1,
                i + 1,
                i + 2
            ));
        }
    }
    for (i, &d) in data.d().iter().enumerate() {
        if d < 0.0 {
            v.push(format!("d_{} = {d} < 0", i + 1));
        }
    }
    necessary_error(shape, v)
}

fn monotone_bounds(data: &HermiteData, kappa: f64, shape: ShapeClass) -> Result<BoundsReport> {
    monotone_necessary(data, shape)?;
    let span = data.span();
    let rise = data.rise();
    let (d1, dn) = (data.d_first(), data.d_last());
    let intervals = (0..data.n_intervals())
        .map(|i| {
            let h = data.h()[i];
            let delta = data.delta()[i];
            let contraction = BoundTerm {
                criterion: Criterion::Contraction,
                value: Some(kappa * data.a(i)),
            };
            if delta == 0.0 {
                let flat = BoundTerm {
                    criterion: Criterion::Degenerate,
                    value: Some(0.0),
                };
                return finish(i, vec![contraction, flat], true, -1.0, true);
            }
            let (di, dj) = (data.d()[i], data.d()[i + 1]);
            let terms = vec![
                contraction,
                term(Criterion::LeftDerivative, di * h, d1 * span),
                term(Criterion::RightDerivative, dj * h, dn * span),
                term(Criterion::Chord, delta * h, rise),
            ];
            finish(i, terms, false, (di + dj) / delta, false)
        })
        .collect();
    Ok(BoundsReport {
        shape,
        kappa,
        intervals,
        diagnostics: Vec::new(),
    })
}

/// Scaling-factor bounds that keep an increasing fit monotone.
pub fn monotone_alpha_bounds(data: &HermiteData) -> Result<BoundsReport> {
    alpha_bounds(data, ShapeClass::MonotoneIncreasing)
}

fn monotone_r(data: &HermiteData, alpha: &[f64], shape: ShapeClass) -> Result<Vec<RBound>> {
    let span = data.span();
    let rise = data.rise();
    let (d1, dn) = (data.d_first(), data.d_last());
    (0..data.n_intervals())
        .map(|i| {
            let h = data.h()[i];
            let delta = data.delta()[i];
            if delta == 0.0 {
                if alpha[i] != 0.0 {
                    return Err(Error::Infeasible {
                        shape,
                        interval: i,
                        reason: "flat interval requires alpha = 0".into(),
                    });
                }
                return Ok(RBound::free());
            }
            let den = h * delta - alpha[i] * rise;
            if den <= 0.0 {
                return Err(Error::Infeasible {
                    shape,
                    interval: i,
                    reason: format!(
                        "alpha = {} reaches the chord bound (h*delta - alpha*(y_N - y_1) = {den})",
                        alpha[i]
                    ),
                });
            }
            let num = h * (data.d()[i] + data.d()[i + 1]) - alpha[i] * span * (d1 + dn);
            let lower = num / den;
            Ok(RBound {
                lower,
                strict: false,
                optimal: 1.0 + lower,
            })
        })
        .collect()
}

/// Shape-parameter lower bounds for an increasing fit with scaling factors
/// `alpha`; the optimal choice `1 + bound` reduces each piece to a rational
/// quadratic.
pub fn monotone_r_bound(data: &HermiteData, alpha: &[f64]) -> Result<Vec<RBound>> {
    r_bounds(data, ShapeClass::MonotoneIncreasing, alpha)
}

// ------------------------------------------------------------------ convex

fn convex_necessary(data: &HermiteData, shape: ShapeClass) -> Result<()> {
    let mut v = Vec::new();
    let d = data.d();
    for (i, &delta) in data.delta().iter().enumerate() {
        if d[i] > delta {
            v.push(format!("d_{} = {} exceeds chord slope {} of interval {}", i + 1, d[i], delta, i + 1));
        }
        if delta > d[i + 1] {
            v.push(format!(
                "chord slope {} of interval {} exceeds d_{} = {}",
                delta,
                i + 1,
                i + 2,
                d[i + 1]
            ));
        }
    }
    if shape == ShapeClass::ConvexMonotoneIncreasing && data.d_first() < 0.0 {
        v.push(format!("d_1 = {} < 0", data.d_first()));
    }
    necessary_error(shape, v)
}

fn convex_bounds(data: &HermiteData, kappa: f64, shape: ShapeClass) -> Result<BoundsReport> {
    convex_necessary(data, shape)?;
    let span = data.span();
    let rise = data.rise();
    let right_den = data.d_last() * span - rise;
    let left_den = rise - data.d_first() * span;
    let mut diagnostics = Vec::new();
    let intervals = (0..data.n_intervals())
        .map(|i| {
            let h = data.h()[i];
            let a = data.a(i);
            let delta = data.delta()[i];
            let gap_right = data.d()[i + 1] - delta;
            let gap_left = delta - data.d()[i];
            let mut terms = vec![
                BoundTerm {
                    criterion: Criterion::Contraction,
                    value: Some(kappa * a * a),
                },
                term(Criterion::RightSlopeGap, h * gap_right, right_den),
                term(Criterion::LeftSlopeGap, h * gap_left, left_den),
            ];
            if gap_right == 0.0 && gap_left == 0.0 {
                terms.push(BoundTerm {
                    criterion: Criterion::Degenerate,
                    value: Some(0.0),
                });
                return finish(i, terms, true, -1.0, true);
            }
            let (big, small) = (gap_right.max(gap_left), gap_right.min(gap_left));
            let r_lower = if small > 0.0 {
                1.0 + big / small
            } else {
                diagnostics.push(format!(
                    "interval {}: endpoint slope equals the chord slope on one side only; no convex fit exists",
                    i + 1
                ));
                f64::INFINITY
            };
            finish(i, terms, false, r_lower, false)
        })
        .collect();
    Ok(BoundsReport {
        shape,
        kappa,
        intervals,
        diagnostics,
    })
}

/// Scaling-factor bounds that keep a fit convex (requires
/// `d_1 <= Δ_1 <= d_2 <= ... <= Δ_{N-1} <= d_N`).
pub fn convex_alpha_bounds(data: &HermiteData) -> Result<BoundsReport> {
    alpha_bounds(data, ShapeClass::Convex)
}

/// The two slope gaps `(d_{i+1} - Δ_i, Δ_i - d_i)` corrected for `α_i`.
pub fn convex_gaps(data: &HermiteData, i: usize, alpha: f64) -> (f64, f64) {
    let span = data.span();
    let rise = data.rise();
    let h = data.h()[i];
    let delta = data.delta()[i];
    let w = alpha / h;
    let right = data.d()[i + 1] - delta - w * (data.d_last() * span - rise);
    let left = delta - data.d()[i] - w * (rise - data.d_first() * span);
    (right, left)
}

fn convex_r(data: &HermiteData, alpha: &[f64], shape: ShapeClass) -> Result<Vec<RBound>> {
    (0..data.n_intervals())
        .map(|i| {
            let (g, h) = convex_gaps(data, i, alpha[i]);
            if g == 0.0 && h == 0.0 && alpha[i] == 0.0 {
                return Ok(RBound::free());
            }
            let (big, small) = (g.max(h), g.min(h));
            if small <= 0.0 {
                return Err(Error::Infeasible {
                    shape,
                    interval: i,
                    reason: format!("smallest corrected slope gap m = {small} is not positive"),
                });
            }
            Ok(RBound {
                lower: 1.0 + big / small,
                strict: false,
                optimal: 1.0 + big / small + small / big,
            })
        })
        .collect()
}

/// Shape-parameter lower bounds `1 + M_i/m_i` for a convex fit; the optimal
/// choice `1 + M_i/m_i + m_i/M_i` reduces each piece to quadratic over
/// linear form.
pub fn convex_r_bound(data: &HermiteData, alpha: &[f64]) -> Result<Vec<RBound>> {
    r_bounds(data, ShapeClass::Convex, alpha)
}

// ---------------------------------------------------------------- positive

fn positive_necessary(data: &HermiteData) -> Result<()> {
    let v = data
        .y()
        .iter()
        .enumerate()
        .filter(|(_, &y)| y <= 0.0)
        .map(|(i, y)| format!("y_{} = {y} is not positive", i + 1))
        .collect();
    necessary_error(ShapeClass::Positive, v)
}

fn positive_bounds(data: &HermiteData, kappa: f64) -> Result<BoundsReport> {
    positive_necessary(data)?;
    let r0 = positive_r(data, &vec![0.0; data.n_intervals()])?;
    let intervals = (0..data.n_intervals())
        .map(|i| {
            let terms = vec![
                BoundTerm {
                    criterion: Criterion::Contraction,
                    value: Some(kappa * data.a(i)),
                },
                term(Criterion::LeftValue, data.y()[i], data.y_first()),
                term(Criterion::RightValue, data.y()[i + 1], data.y_last()),
            ];
            finish(i, terms, false, r0[i].lower, true)
        })
        .collect();
    Ok(BoundsReport {
        shape: ShapeClass::Positive,
        kappa,
        intervals,
        diagnostics: Vec::new(),
    })
}

fn positive_r(data: &HermiteData, alpha: &[f64]) -> Result<Vec<RBound>> {
    let span = data.span();
    let (y1, yn) = (data.y_first(), data.y_last());
    let (d1, dn) = (data.d_first(), data.d_last());
    (0..data.n_intervals())
        .map(|i| {
            let h = data.h()[i];
            let a = alpha[i];
            let left_den = data.y()[i] - a * y1;
            let right_den = data.y()[i + 1] - a * yn;
            if left_den <= 0.0 || right_den <= 0.0 {
                return Err(Error::Infeasible {
                    shape: ShapeClass::Positive,
                    interval: i,
                    reason: format!("alpha = {a} reaches a value bound"),
                });
            }
            let left = (-h * data.d()[i] + a * d1 * span) / left_den;
            let right = (h * data.d()[i + 1] - a * dn * span) / right_den;
            let lower = left.max(right).max(-1.0);
            Ok(RBound {
                lower,
                strict: true,
                optimal: (lower + 1.0).max(3.0),
            })
        })
        .collect()
}

/// Bounds that keep a fit of positive data positive.
pub fn positivity_bounds(data: &HermiteData) -> Result<BoundsReport> {
    alpha_bounds(data, ShapeClass::Positive)
}

/// Shape-parameter lower bounds for a positive fit with scaling factors
/// `alpha`.
pub fn positivity_r_bound(data: &HermiteData, alpha: &[f64]) -> Result<Vec<RBound>> {
    r_bounds(data, ShapeClass::Positive, alpha)
}

// ---------------------------------------------------------------- dispatch

/// Scaling-factor bounds for any shape class, with the default κ.
pub fn alpha_bounds(data: &HermiteData, shape: ShapeClass) -> Result<BoundsReport> {
    alpha_bounds_with_kappa(data, shape, DEFAULT_KAPPA)
}

pub fn alpha_bounds_with_kappa(
    data: &HermiteData,
    shape: ShapeClass,
    kappa: f64,
) -> Result<BoundsReport> {
    let (canonical, negate) = shape.canonical();
    let owned;
    let data = if negate {
        owned = data.negated();
        &owned
    } else {
        data
    };
    let mut report = match canonical {
        ShapeClass::MonotoneIncreasing => monotone_bounds(data, kappa, shape)?,
        ShapeClass::Convex | ShapeClass::ConvexMonotoneIncreasing => {
            convex_bounds(data, kappa, shape)?
        }
        ShapeClass::Positive => positive_bounds(data, kappa)?,
        ShapeClass::Unconstrained => BoundsReport {
            shape,
            kappa,
            intervals: (0..data.n_intervals())
                .map(|i| {
                    let terms = vec![BoundTerm {
                        criterion: Criterion::Contraction,
                        value: Some(kappa * data.a(i)),
                    }];
                    finish(i, terms, false, -1.0, true)
                })
                .collect(),
            diagnostics: Vec::new(),
        },
        ShapeClass::MonotoneDecreasing | ShapeClass::Concave => unreachable!(),
    };
    report.shape = shape;
    for b in &report.intervals {
        if b.contraction_binds() {
            report.diagnostics.push(format!(
                "interval {}: contraction term {:.4} is below the data-only minimum {:.4}",
                b.interval + 1,
                b.alpha_max,
                b.data_only_max.unwrap_or(f64::INFINITY)
            ));
        }
    }
    Ok(report)
}

/// Shape-parameter bounds for any shape class given scaling factors.
pub fn r_bounds(data: &HermiteData, shape: ShapeClass, alpha: &[f64]) -> Result<Vec<RBound>> {
    if alpha.len() != data.n_intervals() {
        return Err(Error::LengthMismatch {
            what: "alpha",
            expected: data.n_intervals(),
            got: alpha.len(),
        });
    }
    let (canonical, negate) = shape.canonical();
    let owned;
    let data = if negate {
        owned = data.negated();
        &owned
    } else {
        data
    };
    match canonical {
        ShapeClass::MonotoneIncreasing => monotone_r(data, alpha, shape),
        ShapeClass::Convex | ShapeClass::ConvexMonotoneIncreasing => convex_r(data, alpha, shape),
        ShapeClass::Positive => positive_r(data, alpha),
        ShapeClass::Unconstrained => Ok(vec![RBound::free(); data.n_intervals()]),
        ShapeClass::MonotoneDecreasing | ShapeClass::Concave => unreachable!(),
    }
}

/// How shape parameters are chosen by [`select_parameters`].
#[derive(Debug, Clone, PartialEq, Default)]
pub enum RPolicy {
    #[default]
    Optimal,
    /// User-supplied values, checked against the lower bounds.
    Explicit(Vec<f64>),
}

/// Picks `α_i = t * alpha_max_i` and `r_i` per `policy` for the shape class.
/// `t ∈ [0, 1)` dials fractality; `t = 0` gives the classical spline.
pub fn select_parameters(
    data: &HermiteData,
    shape: ShapeClass,
    t: f64,
    policy: &RPolicy,
) -> Result<FifParameters> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "fractality dial t must lie in [0, 1), got {t}"
        )));
    }
    let report = alpha_bounds(data, shape)?;
    if let Some(b) = report.intervals.iter().find(|b| b.r_lower.is_infinite()) {
        return Err(Error::Infeasible {
            shape,
            interval: b.interval,
            reason: "no admissible shape parameter".into(),
        });
    }
    let alpha: Vec<f64> = report.intervals.iter().map(|b| t * b.alpha_max).collect();
    let bounds = r_bounds(data, shape, &alpha)?;
    let r = match policy {
        RPolicy::Optimal => bounds.iter().map(|b| b.optimal).collect(),
        RPolicy::Explicit(r) => {
            if r.len() != alpha.len() {
                return Err(Error::LengthMismatch {
                    what: "r",
                    expected: alpha.len(),
                    got: r.len(),
                });
            }
            let violations: Vec<String> = r
                .iter()
                .zip(&bounds)
                .enumerate()
                .filter(|(_, (&r, b))| !b.admits(r))
                .map(|(i, (r, b))| r_violation(i, *r, b))
                .collect();
            if !violations.is_empty() {
                return Err(Error::ShapeConstraints { shape, violations });
            }
            r.clone()
        }
    };
    let params = FifParameters::new(alpha, r);
    let report = validate_parameters(data, &params);
    if !report.is_empty() {
        return Err(Error::InvalidParameters(report));
    }
    Ok(params)
}

fn r_violation(i: usize, r: f64, b: &RBound) -> String {
    format!(
        "r_{} = {} is below the lower bound {}{}",
        i + 1,
        r,
        if b.strict { "(exclusive) " } else { "" },
        b.lower
    )
}

/// Checks explicit parameters against the sufficient conditions of a shape
/// class. `α_i` must be nonnegative and strictly below its bound (or zero
/// where forced), `r_i` at or above its lower bound.
pub fn check_shape_parameters(
    data: &HermiteData,
    params: &FifParameters,
    shape: ShapeClass,
) -> Result<()> {
    let report = validate_parameters(data, params);
    if !report.is_empty() {
        return Err(Error::InvalidParameters(report));
    }
    let bounds = alpha_bounds_with_kappa(data, shape, params.kappa)?;
    let mut violations = Vec::new();
    for (b, &alpha) in bounds.intervals.iter().zip(&params.alpha) {
        let i = b.interval;
        if alpha < 0.0 {
            violations.push(format!("alpha_{} = {alpha} is negative", i + 1));
        } else if b.forced_zero || b.alpha_max == 0.0 {
            if alpha != 0.0 {
                violations.push(format!("alpha_{} = {alpha} must be 0", i + 1));
            }
        } else if alpha >= b.alpha_max {
            violations.push(format!(
                "alpha_{} = {alpha} is not below the bound {}",
                i + 1,
                b.alpha_max
            ));
        }
    }
    if violations.is_empty() {
        match r_bounds(data, shape, &params.alpha) {
            Ok(rb) => {
                for (i, (b, &r)) in rb.iter().zip(&params.r).enumerate() {
                    if !b.admits(r) {
                        violations.push(r_violation(i, r, b));
                    }
                }
            }
            Err(e) => violations.push(e.to_string()),
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::ShapeConstraints { shape, violations })
    }
}

/// Witness of a failed shape check: the sample abscissae bracketing the
/// defect and its size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub x_left: f64,
    pub x_right: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeVerdict {
    pub shape: ShapeClass,
    pub passed: bool,
    pub depth: usize,
    pub points: usize,
    pub tolerance: f64,
    pub witness: Option<Witness>,
}

/// Default verification tolerance, scaled by `max(1, |y|∞)`.
pub const VERIFY_TOLERANCE: f64 = 1e-10;

/// Samples the attractor to `depth` and checks the shape on the exact
/// points: sorted values monotone, consecutive chord slopes monotone
/// (tested in value form, as the middle point against the chord of its
/// neighbours), or values nonnegative.
pub fn verify_shape(fif: &RationalCubicFif, shape: ShapeClass, depth: usize) -> Result<ShapeVerdict> {
    let tol = VERIFY_TOLERANCE * fif.data().y_abs_max().max(1.0);
    verify_shape_with_tolerance(fif, shape, depth, tol)
}

pub fn verify_shape_with_tolerance(
    fif: &RationalCubicFif,
    shape: ShapeClass,
    depth: usize,
    tolerance: f64,
) -> Result<ShapeVerdict> {
    let opts = SampleOptions {
        with_slopes: false,
        ..SampleOptions::default()
    };
    let sample = sample_attractor_with(fif, depth, &opts)?;
    let (x, s) = (&sample.x, &sample.s);

    let monotone = |sign: f64| -> Option<Witness> {
        x.windows(2).zip(s.windows(2)).find_map(|(xw, sw)| {
            let drop = sign * (sw[0] - sw[1]);
            (drop > tolerance).then_some(Witness {
                x_left: xw[0],
                x_right: xw[1],
                defect: drop,
            })
        })
    };
    let convex = |sign: f64| -> Option<Witness> {
        (0..x.len().saturating_sub(2)).find_map(|k| {
            let (x0, x1, x2) = (x[k], x[k + 1], x[k + 2]);
            let chord = (s[k] * (x2 - x1) + s[k + 2] * (x1 - x0)) / (x2 - x0);
            let defect = sign * (s[k + 1] - chord);
            (defect > tolerance).then_some(Witness {
                x_left: x0,
                x_right: x2,
                defect,
            })
        })
    };
    let positive = || -> Option<Witness> {
        x.iter().zip(s).find_map(|(&xv, &v)| {
            (v < -tolerance).then_some(Witness {
                x_left: xv,
                x_right: xv,
                defect: -v,
            })
        })
    };

    let witness = match shape {
        ShapeClass::MonotoneIncreasing => monotone(1.0),
        ShapeClass::MonotoneDecreasing => monotone(-1.0),
        ShapeClass::Convex => convex(1.0),
        ShapeClass::Concave => convex(-1.0),
        ShapeClass::Positive => positive(),
        ShapeClass::ConvexMonotoneIncreasing => convex(1.0).or_else(|| monotone(1.0)),
        ShapeClass::Unconstrained => None,
    };
    Ok(ShapeVerdict {
        shape,
        passed: witness.is_none(),
        depth,
        points: sample.len(),
        tolerance,
        witness,
    })
}
