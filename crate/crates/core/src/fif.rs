//! The C¹ rational cubic spline fractal interpolation function.
//!
//! On each interval the interpolant satisfies the self-referential equation
//!
//! ```text
//! S(L_i(x)) = α_i S(x) + P_i(θ) / Q_i(θ),   θ = (x - x_1) / (x_N - x_1)
//! Q_i(θ)    = 1 + (r_i - 3) θ (1 - θ)
//! P_i(θ)    = A_i (1-θ)³ + B_i θ(1-θ)² + C_i θ²(1-θ) + D_i θ³
//! ```
//!
//! where `L_i` maps `[x_1, x_N]` affinely onto `[x_i, x_{i+1}]`. The
//! coefficients are fixed by the Hermite conditions `S(x_i) = y_i`,
//! `S'(x_i) = d_i`. Differentiating gives analogous equations for `S'`
//! (quartic numerator over `Q_i²`) and for one-sided `S''` (cubic numerator
//! over `Q_i³`); all three coefficient families are precomputed here.

use std::fmt;

use serde::Serialize;

use crate::data::HermiteData;
use crate::error::{Error, Result};

/// Default contraction margin κ.
pub const DEFAULT_KAPPA: f64 = 0.999;

/// Scaling factors `α_i`, shape parameters `r_i` and the contraction margin κ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FifParameters {
    pub alpha: Vec<f64>,
    pub r: Vec<f64>,
    pub kappa: f64,
}

impl FifParameters {
    pub fn new(alpha: Vec<f64>, r: Vec<f64>) -> Self {
        Self {
            alpha,
            r,
            kappa: DEFAULT_KAPPA,
        }
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    /// All scaling factors zero: the classical rational cubic spline.
    pub fn classical(r: Vec<f64>) -> Self {
        Self::new(vec![0.0; r.len()], r)
    }

    /// `α ≡ 0, r ≡ 3`: the piecewise cubic Hermite interpolant.
    pub fn cubic_hermite(n_intervals: usize) -> Self {
        Self::classical(vec![3.0; n_intervals])
    }

    /// `max |α_i|`.
    pub fn alpha_abs_max(&self) -> f64 {
        self.alpha.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// `max |r_i|`.
    pub fn r_abs_max(&self) -> f64 {
        self.r.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `|α_i| > κ a_i`.
    Contraction { interval: usize, alpha: f64, bound: f64 },
    /// `r_i <= -1`.
    ShapeParameter { interval: usize, r: f64 },
    NonFinite { interval: usize },
    /// κ outside `[0, 1)`.
    Kappa { kappa: f64 },
    LengthMismatch { what: &'static str, expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Contraction {
                interval,
                alpha,
                bound,
            } => write!(
                f,
                "interval {}: |alpha_{}| = {} exceeds kappa*a_{} = {}",
                interval + 1,
                interval + 1,
                alpha.abs(),
                interval + 1,
                bound
            ),
            Violation::ShapeParameter { interval, r } => {
                write!(f, "r_{} <= -1 (r_{} = {})", interval + 1, interval + 1, r)
            }
            Violation::NonFinite { interval } => {
                write!(f, "interval {}: non-finite parameter", interval + 1)
            }
            Violation::Kappa { kappa } => write!(f, "kappa = {kappa} is outside [0, 1)"),
            Violation::LengthMismatch {
                what,
                expected,
                got,
            } => write!(f, "{what} has {got} entries, expected {expected}"),
        }
    }
}

/// Every constraint of the C¹ construction that a parameter set violates.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn intervals(&self) -> Vec<usize> {
        self.violations
            .iter()
            .filter_map(|v| match *v {
                Violation::Contraction { interval, .. }
                | Violation::ShapeParameter { interval, .. }
                | Violation::NonFinite { interval } => Some(interval),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("admissible");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks `|α_i| <= κ a_i`, `r_i > -1`, `κ ∈ [0, 1)` and vector lengths.
pub fn validate_parameters(data: &HermiteData, params: &FifParameters) -> ValidationReport {
    let mut violations = Vec::new();
    let n = data.n_intervals();
    if !(0.0..1.0).contains(&params.kappa) {
        violations.push(Violation::Kappa {
            kappa: params.kappa,
        });
    }
    for (what, v) in [("alpha", &params.alpha), ("r", &params.r)] {
        if v.len() != n {
            violations.push(Violation::LengthMismatch {
                what,
                expected: n,
                got: v.len(),
            });
        }
    }
    for i in 0..n.min(params.alpha.len()).min(params.r.len()) {
        let (alpha, r) = (params.alpha[i], params.r[i]);
        if !alpha.is_finite() || !r.is_finite() {
            violations.push(Violation::NonFinite { interval: i });
            continue;
        }
        let bound = params.kappa * data.a(i);
        if alpha.abs() > bound {
            violations.push(Violation::Contraction {
                interval: i,
                alpha,
                bound,
            });
        }
        if r <= -1.0 {
            violations.push(Violation::ShapeParameter { interval: i, r });
        }
    }
    ValidationReport { violations }
}

/// Per-interval coefficients of the three functional equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalCoefficients {
    /// `L_i(x) = scale * x + shift`.
    pub scale: f64,
    pub shift: f64,
    pub alpha: f64,
    pub r: f64,
    /// `A_i, B_i, C_i, D_i` of the value numerator.
    pub value: [f64; 4],
    /// `T_i, S_i, U_i, V_i, W_i` of the slope numerator (weights of
    /// `θ⁴, θ³(1-θ), θ²(1-θ)², θ(1-θ)³, (1-θ)⁴`).
    pub slope: [f64; 5],
    /// `A*_i, B*_i, C*_i, D*_i` of the curvature numerator (weights of
    /// `θ³, θ²(1-θ), θ(1-θ)², (1-θ)³`).
    pub curvature: [f64; 4],
}

impl IntervalCoefficients {
    /// `Q_i(θ) = 1 + (r_i - 3) θ (1 - θ)`.
    #[inline]
    pub fn denominator(&self, t: f64) -> f64 {
        1.0 + (self.r - 3.0) * t * (1.0 - t)
    }

    /// `P_i(θ) / Q_i(θ)`.
    #[inline]
    pub fn value_term(&self, t: f64) -> f64 {
        let s = 1.0 - t;
        let [a, b, c, d] = self.value;
        (a * s * s * s + b * t * s * s + c * t * t * s + d * t * t * t) / self.denominator(t)
    }

    /// Inhomogeneous term of the slope equation, `R_i'(x) / a_i`.
    #[inline]
    pub fn slope_term(&self, t: f64) -> f64 {
        let s = 1.0 - t;
        let [tt, ss, uu, vv, ww] = self.slope;
        let num = tt * t.powi(4)
            + ss * t.powi(3) * s
            + uu * t * t * s * s
            + vv * t * s.powi(3)
            + ww * s.powi(4);
        let q = self.denominator(t);
        num / (q * q)
    }

    /// Inhomogeneous term of the one-sided curvature equation,
    /// `R_i''(x) / a_i²`, given the interval width `h_i`.
    #[inline]
    pub fn curvature_term(&self, t: f64, h: f64) -> f64 {
        let s = 1.0 - t;
        let [a, b, c, d] = self.curvature;
        let q = self.denominator(t);
        2.0 * (a * t.powi(3) + b * t * t * s + c * t * s * s + d * s.powi(3)) / (h * q * q * q)
    }

    /// Lower bound `c_i` of `Q_i` on `[0, 1]`.
    pub fn denominator_min(&self) -> f64 {
        if self.r >= 3.0 {
            1.0
        } else {
            (1.0 + self.r) / 4.0
        }
    }
}

/// A fitted rational cubic spline FIF.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalCubicFif {
    data: HermiteData,
    params: FifParameters,
    coeffs: Vec<IntervalCoefficients>,
    value_bound: f64,
    slope_bound: f64,
}

/// Constructs the FIF interpolating `data` with the given IFS parameters.
pub fn build_fif(data: HermiteData, params: FifParameters) -> Result<RationalCubicFif> {
    let n = data.n_intervals();
    for (what, v) in [("alpha", &params.alpha), ("r", &params.r)] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                what,
                expected: n,
                got: v.len(),
            });
        }
    }
    let report = validate_parameters(&data, &params);
    if !report.is_empty() {
        return Err(Error::InvalidParameters(report));
    }

    let (x1, xn) = (data.x_first(), data.x_last());
    let (y1, yn) = (data.y_first(), data.y_last());
    let (d1, dn) = (data.d_first(), data.d_last());
    let span = data.span();
    let rise = data.rise();

    let coeffs = (0..n)
        .map(|i| {
            let (alpha, r) = (params.alpha[i], params.r[i]);
            let (xi, xj) = (data.x()[i], data.x()[i + 1]);
            let (yi, yj) = (data.y()[i], data.y()[i + 1]);
            let (di, dj) = (data.d()[i], data.d()[i + 1]);
            let h = data.h()[i];
            let delta = data.delta()[i];
            let scale = (xj - xi) / span;
            let shift = (xn * xi - x1 * xj) / span;

            let value = [
                yi - alpha * y1,
                (r * yi + h * di) - alpha * (r * y1 + d1 * span),
                (r * yj - h * dj) - alpha * (r * yn - dn * span),
                yj - alpha * yn,
            ];

            let w = alpha / h;
            let slope = [
                dj - w * span * dn,
                2.0 * (r * delta - di) - 2.0 * w * (r * rise - d1 * span),
                (r * r + 3.0) * delta
                    - r * (di + dj)
                    - w * ((r * r + 3.0) * rise - r * span * (d1 + dn)),
                2.0 * (r * delta - dj) - 2.0 * w * (r * rise - dn * span),
                di - w * span * d1,
            ];

            let curvature = [
                r * (dj - delta) + di - dj - w * (r * (dn * span - rise) + span * (d1 - dn)),
                3.0 * (dj - delta) - 3.0 * w * (dn * span - rise),
                3.0 * (delta - di) - 3.0 * w * (rise - d1 * span),
                r * (delta - di) + di - dj - w * (r * (rise - d1 * span) + span * (d1 - dn)),
            ];

            IntervalCoefficients {
                scale,
                shift,
                alpha,
                r,
                value,
                slope,
                curvature,
            }
        })
        .collect::<Vec<_>>();

    let value_bound = value_range_bound(&data, &params, &coeffs);
    let slope_bound = slope_range_bound(&coeffs);
    Ok(RationalCubicFif {
        data,
        params,
        coeffs,
        value_bound,
        slope_bound,
    })
}

/// `c = min_i c_i` where `c_i = min Q_i` on `[0, 1]`.
fn denominator_floor(coeffs: &[IntervalCoefficients]) -> f64 {
    coeffs
        .iter()
        .map(IntervalCoefficients::denominator_min)
        .fold(f64::INFINITY, f64::min)
}

/// Bound on `sup |S|`: the classical sup bound plus the `α`-dependent part
/// of `R_i`, divided by `1 - |α|∞`.
fn value_range_bound(
    data: &HermiteData,
    params: &FifParameters,
    coeffs: &[IntervalCoefficients],
) -> f64 {
    let c = denominator_floor(coeffs);
    let y = data.y_abs_max();
    let r = params.r_abs_max();
    let classical = (y + 0.25 * (r * y + data.h_max() * data.d_abs_max())) / c;
    let ends_y = data.y_first().abs().max(data.y_last().abs());
    let ends_d = data.d_first().abs().max(data.d_last().abs());
    let z0 = (ends_y * (1.0 + 0.25 * r) + 0.25 * data.span() * ends_d) / c;
    let alpha = params.alpha_abs_max();
    (classical + alpha * z0) / (1.0 - alpha)
}

/// Bound on `sup |S'|` from the slope equation, whose per-level contraction
/// is `|α_i| / a_i`.
fn slope_range_bound(coeffs: &[IntervalCoefficients]) -> f64 {
    let mut term = 0.0f64;
    let mut contraction = 0.0f64;
    for c in coeffs {
        // Σ_k θ^k (1-θ)^(4-k) <= 1 on [0, 1].
        let num = c.slope.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let q = c.denominator_min();
        term = term.max(num / (q * q));
        contraction = contraction.max(c.alpha.abs() / c.scale);
    }
    term / (1.0 - contraction)
}

/// The classical rational cubic spline (all scaling factors zero).
pub fn classical_spline(data: HermiteData, r: Vec<f64>) -> Result<RationalCubicFif> {
    build_fif(data, FifParameters::classical(r))
}

impl RationalCubicFif {
    pub fn data(&self) -> &HermiteData {
        &self.data
    }

    pub fn params(&self) -> &FifParameters {
        &self.params
    }

    pub fn coefficients(&self) -> &[IntervalCoefficients] {
        &self.coeffs
    }

    pub fn n_intervals(&self) -> usize {
        self.coeffs.len()
    }

    /// Certified upper bound on `sup |S|` over the domain.
    pub fn value_bound(&self) -> f64 {
        self.value_bound
    }

    /// Certified upper bound on `sup |S'|` over the domain.
    pub fn slope_bound(&self) -> f64 {
        self.slope_bound
    }

    pub fn is_classical(&self) -> bool {
        self.params.alpha.iter().all(|&a| a == 0.0)
    }

    /// Global variable `θ = (x - x_1) / (x_N - x_1)`.
    #[inline]
    pub fn theta(&self, x: f64) -> f64 {
        (x - self.data.x_first()) / self.data.span()
    }

    /// `L_i(x)`, computed so that `L_i(x_1) = x_i` and `L_i(x_N) = x_{i+1}`
    /// hold exactly in floating point.
    #[inline]
    pub fn map_x(&self, i: usize, x: f64) -> f64 {
        let t = self.theta(x);
        let x = self.data.x();
        x[i] * (1.0 - t) + x[i + 1] * t
    }

    /// Local variable `φ = (x - x_i) / h_i`, which equals `θ(L_i⁻¹(x))`.
    #[inline]
    pub fn local_theta(&self, i: usize, x: f64) -> f64 {
        (x - self.data.x()[i]) / self.data.h()[i]
    }

    /// `L_i⁻¹(x)`.
    #[inline]
    pub fn unmap_x(&self, i: usize, x: f64) -> f64 {
        self.data.x_first() + self.local_theta(i, x) * self.data.span()
    }

    /// `R_i(x) = P_i(θ)/Q_i(θ)` at `θ = θ(x)`.
    #[inline]
    pub fn inhomogeneous(&self, i: usize, x: f64) -> f64 {
        self.coeffs[i].value_term(self.theta(x))
    }

    /// One application of the i-th IFS map to a graph point `(x, S(x))`.
    #[inline]
    pub fn apply_map(&self, i: usize, x: f64, v: f64) -> (f64, f64) {
        let c = &self.coeffs[i];
        (self.map_x(i, x), c.alpha * v + c.value_term(self.theta(x)))
    }

    /// One application of the i-th derivative map to `(x, S'(x))`.
    #[inline]
    pub fn apply_slope_map(&self, i: usize, x: f64, s: f64) -> f64 {
        let c = &self.coeffs[i];
        c.alpha / c.scale * s + c.slope_term(self.theta(x))
    }

    /// For a classical model (`α ≡ 0`), the closed local form
    /// `s_i(x) = P_i(φ) / Q_i(φ)` with `φ = (x - x_i)/h_i`. `None` otherwise.
    pub fn local_form(&self, x: f64) -> Option<f64> {
        if !self.is_classical() {
            return None;
        }
        let i = self.data.locate(x);
        Some(self.coeffs[i].value_term(self.local_theta(i, x)))
    }

    /// Residual of the functional equation at a graph point:
    /// `S(L_i(x)) - α_i S(x) - R_i(x)` given the value `s_mapped` at `L_i(x)`.
    pub fn functional_residual(&self, i: usize, x: f64, s_at_x: f64, s_mapped: f64) -> f64 {
        s_mapped - self.coeffs[i].alpha * s_at_x - self.inhomogeneous(i, x)
    }
}
