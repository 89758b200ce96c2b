//! A-priori error bounds and an empirical convergence-order harness.
//!
//! Bounds compare a fit against a generator `f` whose derivatives at the
//! knots are close to the `d_i`. Derivative norms enter as numbers; use
//! [`sampled_sup_norm`] and [`sampled_modulus`] when only evaluation
//! procedures are available.

use serde::Serialize;

use crate::data::HermiteData;
use crate::error::{Error, Result};
use crate::eval::{eval_at, EvalSettings};
use crate::fif::{build_fif, validate_parameters, FifParameters};

/// Per-interval denominator floors `c_i` and their minimum `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CValues {
    pub c_i: Vec<f64>,
    pub c: f64,
}

/// `c_i = (1 + r_i)/4` for `-1 < r_i < 3`, else `1`.
pub fn c_values(r: &[f64]) -> Result<CValues> {
    if let Some(i) = r.iter().position(|&v| !(v > -1.0)) {
        return Err(Error::InvalidArgument(format!(
            "r_{} = {} must exceed -1",
            i + 1,
            r[i]
        )));
    }
    let c_i: Vec<f64> = r
        .iter()
        .map(|&v| if v < 3.0 { (1.0 + v) / 4.0 } else { 1.0 })
        .collect();
    let c = c_i.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(CValues { c_i, c })
}

/// Sup norms of the generator's second to fourth derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DerivativeNorms {
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
}

/// Quantities echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInputs {
    pub h: f64,
    pub span: f64,
    pub alpha_abs_max: f64,
    pub r_abs_max: f64,
    pub r_dev_max: f64,
    pub y_abs_max: f64,
    pub d_abs_max: f64,
    pub norms: Option<DerivativeNorms>,
    pub derivative_mismatch: Option<f64>,
    pub modulus: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorBoundReport {
    pub c: f64,
    pub z0: f64,
    /// Bound on `sup |s|` for the classical spline with the same data.
    pub spline_sup_bound: f64,
    /// Bound on `|f - s|`, the classical-spline part.
    pub classical: f64,
    /// `|α|∞ (‖s‖∞ + Z_0) / (1 - |α|∞)`.
    pub perturbation: f64,
    pub total: f64,
    pub inputs: BoundInputs,
}

struct Common {
    c: f64,
    z0: f64,
    s_bound: f64,
    perturbation: f64,
    inputs: BoundInputs,
}

fn common(data: &HermiteData, params: &FifParameters) -> Result<Common> {
    let report = validate_parameters(data, params);
    if !report.is_empty() {
        return Err(Error::InvalidParameters(report));
    }
    let alpha = params.alpha_abs_max();
    if alpha >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "|alpha|_inf = {alpha} must be below 1"
        )));
    }
    let c = c_values(&params.r)?.c;
    let h = data.h_max();
    let r = params.r_abs_max();
    let y = data.y_abs_max();
    let d = data.d_abs_max();
    let span = data.span();
    let s_bound = (y + 0.25 * (r * y + h * d)) / c;
    let ends_y = data.y_first().abs().max(data.y_last().abs());
    let ends_d = data.d_first().abs().max(data.d_last().abs());
    let z0 = (ends_y * (1.0 + 0.25 * r) + 0.25 * span * ends_d) / c;
    let perturbation = alpha * (s_bound + z0) / (1.0 - alpha);
    let r_dev_max = params.r.iter().fold(0.0f64, |m, &v| m.max((v - 3.0).abs()));
    Ok(Common {
        c,
        z0,
        s_bound,
        perturbation,
        inputs: BoundInputs {
            h,
            span,
            alpha_abs_max: alpha,
            r_abs_max: r,
            r_dev_max,
            y_abs_max: y,
            d_abs_max: d,
            norms: None,
            derivative_mismatch: None,
            modulus: None,
        },
    })
}

fn check_nonneg(what: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} must be a nonnegative number, got {v}"
        )))
    }
}

/// Uniform bound on `|f - S|` for `f ∈ C⁴`, given `max_i |f'(x_i) - d_i|`.
pub fn error_bound_c4(
    data: &HermiteData,
    params: &FifParameters,
    norms: &DerivativeNorms,
    derivative_mismatch: f64,
) -> Result<ErrorBoundReport> {
    for (what, v) in [
        ("|f''|", norms.f2),
        ("|f'''|", norms.f3),
        ("|f''''|", norms.f4),
        ("derivative mismatch", derivative_mismatch),
    ] {
        check_nonneg(what, v)?;
    }
    let mut k = common(data, params)?;
    let h = k.inputs.h;
    let dev = k.inputs.r_dev_max;
    let c = k.c;
    let classical = h / (4.0 * c) * derivative_mismatch
        + (h.powi(4) * norms.f4 * (1.0 + 0.25 * dev)
            + 4.0 * dev * (h.powi(3) * norms.f3 + 3.0 * h * h * norms.f2))
            / (384.0 * c);
    k.inputs.norms = Some(*norms);
    k.inputs.derivative_mismatch = Some(derivative_mismatch);
    Ok(ErrorBoundReport {
        c,
        z0: k.z0,
        spline_sup_bound: k.s_bound,
        classical,
        perturbation: k.perturbation,
        total: classical + k.perturbation,
        inputs: k.inputs,
    })
}

/// Uniform bound on `|f - S|` for `f ∈ C¹` via the modulus of continuity
/// `ω(f; h)`.
pub fn error_bound_c1(
    data: &HermiteData,
    params: &FifParameters,
    modulus: f64,
) -> Result<ErrorBoundReport> {
    check_nonneg("modulus of continuity", modulus)?;
    let mut k = common(data, params)?;
    let (h, c) = (k.inputs.h, k.c);
    let classical =
        h * k.inputs.d_abs_max / (4.0 * c) + modulus * (k.inputs.r_abs_max + 4.0) / (4.0 * c);
    k.inputs.modulus = Some(modulus);
    Ok(ErrorBoundReport {
        c,
        z0: k.z0,
        spline_sup_bound: k.s_bound,
        classical,
        perturbation: k.perturbation,
        total: classical + k.perturbation,
        inputs: k.inputs,
    })
}

/// Grid size for numerically sampled norms.
pub const NORM_GRID: usize = 10_000;

/// `max |f|` over `n` uniform points of `[a, b]` (ends included).
pub fn sampled_sup_norm(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    grid(a, b, n).map(|x| f(x).abs()).fold(0.0, f64::max)
}

/// `ω(f; h)` estimated on `n` uniform points of `[a, b]`.
pub fn sampled_modulus(f: impl Fn(f64) -> f64, a: f64, b: f64, h: f64, n: usize) -> f64 {
    let xs: Vec<f64> = grid(a, b, n).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut best = 0.0f64;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[j] - xs[i] > h * (1.0 + 1e-12) {
                break;
            }
            best = best.max((vs[j] - vs[i]).abs());
        }
    }
    best
}

fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(move |k| if k == n - 1 { b } else { a + k as f64 * step })
}

/// Scaling factors per mesh: `α_i = a_i^k / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlphaRule {
    Zero,
    HalfSquare,
    HalfCube,
    HalfFourth,
}

impl AlphaRule {
    pub fn alpha(self, a: f64) -> f64 {
        match self {
            AlphaRule::Zero => 0.0,
            AlphaRule::HalfSquare => 0.5 * a.powi(2),
            AlphaRule::HalfCube => 0.5 * a.powi(3),
            AlphaRule::HalfFourth => 0.5 * a.powi(4),
        }
    }
}

/// Shape parameters per mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RRule {
    Fixed(f64),
    /// `r_i = 3 + h_i`.
    ThreePlusH,
    /// `r_i = 3 + h_i²`.
    ThreePlusH2,
}

impl RRule {
    pub fn r(self, h: f64) -> f64 {
        match self {
            RRule::Fixed(r) => r,
            RRule::ThreePlusH => 3.0 + h,
            RRule::ThreePlusH2 => 3.0 + h * h,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceConfig {
    pub a: f64,
    pub b: f64,
    /// Knot counts of the uniform meshes; consecutive meshes halve `h`.
    pub knots: Vec<usize>,
    pub alpha: AlphaRule,
    pub r: RRule,
    /// Number of uniform points where `|f - S|` is measured.
    pub grid: usize,
    /// Point-evaluation tolerance; must sit well below the errors measured.
    pub tolerance: f64,
    /// When present, each mesh also reports the C⁴ error bound.
    pub norms: Option<DerivativeNorms>,
}

impl ConvergenceConfig {
    pub fn new(a: f64, b: f64, knots: Vec<usize>, alpha: AlphaRule, r: RRule) -> Self {
        Self {
            a,
            b,
            knots,
            alpha,
            r,
            grid: 2048,
            tolerance: 1e-13,
            norms: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshResult {
    pub knots: usize,
    pub h: f64,
    pub max_error: f64,
    pub bound: Option<ErrorBoundReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<MeshResult>,
    /// Least-squares slope of `log error` against `log h`; `None` when exact.
    pub order: Option<f64>,
    /// Every mesh reproduced `f` to rounding level.
    pub exact: bool,
}

/// Measures `max |f - S|` on a sequence of halving uniform meshes with exact
/// derivatives `d_i = f'(x_i)` and fits the convergence order.
pub fn convergence_order(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    config: &ConvergenceConfig,
) -> Result<ConvergenceReport> {
    if config.knots.len() < 3 {
        return Err(Error::InvalidArgument(
            "convergence study needs at least 3 meshes".into(),
        ));
    }
    if !(config.b > config.a) {
        return Err(Error::InvalidArgument(format!(
            "empty interval [{}, {}]",
            config.a, config.b
        )));
    }
    for w in config.knots.windows(2) {
        if w[0] < 2 || w[1] - 1 != 2 * (w[0] - 1) {
            return Err(Error::InvalidArgument(format!(
                "meshes must halve h: {} knots then {} knots",
                w[0], w[1]
            )));
        }
    }

    let settings = EvalSettings::with_tolerance(config.tolerance);
    let grid_x: Vec<f64> = grid(config.a, config.b, config.grid).collect();
    let f_scale = grid_x.iter().fold(1.0f64, |m, &x| m.max(f(x).abs()));
    let mut rows = Vec::with_capacity(config.knots.len());
    for &n in &config.knots {
        let step = (config.b - config.a) / (n - 1) as f64;
        let x: Vec<f64> = (0..n)
            .map(|k| if k == n - 1 { config.b } else { config.a + k as f64 * step })
            .collect();
        let y = x.iter().map(|&v| f(v)).collect();
        let d = x.iter().map(|&v| df(v)).collect();
        let data = HermiteData::new(x, y, d)?;
        let alpha = (0..data.n_intervals())
            .map(|i| config.alpha.alpha(data.a(i)))
            .collect();
        let r = data.h().iter().map(|&h| config.r.r(h)).collect();
        let fif = build_fif(data, FifParameters::new(alpha, r))?;
        let mut max_error = 0.0f64;
        for &gx in &grid_x {
            let v = eval_at(&fif, gx, &settings)?.value;
            max_error = max_error.max((f(gx) - v).abs());
        }
        let bound = match &config.norms {
            Some(norms) => Some(error_bound_c4(fif.data(), fif.params(), norms, 0.0)?),
            None => None,
        };
        rows.push(MeshResult {
            knots: n,
            h: step,
            max_error,
            bound,
        });
    }

    let exact = rows.iter().all(|m| m.max_error <= 1e-12 * f_scale);
    let order = if exact {
        None
    } else {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .map(|m| (m.h.ln(), m.max_error.max(f64::MIN_POSITIVE).ln()))
            .collect();
        Some(least_squares_slope(&pts))
    };
    Ok(ConvergenceReport { rows, order, exact })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
