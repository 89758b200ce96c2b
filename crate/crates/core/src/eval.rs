//! Point evaluation by address expansion, exact attractor sampling, and
//! one-sided second derivatives at the knots.
//!
//! Point evaluation unrolls the functional equation through inverse maps:
//! `S(x) = R_i(x') + α_i S(x')` with `x' = L_i⁻¹(x)`, accumulating the
//! inhomogeneous terms and the product of scaling factors. The unrolling
//! stops exactly when it lands on a knot (up to rounding) or meets a zero scaling factor, and
//! otherwise when the product times a range bound of `S` drops below the
//! tolerance; the remaining `S(x')` is replaced by the piecewise-linear
//! interpolant of the data.

use serde::Serialize;

use crate::data::HermiteData;
use crate::error::{Error, Result};
use crate::fif::RationalCubicFif;

/// Approximation used for the unexpanded remainder `S(x')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[non_exhaustive]
pub enum BaseApprox {
    /// Piecewise-linear interpolation of the knot values (of `y` for `S`,
    /// of `d` for `S'`).
    #[default]
    PiecewiseLinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalSettings {
    /// Absolute error target, in value (or slope) units.
    pub tolerance: f64,
    /// Maximum number of inverse-map steps.
    pub max_depth: usize,
    pub base: BaseApprox,
}

impl Default for EvalSettings {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_depth: 10_000,
            base: BaseApprox::PiecewiseLinear,
        }
    }
}

impl EvalSettings {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_depth < 1 {
            return Err(Error::InvalidArgument("max depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// A value (or slope) together with its certified error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    pub error_bound: f64,
    /// Number of inverse-map steps taken.
    pub depth: usize,
}

/// Relative distance at which an expanded abscissa is identified with a
/// knot during slope evaluation. Each inverse map amplifies rounding error
/// by `1 / a_i`, and `S'` is only Hölder continuous, so a near miss would
/// otherwise send the expansion on a long detour.
pub const SLOPE_KNOT_SNAP: f64 = 1e-11;

fn snap_to_knot(data: &HermiteData, x: f64, rel: f64) -> Option<usize> {
    let scale = data.x_first().abs().max(data.x_last().abs()).max(data.span());
    let eps = rel * scale;
    let i = data.locate(x);
    let xs = data.x();
    [i, i + 1]
        .into_iter()
        .filter(|&j| (xs[j] - x).abs() <= eps)
        .min_by(|&a, &b| (xs[a] - x).abs().total_cmp(&(xs[b] - x).abs()))
}

fn check_domain(data: &HermiteData, x: f64) -> Result<()> {
    if !(x >= data.x_first() && x <= data.x_last()) {
        return Err(Error::OutsideDomain {
            x,
            lo: data.x_first(),
            hi: data.x_last(),
        });
    }
    Ok(())
}

enum Target {
    Value,
    Slope,
}

fn expand(fif: &RationalCubicFif, x: f64, settings: &EvalSettings, target: Target) -> Result<Evaluation> {
    settings.check()?;
    let data = fif.data();
    check_domain(data, x)?;
    let (knot_values, range, snap) = match target {
        Target::Value => (data.y(), fif.value_bound() + data.y_abs_max(), 8.0 * f64::EPSILON),
        Target::Slope => (data.d(), fif.slope_bound() + data.d_abs_max(), SLOPE_KNOT_SNAP),
    };

    let mut acc = 0.0;
    let mut weight = 1.0f64;
    let mut cur = x;
    for depth in 0..=settings.max_depth {
        if let Some(j) = snap_to_knot(data, cur, snap) {
            return Ok(Evaluation {
                value: acc + weight * knot_values[j],
                error_bound: 0.0,
                depth,
            });
        }
        if weight == 0.0 {
            return Ok(Evaluation {
                value: acc,
                error_bound: 0.0,
                depth,
            });
        }
        let remainder = weight.abs() * range;
        if remainder <= settings.tolerance || depth == settings.max_depth {
            let value = acc + weight * data.lerp_at(knot_values, cur);
            if remainder > settings.tolerance {
                return Err(Error::ToleranceNotMet {
                    value,
                    achieved: remainder,
                    tolerance: settings.tolerance,
                    depth,
                });
            }
            return Ok(Evaluation {
                value,
                error_bound: remainder,
                depth,
            });
        }
        let i = data.locate(cur);
        let c = &fif.coefficients()[i];
        let phi = fif.local_theta(i, cur).clamp(0.0, 1.0);
        match target {
            Target::Value => {
                acc += weight * c.value_term(phi);
                weight *= c.alpha;
            }
            Target::Slope => {
                acc += weight * c.slope_term(phi);
                weight *= c.alpha / c.scale;
            }
        }
        cur = data.x_first() + phi * data.span();
    }
    unreachable!("loop returns at max_depth")
}

/// `S(x)` to within `settings.tolerance`.
pub fn eval_at(fif: &RationalCubicFif, x: f64, settings: &EvalSettings) -> Result<Evaluation> {
    expand(fif, x, settings, Target::Value)
}

/// `S'(x)` to within `settings.tolerance`.
pub fn eval_derivative_at(
    fif: &RationalCubicFif,
    x: f64,
    settings: &EvalSettings,
) -> Result<Evaluation> {
    expand(fif, x, settings, Target::Slope)
}

impl RationalCubicFif {
    /// `S(x)` with default settings.
    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_at(self, x, &EvalSettings::default()).map(|e| e.value)
    }

    /// `S'(x)` with default settings.
    pub fn eval_derivative(&self, x: f64) -> Result<f64> {
        eval_derivative_at(self, x, &EvalSettings::default()).map(|e| e.value)
    }
}

/// Exact points of the graph of `S` (and `S'`) generated by the IFS.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample {
    pub x: Vec<f64>,
    pub s: Vec<f64>,
    pub s1: Option<Vec<f64>>,
    /// Number of times the IFS was applied to the knot set.
    pub depth: usize,
    /// True when every value is exact up to rounding (attractor points).
    pub exact: bool,
}

impl CurveSample {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Index of the sample point at `x` (within `eps`).
    pub fn find(&self, x: f64, eps: f64) -> Option<usize> {
        let k = self.x.partition_point(|&v| v < x - eps);
        (k < self.x.len() && (self.x[k] - x).abs() <= eps).then_some(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOptions {
    /// Largest number of points a sample may hold.
    pub point_budget: usize,
    pub with_slopes: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self {
            point_budget: 5_000_000,
            with_slopes: true,
        }
    }
}

/// Number of distinct points in `W^depth(knots)`: `(N-1)^(depth+1) + 1`.
pub fn attractor_sample_size(n_intervals: usize, depth: usize) -> Option<usize> {
    let exp = u32::try_from(depth).ok()?.checked_add(1)?;
    n_intervals.checked_pow(exp)?.checked_add(1)
}

/// Applies the IFS `depth` times to the knot set.
pub fn sample_attractor(fif: &RationalCubicFif, depth: usize) -> Result<CurveSample> {
    sample_attractor_with(fif, depth, &SampleOptions::default())
}

pub fn sample_attractor_with(
    fif: &RationalCubicFif,
    depth: usize,
    options: &SampleOptions,
) -> Result<CurveSample> {
    if depth < 1 {
        return Err(Error::InvalidArgument("sampling depth must be at least 1".into()));
    }
    let data = fif.data();
    let n = fif.n_intervals();
    let needed = attractor_sample_size(n, depth).unwrap_or(usize::MAX);
    if needed > options.point_budget {
        return Err(Error::PointBudgetExceeded {
            needed,
            budget: options.point_budget,
        });
    }

    let dedup_eps = 1e-14 * data.x_first().abs().max(data.x_last().abs()).max(data.span());
    let mut xs = data.x().to_vec();
    let mut vs = data.y().to_vec();
    let mut ss = data.d().to_vec();

    for _ in 0..depth {
        let m = xs.len();
        let mut nx = Vec::with_capacity(n * m);
        let mut nv = Vec::with_capacity(n * m);
        let mut ns = Vec::with_capacity(if options.with_slopes { n * m } else { 0 });
        for (i, c) in fif.coefficients().iter().enumerate() {
            for k in 0..m {
                // Images of the domain ends are knots; keep their data exact.
                let (px, pv, ps) = if k == 0 {
                    (data.x()[i], data.y()[i], data.d()[i])
                } else if k == m - 1 {
                    (data.x()[i + 1], data.y()[i + 1], data.d()[i + 1])
                } else {
                    let (px, pv) = fif.apply_map(i, xs[k], vs[k]);
                    let ps = if options.with_slopes {
                        c.alpha / c.scale * ss[k] + c.slope_term(fif.theta(xs[k]))
                    } else {
                        0.0
                    };
                    (px, pv, ps)
                };
                if let Some(&last) = nx.last() {
                    if px - last <= dedup_eps {
                        continue;
                    }
                }
                nx.push(px);
                nv.push(pv);
                if options.with_slopes {
                    ns.push(ps);
                }
            }
        }
        xs = nx;
        vs = nv;
        ss = ns;
    }

    Ok(CurveSample {
        x: xs,
        s: vs,
        s1: options.with_slopes.then_some(ss),
        depth,
        exact: true,
    })
}

/// One-sided second derivatives at the knots: right limits at
/// `x_1 .. x_{N-1}` and the left limit at `x_N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotCurvatures {
    pub right: Vec<f64>,
    pub left_at_end: f64,
}

impl KnotCurvatures {
    pub fn all(&self) -> impl Iterator<Item = f64> + '_ {
        self.right.iter().copied().chain(std::iter::once(self.left_at_end))
    }
}

/// Requires `α_i < a_i²` on every interval.
pub fn second_derivative_right_at_knots(fif: &RationalCubicFif) -> Result<KnotCurvatures> {
    let data = fif.data();
    let coeffs = fif.coefficients();
    for (i, c) in coeffs.iter().enumerate() {
        let limit = c.scale * c.scale;
        if c.alpha >= limit {
            return Err(Error::SecondDerivativeUndefined {
                interval: i,
                alpha: c.alpha,
                limit,
            });
        }
    }
    let n = coeffs.len();
    let ratio = |i: usize| coeffs[i].alpha / (coeffs[i].scale * coeffs[i].scale);
    let first = 2.0 * coeffs[0].curvature[3] / data.h()[0] / (1.0 - ratio(0));
    let mut right = Vec::with_capacity(n);
    right.push(first);
    for (j, (c, h)) in coeffs.iter().zip(data.h()).enumerate().skip(1) {
        right.push(ratio(j) * first + 2.0 * c.curvature[3] / h);
    }
    let left_at_end = 2.0 * coeffs[n - 1].curvature[0] / data.h()[n - 1] / (1.0 - ratio(n - 1));
    Ok(KnotCurvatures { right, left_at_end })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fif::{build_fif, FifParameters};

    fn monotone() -> HermiteData {
        HermiteData::from_triples(&[
            (0.0, 0.0, 1.3333),
            (2.0, 4.0, 2.6666),
            (3.0, 7.0, 2.6190),
            (9.0, 9.0, 1.5833),
            (11.0, 13.0, 2.4166),
        ])
        .unwrap()
    }

    fn reference_fit() -> RationalCubicFif {
        let p = FifParameters::new(vec![0.18, 0.09, 0.1, 0.18], vec![2.0, 1.8, 31.0, 0.5]);
        build_fif(monotone(), p).unwrap()
    }

    #[test]
    fn knots_are_exact() {
        let fif = reference_fit();
        let s = EvalSettings::default();
        for (k, &x) in fif.data().x().iter().enumerate() {
            let e = eval_at(&fif, x, &s).unwrap();
            assert_eq!(e.value, fif.data().y()[k]);
            assert_eq!(e.depth, 0);
            let e = eval_derivative_at(&fif, x, &s).unwrap();
            assert_eq!(e.value, fif.data().d()[k]);
        }
    }

    #[test]
    fn one_unrolling_at_a_knot_preimage() {
        let fif = reference_fit();
        let c = fif.coefficients()[1];
        let x = c.scale * 3.0 + c.shift;
        let t = 3.0 / 11.0;
        let expected = c.alpha * 7.0 + c.value_term(t);
        let e = eval_at(&fif, x, &EvalSettings::default()).unwrap();
        assert!((e.value - expected).abs() < 1e-14, "{} vs {}", e.value, expected);
        assert_eq!(e.depth, 1);
        assert_eq!(e.error_bound, 0.0);
    }

    #[test]
    fn classical_model_stops_after_one_step() {
        let p = FifParameters::classical(vec![2.0, 1.8, 31.0, 0.5]);
        let fif = build_fif(monotone(), p).unwrap();
        for x in [0.3, 2.5, 4.0, 10.2] {
            let e = eval_at(&fif, x, &EvalSettings::default()).unwrap();
            assert_eq!(e.depth, 1);
            assert_eq!(e.value, fif.local_form(x).unwrap());
        }
    }

    #[test]
    fn domain_and_settings_errors() {
        let fif = reference_fit();
        let s = EvalSettings::default();
        assert!(matches!(eval_at(&fif, -0.1, &s), Err(Error::OutsideDomain { .. })));
        assert!(matches!(eval_at(&fif, f64::NAN, &s), Err(Error::OutsideDomain { .. })));
        let bad = EvalSettings {
            tolerance: 0.0,
            ..s
        };
        assert!(eval_at(&fif, 1.0, &bad).is_err());
        let shallow = EvalSettings {
            tolerance: 1e-14,
            max_depth: 2,
            ..s
        };
        match eval_at(&fif, 1.2345, &shallow) {
            Err(Error::ToleranceNotMet { achieved, depth, .. }) => {
                assert!(achieved > 1e-14);
                assert_eq!(depth, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn doubling_depth_never_loosens_the_bound() {
        let fif = reference_fit();
        let bound = |depth: usize, x: f64| {
            let s = EvalSettings {
                tolerance: 1e-300,
                max_depth: depth,
                base: BaseApprox::PiecewiseLinear,
            };
            match eval_at(&fif, x, &s) {
                Ok(e) => e.error_bound,
                Err(Error::ToleranceNotMet { achieved, .. }) => achieved,
                Err(e) => panic!("{e}"),
            }
        };
        for x in [0.77, 3.3, 7.1, 10.9] {
            let mut prev = f64::INFINITY;
            for depth in [1, 2, 4, 8, 16, 32] {
                let b = bound(depth, x);
                assert!(b <= prev);
                prev = b;
            }
        }
    }

    #[test]
    fn sample_size_and_knots() {
        let fif = reference_fit();
        let sample = sample_attractor(&fif, 1).unwrap();
        assert_eq!(sample.len(), 17);
        for depth in 1..=4 {
            let sample = sample_attractor(&fif, depth).unwrap();
            assert_eq!(Some(sample.len()), attractor_sample_size(4, depth));
            assert!(sample.x.windows(2).all(|w| w[0] < w[1]));
            let s1 = sample.s1.as_ref().unwrap();
            for (k, &x) in fif.data().x().iter().enumerate() {
                let j = sample.find(x, 0.0).unwrap();
                assert_eq!(sample.s[j], fif.data().y()[k]);
                assert_eq!(s1[j], fif.data().d()[k]);
            }
        }
    }

    #[test]
    fn sample_budget() {
        let fif = reference_fit();
        let opts = SampleOptions {
            point_budget: 100,
            with_slopes: false,
        };
        assert!(matches!(
            sample_attractor_with(&fif, 3, &opts),
            Err(Error::PointBudgetExceeded { needed: 257, budget: 100 })
        ));
        assert!(sample_attractor(&fif, 0).is_err());
    }

    #[test]
    fn sample_agrees_with_point_evaluation() {
        let fif = reference_fit();
        let sample = sample_attractor(&fif, 3).unwrap();
        let s = EvalSettings::with_tolerance(1e-12);
        let s1 = sample.s1.as_ref().unwrap();
        for k in (0..sample.len()).step_by(7) {
            let v = eval_at(&fif, sample.x[k], &s).unwrap().value;
            assert!((v - sample.s[k]).abs() <= 1e-12 + 1e-13);
            let d = eval_derivative_at(&fif, sample.x[k], &s).unwrap().value;
            assert!((d - s1[k]).abs() <= 1e-11, "{} vs {}", d, s1[k]);
        }
    }

    #[test]
    fn curvature_of_a_quadratic() {
        let data = HermiteData::from_triples(&[(0.0, 0.0, 0.0), (1.0, 1.0, 2.0), (2.0, 4.0, 4.0)]).unwrap();
        let fif = build_fif(data, FifParameters::cubic_hermite(2)).unwrap();
        assert_eq!(fif.coefficients()[0].curvature[3], 1.0);
        let k = second_derivative_right_at_knots(&fif).unwrap();
        for v in k.all() {
            assert!((v - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn curvature_of_a_line() {
        let data = HermiteData::from_triples(&[(0.0, 1.0, 0.5), (1.0, 1.5, 0.5), (3.0, 2.5, 0.5)]).unwrap();
        let fif = build_fif(data, FifParameters::classical(vec![7.0, 0.2])).unwrap();
        let k = second_derivative_right_at_knots(&fif).unwrap();
        assert!(k.all().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn curvature_requires_small_scaling() {
        let fif = reference_fit();
        assert!(matches!(
            second_derivative_right_at_knots(&fif),
            Err(Error::SecondDerivativeUndefined { interval: 0, .. })
        ));
    }
}
