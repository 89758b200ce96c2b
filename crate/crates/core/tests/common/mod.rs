//! Shared fixtures, random data generators and independent oracles. The
//! oracles restate the formulas directly on raw arrays and never call into
//! the library.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use rational_fif::HermiteData;

pub const MONO_X: [f64; 5] = [0.0, 2.0, 3.0, 9.0, 11.0];
pub const MONO_Y: [f64; 5] = [0.0, 4.0, 7.0, 9.0, 13.0];
pub const MONO_D: [f64; 5] = [1.3333, 2.6666, 2.6190, 1.5833, 2.4166];

pub const CONVEX_X: [f64; 5] = [2.2, 4.0, 5.0, 10.0, 10.22];
pub const CONVEX_Y: [f64; 5] = [2.0, 0.625, 0.4, 1.0, 1.8];

pub fn monotone_data() -> HermiteData {
    HermiteData::new(MONO_X.to_vec(), MONO_Y.to_vec(), MONO_D.to_vec()).unwrap()
}

pub fn convex_data() -> HermiteData {
    let d = mean_slopes_oracle(&CONVEX_X, &CONVEX_Y);
    HermiteData::new(CONVEX_X.to_vec(), CONVEX_Y.to_vec(), d).unwrap()
}

fn chords(x: &[f64], y: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta = (0..h.len()).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    (h, delta)
}

/// Three-point slope estimates: weighted chord means inside, one-sided
/// extrapolation `Δ_1 + (Δ_1 - Δ_2) h_1 / (h_1 + h_2)` at the ends.
pub fn mean_slopes_oracle(x: &[f64], y: &[f64]) -> Vec<f64> {
    let (h, dl) = chords(x, y);
    let n = x.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        d[i] = (h[i] * dl[i - 1] + h[i - 1] * dl[i]) / (h[i - 1] + h[i]);
    }
    d[0] = dl[0] + (dl[0] - dl[1]) * h[0] / (h[0] + h[1]);
    let m = n - 2;
    d[n - 1] = dl[m] + (dl[m] - dl[m - 1]) * h[m] / (h[m] + h[m - 1]);
    d
}

/// Optimal monotone shape parameters `1 + (h(d_i + d_{i+1}) - α L (d_1 + d_N)) / (hΔ - α R)`.
pub fn monotone_r_oracle(x: &[f64], y: &[f64], d: &[f64], alpha: &[f64]) -> Vec<f64> {
    let (h, dl) = chords(x, y);
    let n = x.len();
    let (span, rise) = (x[n - 1] - x[0], y[n - 1] - y[0]);
    (0..n - 1)
        .map(|i| {
            let num = h[i] * (d[i] + d[i + 1]) - alpha[i] * span * (d[0] + d[n - 1]);
            1.0 + num / (h[i] * dl[i] - alpha[i] * rise)
        })
        .collect()
}

/// Corrected convex slope gaps `(G_i, H_i)`.
pub fn convex_gaps_oracle(x: &[f64], y: &[f64], d: &[f64], alpha: &[f64]) -> Vec<(f64, f64)> {
    let (h, dl) = chords(x, y);
    let n = x.len();
    let (span, rise) = (x[n - 1] - x[0], y[n - 1] - y[0]);
    (0..n - 1)
        .map(|i| {
            let w = alpha[i] / h[i];
            (
                d[i + 1] - dl[i] - w * (d[n - 1] * span - rise),
                dl[i] - d[i] - w * (rise - d[0] * span),
            )
        })
        .collect()
}

/// Optimal convex shape parameters `1 + M/m + m/M`.
pub fn convex_r_oracle(x: &[f64], y: &[f64], d: &[f64], alpha: &[f64]) -> Vec<f64> {
    convex_gaps_oracle(x, y, d, alpha)
        .into_iter()
        .map(|(g, h)| {
            let (big, small) = (g.max(h), g.min(h));
            1.0 + big / small + small / big
        })
        .collect()
}

/// Quadratic-over-linear form of the classical convex spline at the
/// optimal shape parameter, on interval `i`.
pub fn convex_reduced_form(x: &[f64], y: &[f64], d: &[f64], i: usize, t: f64) -> f64 {
    let (g, hh) = convex_gaps_oracle(x, y, d, &vec![0.0; x.len() - 1])[i];
    let h = x[i + 1] - x[i];
    let th = (t - x[i]) / h;
    (1.0 - th) * y[i] + th * y[i + 1] - h * th * (1.0 - th) * g * hh / (g * (1.0 - th) + hh * th)
}

/// Cubic Hermite interpolant in the standard basis.
pub fn hermite_cubic(x: &[f64], y: &[f64], d: &[f64], t: f64) -> f64 {
    let i = match x.iter().rposition(|&k| k <= t) {
        Some(i) if i + 1 < x.len() => i,
        Some(i) => i - 1,
        None => 0,
    };
    let h = x[i + 1] - x[i];
    let s = (t - x[i]) / h;
    let h00 = 2.0 * s.powi(3) - 3.0 * s * s + 1.0;
    let h10 = s.powi(3) - 2.0 * s * s + s;
    let h01 = -2.0 * s.powi(3) + 3.0 * s * s;
    let h11 = s.powi(3) - s * s;
    h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1]
}

pub fn linear_interp(x: &[f64], y: &[f64], t: f64) -> f64 {
    let i = x.partition_point(|&k| k <= t).clamp(1, x.len() - 1) - 1;
    let s = (t - x[i]) / (x[i + 1] - x[i]);
    (1.0 - s) * y[i] + s * y[i + 1]
}

pub fn uniform(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    // The last point is pinned so rounding cannot step past `b`.
    (0..n).map(move |k| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 })
}

fn random_knots(rng: &mut StdRng, n: usize) -> Vec<f64> {
    let mut x = vec![rng.gen_range(-2.0..2.0)];
    for _ in 1..n {
        let last = *x.last().unwrap();
        x.push(last + rng.gen_range(0.2..1.5));
    }
    x
}

/// Arbitrary Hermite data (no shape).
pub fn random_data(rng: &mut StdRng) -> HermiteData {
    let n = rng.gen_range(3..=8);
    let x = random_knots(rng, n);
    let y = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let d = (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect();
    HermiteData::new(x, y, d).unwrap()
}

/// Increasing data meeting the monotone necessary conditions; about one
/// step in ten is flat, with zero slopes at its ends.
pub fn random_increasing(rng: &mut StdRng) -> HermiteData {
    let n = rng.gen_range(4..=7);
    let x = random_knots(rng, n);
    let mut y = vec![rng.gen_range(-3.0..3.0)];
    for _ in 1..n {
        let step = if rng.gen_bool(0.1) { 0.0 } else { rng.gen_range(0.05..3.0) };
        let last = *y.last().unwrap();
        y.push(last + step);
    }
    if y[n - 1] == y[0] {
        y[n - 1] += 1.0;
    }
    let (_, dl) = chords(&x, &y);
    let d = (0..n)
        .map(|i| {
            let left = if i > 0 { dl[i - 1] } else { dl[0] };
            let right = if i < n - 1 { dl[i] } else { dl[n - 2] };
            if left == 0.0 || right == 0.0 {
                0.0
            } else {
                rng.gen_range(0.01..3.0 * left.max(right))
            }
        })
        .collect();
    HermiteData::new(x, y, d).unwrap()
}

/// Samples of `f(x) = A e^{qx} + B x^2 + C x + E` with exact slopes;
/// strictly convex since `B > 0`. With `increasing`, `f' > 0` throughout.
pub fn random_convex(rng: &mut StdRng, increasing: bool) -> HermiteData {
    let n = rng.gen_range(4..=7);
    let x = random_knots(rng, n);
    let len = (x[n - 1] - x[0]).max(x[n - 1].abs()).max(x[0].abs());
    let a = rng.gen_range(0.0..2.0);
    let q = rng.gen_range(-3.0..3.0) / len;
    let b = rng.gen_range(0.05..1.0);
    let df0 = |x0: f64| a * q * (q * x0).exp() + 2.0 * b * x0;
    let c = if increasing {
        -df0(x[0]) + rng.gen_range(0.1..1.0)
    } else {
        rng.gen_range(-3.0..3.0)
    };
    let e = rng.gen_range(-2.0..2.0);
    let y = x.iter().map(|&t| a * (q * t).exp() + b * t * t + c * t + e).collect();
    let d = x.iter().map(|&t| df0(t) + c).collect();
    HermiteData::new(x, y, d).unwrap()
}
