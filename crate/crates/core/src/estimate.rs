//! Derivative parameters from values alone, by the three-point arithmetic
//! mean rule. Estimates are returned unmodified; shape checks report any
//! necessary condition they break.

use crate::error::{Error, Result};

/// Slopes `d_i` estimated from `(x_i, y_i)`. Needs at least three points.
pub fn arithmetic_mean_derivatives(x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    if y.len() != n {
        return Err(Error::LengthMismatch {
            what: "y",
            expected: n,
            got: y.len(),
        });
    }
    for (what, v) in [("x", x), ("y", y)] {
        if let Some(index) = v.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonFinite { what, index });
        }
    }
    if let Some(index) = x.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NonIncreasingKnots { index });
    }

    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = y.windows(2).zip(&h).map(|(w, hi)| (w[1] - w[0]) / hi).collect();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        d[i] = (h[i] * delta[i - 1] + h[i - 1] * delta[i]) / (h[i - 1] + h[i]);
    }

    let ratio = h[0] / h[1];
    let wide = (y[2] - y[0]) / (x[2] - x[0]);
    d[0] = (1.0 + ratio) * delta[0] - ratio * wide;

    let m = n - 2;
    let ratio = h[m] / h[m - 1];
    let wide = (y[n - 1] - y[n - 3]) / (x[n - 1] - x[n - 3]);
    d[n - 1] = (1.0 + ratio) * delta[m] - ratio * wide;
    Ok(d)
}
