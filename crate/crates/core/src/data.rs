//! Hermite interpolation data and the mesh quantities derived from it.
//!
//! Intervals are indexed from 0 in the API (`0..n_intervals()`); text
//! reports print them 1-based.

use serde::Serialize;

use crate::error::{Error, Result};

/// Strictly increasing knots with values and first-derivative parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteData {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
    #[serde(skip)]
    h: Vec<f64>,
    #[serde(skip)]
    delta: Vec<f64>,
}

impl HermiteData {
    pub fn new(x: Vec<f64>, y: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::TooFewPoints {
                needed: 2,
                got: x.len(),
            });
        }
        for (what, v) in [("y", &y), ("d", &d)] {
            if v.len() != x.len() {
                return Err(Error::LengthMismatch {
                    what,
                    expected: x.len(),
                    got: v.len(),
                });
            }
        }
        for (what, v) in [("x", &x), ("y", &y), ("d", &d)] {
            if let Some(index) = v.iter().position(|t| !t.is_finite()) {
                return Err(Error::NonFinite { what, index });
            }
        }
        if let Some(index) = x.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NonIncreasingKnots { index });
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta = y
            .windows(2)
            .zip(&h)
            .map(|(w, hi)| (w[1] - w[0]) / hi)
            .collect();
        Ok(Self { x, y, d, h, delta })
    }

    /// Builds data from `(x, y, d)` triples.
    pub fn from_triples(triples: &[(f64, f64, f64)]) -> Result<Self> {
        let x = triples.iter().map(|t| t.0).collect();
        let y = triples.iter().map(|t| t.1).collect();
        let d = triples.iter().map(|t| t.2).collect();
        Self::new(x, y, d)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn n_intervals(&self) -> usize {
        self.x.len() - 1
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Interval widths `h_i = x_{i+1} - x_i`.
    pub fn h(&self) -> &[f64] {
        &self.h
    }

    /// Chord slopes `(y_{i+1} - y_i) / h_i`.
    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn x_first(&self) -> f64 {
        self.x[0]
    }

    pub fn x_last(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    pub fn y_first(&self) -> f64 {
        self.y[0]
    }

    pub fn y_last(&self) -> f64 {
        self.y[self.y.len() - 1]
    }

    pub fn d_first(&self) -> f64 {
        self.d[0]
    }

    pub fn d_last(&self) -> f64 {
        self.d[self.d.len() - 1]
    }

    /// Length of the whole interval, `x_N - x_1`.
    pub fn span(&self) -> f64 {
        self.x_last() - self.x_first()
    }

    /// Total rise `y_N - y_1`.
    pub fn rise(&self) -> f64 {
        self.y_last() - self.y_first()
    }

    /// Contraction ratio `a_i = h_i / (x_N - x_1)` of the i-th affine map.
    pub fn a(&self, i: usize) -> f64 {
        self.h[i] / self.span()
    }

    pub fn a_all(&self) -> Vec<f64> {
        (0..self.n_intervals()).map(|i| self.a(i)).collect()
    }

    pub fn h_max(&self) -> f64 {
        self.h.iter().fold(0.0, |m, &v| m.max(v))
    }

    pub fn y_abs_max(&self) -> f64 {
        self.y.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    pub fn d_abs_max(&self) -> f64 {
        self.d.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Index of the knot equal to `x`, if any.
    pub fn knot_index(&self, x: f64) -> Option<usize> {
        self.x.binary_search_by(|k| k.total_cmp(&x)).ok()
    }

    /// Index `i` of the interval `[x_i, x_{i+1}]` containing `x` (right end
    /// inclusive for the last interval). `x` must lie in the domain.
    pub fn locate(&self, x: f64) -> usize {
        let n = self.n_intervals();
        let idx = self.x.partition_point(|&k| k <= x);
        idx.saturating_sub(1).min(n - 1)
    }

    /// Data with `y` and `d` negated; used to mirror decreasing/concave
    /// problems onto increasing/convex ones.
    pub fn negated(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: self.y.iter().map(|v| -v).collect(),
            d: self.d.iter().map(|v| -v).collect(),
            h: self.h.clone(),
            delta: self.delta.iter().map(|v| -v).collect(),
        }
    }

    /// Piecewise-linear interpolant of `(x, values)` at `x`; `values` is
    /// either `y` or `d`.
    pub(crate) fn lerp_at(&self, values: &[f64], x: f64) -> f64 {
        let i = self.locate(x);
        let t = (x - self.x[i]) / self.h[i];
        values[i] * (1.0 - t) + values[i + 1] * t
    }

    /// Piecewise-linear interpolant of the data values.
    pub fn linear_interpolant(&self, x: f64) -> f64 {
        self.lerp_at(&self.y, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn derived_quantities() {
        let data = monotone();
        assert_eq!(data.h(), &[2.0, 1.0, 6.0, 2.0]);
        assert_eq!(data.delta(), &[2.0, 3.0, 1.0 / 3.0, 2.0]);
        let a = data.a_all();
        let expected = [2.0 / 11.0, 1.0 / 11.0, 6.0 / 11.0, 2.0 / 11.0];
        for (got, want) in a.iter().zip(expected) {
            assert!((got - want).abs() < 1e-15);
        }
        assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_knots() {
        let err = HermiteData::new(vec![0.0, 1.0, 1.0], vec![0.0; 3], vec![0.0; 3]).unwrap_err();
        assert_eq!(err, Error::NonIncreasingKnots { index: 1 });
        let err = HermiteData::new(vec![0.0], vec![0.0], vec![0.0]).unwrap_err();
        assert!(matches!(err, Error::TooFewPoints { .. }));
        let err = HermiteData::new(vec![0.0, 1.0], vec![0.0], vec![0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { what: "y", .. }));
        let err = HermiteData::new(vec![0.0, f64::NAN], vec![0.0; 2], vec![0.0; 2]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { what: "x", .. }));
    }

    #[test]
    fn locate_intervals() {
        let data = monotone();
        assert_eq!(data.locate(0.0), 0);
        assert_eq!(data.locate(1.9), 0);
        assert_eq!(data.locate(2.0), 1);
        assert_eq!(data.locate(10.0), 3);
        assert_eq!(data.locate(11.0), 3);
        assert_eq!(data.knot_index(9.0), Some(3));
        assert_eq!(data.knot_index(9.5), None);
    }
}
