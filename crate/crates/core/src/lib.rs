//! Shape-preserving rational cubic spline fractal interpolation.
//!
//! A fit is the fixed point of an iterated function system built on
//! Hermite data `(x_i, y_i, d_i)`. Each interval carries a scaling factor
//! `α_i`, which controls how irregular the derivative is, and a shape
//! parameter `r_i` in the rational denominator. With every `α_i = 0` the
//! model reduces to a classical rational cubic spline, and with `r_i = 3`
//! as well to the cubic Hermite spline.
//!
//! ```
//! use rational_fif::{select_parameters, build_fif, HermiteData, RPolicy, ShapeClass};
//!
//! let data = HermiteData::from_triples(&[
//!     (0.0, 0.0, 1.3333),
//!     (2.0, 4.0, 2.6666),
//!     (3.0, 7.0, 2.6190),
//!     (9.0, 9.0, 1.5833),
//!     (11.0, 13.0, 2.4166),
//! ])?;
//! let params = select_parameters(&data, ShapeClass::MonotoneIncreasing, 0.5, &RPolicy::Optimal)?;
//! let fif = build_fif(data, params)?;
//! assert_eq!(fif.eval(2.0)?, 4.0);
//! # Ok::<(), rational_fif::Error>(())
//! ```

// `!(a > b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod data;
pub mod error;
pub mod estimate;
pub mod eval;
pub mod fif;
pub mod piecewise;
pub mod shape;

pub use data::HermiteData;
pub use error::{Error, Result};
pub use estimate::arithmetic_mean_derivatives;
pub use eval::{
    eval_at, eval_derivative_at, sample_attractor, second_derivative_right_at_knots, CurveSample,
    EvalSettings, Evaluation,
};
pub use fif::{
    build_fif, classical_spline, validate_parameters, FifParameters, RationalCubicFif,
    ValidationReport, DEFAULT_KAPPA,
};
pub use shape::{
    alpha_bounds, check_shape_parameters, convex_alpha_bounds, convex_r_bound,
    monotone_alpha_bounds, monotone_r_bound, positivity_bounds, r_bounds, select_parameters,
    verify_shape, BoundsReport, RPolicy, ShapeClass,
};
