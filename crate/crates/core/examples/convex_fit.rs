//! Convex fit of values-only data: slopes estimated by the arithmetic-mean
//! rule, shape parameters at zero fractality, and a fractal fit with its
//! right-hand curvature at the knots.

use rational_fif::{
    arithmetic_mean_derivatives, build_fif, r_bounds, second_derivative_right_at_knots,
    select_parameters, verify_shape, HermiteData, RPolicy, ShapeClass,
};

fn main() -> rational_fif::Result<()> {
    let x = vec![2.2, 4.0, 5.0, 10.0, 10.22];
    let y = vec![2.0, 0.625, 0.4, 1.0, 1.8];
    let d = arithmetic_mean_derivatives(&x, &y)?;
    println!("estimated d = {d:.4?}");
    let data = HermiteData::new(x, y, d)?;

    let classical: Vec<f64> = r_bounds(&data, ShapeClass::Convex, &[0.0; 4])?
        .iter()
        .map(|b| b.optimal)
        .collect();
    println!("optimal r at alpha = 0: {classical:.4?}");

    let params = select_parameters(&data, ShapeClass::Convex, 0.8, &RPolicy::Optimal)?;
    println!("t = 0.8: alpha = {:.6?}\n         r = {:.4?}", params.alpha, params.r);
    let fif = build_fif(data, params)?;
    let curv = second_derivative_right_at_knots(&fif)?;
    println!("S'' at the knots: {:.4?}", curv.all().collect::<Vec<_>>());
    println!("convex at depth 6: {}", verify_shape(&fif, ShapeClass::Convex, 6)?.passed);
    Ok(())
}
