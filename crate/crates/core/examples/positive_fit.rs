//! Positive data whose cubic Hermite spline dips below zero, repaired by a
//! positivity-preserving fractal fit.

use rational_fif::{
    build_fif, positivity_bounds, select_parameters, verify_shape, FifParameters, HermiteData,
    RPolicy, ShapeClass,
};

fn main() -> rational_fif::Result<()> {
    let data = HermiteData::from_triples(&[
        (0.0, 1.0, -3.2),
        (0.5, 0.05, 0.0),
        (1.0, 1.0, 4.0),
        (2.0, 0.1, -3.0),
        (3.0, 2.0, 1.0),
    ])?;

    let hermite = build_fif(data.clone(), FifParameters::cubic_hermite(data.n_intervals()))?;
    let v = verify_shape(&hermite, ShapeClass::Positive, 5)?;
    println!("cubic Hermite spline positive: {} {:?}", v.passed, v.witness);

    let report = positivity_bounds(&data)?;
    println!("alpha bounds: {:.4?}", report.alpha_max());
    let params = select_parameters(&data, ShapeClass::Positive, 0.5, &RPolicy::Optimal)?;
    println!("alpha = {:.4?}\nr     = {:.4?}", params.alpha, params.r);
    let fif = build_fif(data, params)?;
    let v = verify_shape(&fif, ShapeClass::Positive, 6)?;
    println!("fractal fit positive on {} points: {}", v.points, v.passed);
    Ok(())
}
