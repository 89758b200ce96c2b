//! Slopes from values alone, and how a poor estimate shows up as a broken
//! necessary shape condition.

use rational_fif::{arithmetic_mean_derivatives, select_parameters, HermiteData, RPolicy, ShapeClass};

fn main() -> rational_fif::Result<()> {
    let x = [0.0, 1.0, 2.0, 3.0, 4.0];
    let y = [0.0, 1.0, 4.0, 9.0, 16.0];
    let d = arithmetic_mean_derivatives(&x, &y)?;
    println!("samples of x^2: d = {d:?} (exact: 0, 2, 4, 6, 8)");

    // Sharp step: the estimate at the first knot has the wrong sign.
    let x = [0.0, 1.0, 1.2, 4.0];
    let y = [0.0, 0.1, 3.0, 3.2];
    let d = arithmetic_mean_derivatives(&x, &y)?;
    println!("step data: d = {d:.4?}");
    let data = HermiteData::new(x.to_vec(), y.to_vec(), d)?;
    match select_parameters(&data, ShapeClass::MonotoneIncreasing, 0.5, &RPolicy::Optimal) {
        Ok(p) => println!("monotone fit: alpha = {:.4?}", p.alpha),
        Err(e) => println!("monotone fit rejected: {e}"),
    }
    Ok(())
}
