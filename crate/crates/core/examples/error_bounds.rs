//! A priori error bounds for a fractal fit of a smooth function: the C⁴
//! bound with sampled derivative norms and the C¹ modulus-of-continuity
//! bound.

use rational_fif::analysis::{
    error_bound_c1, error_bound_c4, sampled_modulus, sampled_sup_norm, DerivativeNorms, NORM_GRID,
};
use rational_fif::{build_fif, FifParameters, HermiteData};

fn main() -> rational_fif::Result<()> {
    let (a, b) = (0.0, 2.0);
    let f = |x: f64| (x * x).exp() / 10.0;
    let df = |x: f64| x * (x * x).exp() / 5.0;
    let x: Vec<f64> = (0..=8).map(|k| a + (b - a) * k as f64 / 8.0).collect();
    let y = x.iter().map(|&t| f(t)).collect();
    let d = x.iter().map(|&t| df(t)).collect();
    let data = HermiteData::new(x, y, d)?;
    let n = data.n_intervals();
    let params = FifParameters::new((0..n).map(|i| 0.5 * data.a(i).powi(4)).collect(), vec![3.5; n]);

    let d2 = |x: f64| (0.2 + 0.4 * x * x) * (x * x).exp();
    let d3 = |x: f64| (1.2 * x + 0.8 * x.powi(3)) * (x * x).exp();
    let d4 = |x: f64| (1.2 + 4.8 * x * x + 1.6 * x.powi(4)) * (x * x).exp();
    let norms = DerivativeNorms {
        f2: sampled_sup_norm(d2, a, b, NORM_GRID),
        f3: sampled_sup_norm(d3, a, b, NORM_GRID),
        f4: sampled_sup_norm(d4, a, b, NORM_GRID),
    };
    let c4 = error_bound_c4(&data, &params, &norms, 0.0)?;
    let omega = sampled_modulus(df, a, b, data.h_max(), NORM_GRID);
    let c1 = error_bound_c1(&data, &params, omega)?;

    let fif = build_fif(data, params)?;
    let measured = (0..=2000)
        .map(|k| a + (b - a) * k as f64 / 2000.0)
        .map(|t| (fif.eval(t).unwrap() - f(t)).abs())
        .fold(0.0, f64::max);
    println!("measured sup error  {measured:.3e}");
    println!("C4 bound            {:.3e}  (classical {:.3e} + fractal {:.3e})", c4.total, c4.classical, c4.perturbation);
    println!("C1 bound            {:.3e}  (omega(f'; h) = {omega:.4})", c1.total);
    Ok(())
}
