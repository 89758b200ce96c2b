//! Empirical convergence orders for f = sin on [0, 1] under the three
//! scaling-factor regimes, with the C⁴ error bound for each mesh.

use rational_fif::analysis::{
    convergence_order, sampled_sup_norm, AlphaRule, ConvergenceConfig, DerivativeNorms, RRule,
    NORM_GRID,
};

fn main() -> rational_fif::Result<()> {
    let norms = DerivativeNorms {
        f2: sampled_sup_norm(|x| -x.sin(), 0.0, 1.0, NORM_GRID),
        f3: sampled_sup_norm(|x| -x.cos(), 0.0, 1.0, NORM_GRID),
        f4: sampled_sup_norm(f64::sin, 0.0, 1.0, NORM_GRID),
    };
    let regimes = [
        ("alpha = a^4/2, r = 3", AlphaRule::HalfFourth, RRule::Fixed(3.0)),
        ("alpha = a^3/2, r = 3 + h", AlphaRule::HalfCube, RRule::ThreePlusH),
        ("alpha = a^2/2, r = 2", AlphaRule::HalfSquare, RRule::Fixed(2.0)),
    ];
    for (label, alpha, r) in regimes {
        let mut cfg = ConvergenceConfig::new(0.0, 1.0, vec![9, 17, 33, 65], alpha, r);
        cfg.norms = Some(norms);
        let report = convergence_order(f64::sin, f64::cos, &cfg)?;
        println!("{label}");
        for row in &report.rows {
            let bound = row.bound.as_ref().map_or(f64::NAN, |b| b.total);
            println!("  N = {:>3}  h = {:.5}  error = {:.3e}  bound = {:.3e}", row.knots, row.h, row.max_error, bound);
        }
        println!("  order {:.3}\n", report.order.unwrap_or(f64::INFINITY));
    }
    Ok(())
}
