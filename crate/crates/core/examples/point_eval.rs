//! Point queries with a certified error bound, for values and slopes.

use rational_fif::{build_fif, eval_at, eval_derivative_at, EvalSettings, FifParameters, HermiteData};

fn main() -> rational_fif::Result<()> {
    let data = HermiteData::from_triples(&[
        (0.0, 0.0, 1.3333),
        (2.0, 4.0, 2.6666),
        (3.0, 7.0, 2.6190),
        (9.0, 9.0, 1.5833),
        (11.0, 13.0, 2.4166),
    ])?;
    let fif = build_fif(data, FifParameters::new(vec![0.18, 0.09, 0.1, 0.18], vec![2.0, 1.8, 31.0, 0.5]))?;

    println!("{:>6}  {:>10}  {:>6}  {:>18}  {:>9}", "x", "tol", "depth", "S(x)", "bound");
    for x in [1.0, 5.5, 10.0] {
        for tol in [1e-4, 1e-8, 1e-12] {
            let e = eval_at(&fif, x, &EvalSettings::with_tolerance(tol))?;
            println!("{x:>6}  {tol:>10.0e}  {:>6}  {:>18.14}  {:>9.1e}", e.depth, e.value, e.error_bound);
        }
    }
    let e = eval_derivative_at(&fif, 5.5, &EvalSettings::with_tolerance(1e-10))?;
    println!("S'(5.5) = {:.12} (error <= {:.1e})", e.value, e.error_bound);
    Ok(())
}
