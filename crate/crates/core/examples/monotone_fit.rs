//! Monotone fit of increasing data: scaling-factor bounds, automatic
//! parameter selection at several fractality levels, and a shape check.

use rational_fif::{
    alpha_bounds, build_fif, r_bounds, select_parameters, verify_shape, HermiteData, RPolicy,
    ShapeClass,
};

fn main() -> rational_fif::Result<()> {
    let data = HermiteData::from_triples(&[
        (0.0, 0.0, 1.3333),
        (2.0, 4.0, 2.6666),
        (3.0, 7.0, 2.6190),
        (9.0, 9.0, 1.5833),
        (11.0, 13.0, 2.4166),
    ])?;
    let shape = ShapeClass::MonotoneIncreasing;

    let report = alpha_bounds(&data, shape)?;
    println!("interval  alpha_max  binding term");
    for b in &report.intervals {
        let binding = b
            .terms
            .iter()
            .filter_map(|t| t.value.map(|v| (v, t.criterion.label())))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map_or("-", |t| t.1);
        println!("{:>8}  {:>9.4}  {binding}", b.interval + 1, b.alpha_max);
    }
    for note in &report.diagnostics {
        println!("note: {note}");
    }

    let r = r_bounds(&data, shape, &[0.001, 0.0, 0.08, 0.001])?;
    let optimal: Vec<f64> = r.iter().map(|b| b.optimal).collect();
    println!("\noptimal r for alpha = (0.001, 0, 0.08, 0.001): {optimal:.4?}");

    for t in [0.0, 0.5, 0.9] {
        let params = select_parameters(&data, shape, t, &RPolicy::Optimal)?;
        let fif = build_fif(data.clone(), params)?;
        let verdict = verify_shape(&fif, shape, 6)?;
        println!(
            "t = {t}: alpha = {:.4?}, S(6) = {:.6}, monotone on {} points: {}",
            fif.params().alpha,
            fif.eval(6.0)?,
            verdict.points,
            verdict.passed
        );
    }
    Ok(())
}
