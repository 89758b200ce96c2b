//! Co-monotone interpolation of data that falls, rises and falls again:
//! segments are split at the turning knots, the two-knot segment gets an
//! inserted node, and the fits are pasted into one C¹ curve.

use rational_fif::piecewise::{
    assemble_piecewise, plan_segments, segment_data, InsertedNode, SegmentFit,
};
use rational_fif::{FifParameters, RPolicy};

fn main() -> rational_fif::Result<()> {
    let x = [0.0, 1.5, 4.0, 6.0, 8.0, 10.0];
    let y = [10.0, 5.0, 3.5, 7.1, 3.0, 0.0];

    let mut plan = plan_segments(&x, &y, None)?;
    for s in &plan.segments {
        println!("[{}, {}] {:?}, inserted {:?}", x[s.start], x[s.end], s.kind, s.inserted);
    }
    println!("zero slopes at x = {:?}", plan.transitions.iter().map(|&j| x[j]).collect::<Vec<_>>());

    // Automatic: estimated slopes, default node, parameters from the bounds.
    let data = segment_data(&plan, &x, &y, None)?;
    let auto = vec![SegmentFit::Auto { t: 0.5, policy: RPolicy::Optimal }; plan.segments.len()];
    let model = assemble_piecewise(&plan, data, &auto)?;
    let ok = model.verify_segments(6)?.into_iter().flatten().all(|v| v.passed);
    println!("automatic fit co-monotone: {ok}");

    // Hand-picked node, slopes and parameters.
    plan.set_inserted_node(1, InsertedNode { x: 5.0, y: 6.0, d: Some(1.8) })?;
    let d = [-4.35, -2.31, 0.0, 0.0, -1.77, -1.2];
    let data = segment_data(&plan, &x, &y, Some(&d))?;
    let fits = [
        SegmentFit::Explicit(FifParameters::new(vec![0.2, 0.2], vec![2.0, 12.0])),
        SegmentFit::Explicit(FifParameters::new(vec![0.3, 0.3], vec![2.0, 91.0])),
        SegmentFit::Explicit(FifParameters::new(vec![0.4, 0.4], vec![2.0, 26.0])),
    ];
    let model = assemble_piecewise(&plan, data, &fits)?;
    let ok = model.verify_segments(6)?.into_iter().flatten().all(|v| v.passed);
    println!("hand-picked fit co-monotone: {ok}");
    for t in [1.0, 4.0, 5.0, 7.0, 9.5] {
        println!("  S({t}) = {:.6}  S'({t}) = {:.6}", model.eval(t)?, model.eval_derivative(t)?);
    }
    Ok(())
}
