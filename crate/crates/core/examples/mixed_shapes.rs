//! Mixed shapes on one data set: positive, increasing, constant and concave
//! pieces from user annotations, pasted into a C¹ curve. Hand-picked
//! parameters are checked against each segment's sufficient conditions.

use rational_fif::piecewise::{
    assemble_piecewise, plan_segments, segment_data, SegmentFit, SegmentKind, ShapeAnnotation,
};
use rational_fif::{check_shape_parameters, FifParameters, RPolicy, ShapeClass};

fn main() -> rational_fif::Result<()> {
    let x = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];
    let y = [1.0, 0.2, 1.0, 1.3, 1.8, 1.8, 1.8, 1.5, 0.0];
    let d = [-3.2, 0.0, 1.1, 0.8, 0.0, 0.0, 0.0, -1.8, -4.2];
    let ann = [
        ShapeAnnotation { from: 0.0, to: 1.0, shape: ShapeClass::Positive },
        ShapeAnnotation { from: 1.0, to: 2.0, shape: ShapeClass::MonotoneIncreasing },
        ShapeAnnotation { from: 2.0, to: 3.0, shape: ShapeClass::MonotoneIncreasing },
        ShapeAnnotation { from: 3.0, to: 4.0, shape: ShapeClass::Concave },
    ];
    let plan = plan_segments(&x, &y, Some(&ann))?;
    let data = segment_data(&plan, &x, &y, Some(&d))?;

    let picked = [
        Some(FifParameters::new(vec![0.15, 0.15], vec![1.5, 0.5])),
        Some(FifParameters::new(vec![0.3, 0.3], vec![8.0, 1.0])),
        None,
        Some(FifParameters::new(vec![0.15, 0.2], vec![9.0, 4.0])),
    ];
    for ((seg, sd), p) in plan.segments.iter().zip(&data).zip(&picked) {
        let span = format!("[{}, {}]", x[seg.start], x[seg.end]);
        match (seg.kind, p) {
            (SegmentKind::Shaped(shape), Some(p)) => match check_shape_parameters(sd, p, shape) {
                Ok(()) => println!("{span} {shape}: hand-picked parameters admissible"),
                Err(e) => println!("{span} {shape}: {e}"),
            },
            _ => println!("{span} constant"),
        }
    }

    let fits = vec![SegmentFit::Auto { t: 0.5, policy: RPolicy::Optimal }; plan.segments.len()];
    let model = assemble_piecewise(&plan, data, &fits)?;
    for (seg, v) in plan.segments.iter().zip(model.verify_segments(6)?) {
        match v {
            Some(v) => println!("auto fit on [{}, {}]: {} {}", x[seg.start], x[seg.end], v.shape, v.passed),
            None => println!("auto fit on [{}, {}]: constant", x[seg.start], x[seg.end]),
        }
    }
    Ok(())
}
