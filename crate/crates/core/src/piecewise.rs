//! Mixed-shape interpolation by pasting fits on segments of uniform shape.
//!
//! Monotone runs are detected from the data; other shapes come from user
//! annotations. Where a segment is constant, or where the direction of
//! monotonicity flips, the joint slope is forced to zero. A segment with a
//! single interval gets one inserted node so that its IFS has at least two
//! maps. Adjacent fits share the joint's Hermite data, which makes the
//! pasted curve C¹.

use serde::Serialize;

use crate::data::HermiteData;
use crate::error::{Error, Result};
use crate::estimate::arithmetic_mean_derivatives;
use crate::eval::{sample_attractor_with, CurveSample, SampleOptions};
use crate::fif::{build_fif, FifParameters, RationalCubicFif};
use crate::shape::{check_shape_parameters, select_parameters, verify_shape, RPolicy, ShapeClass, ShapeVerdict};

/// User-declared shape on `[from, to]`; both ends must be knots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapeAnnotation {
    pub from: f64,
    pub to: f64,
    pub shape: ShapeClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "shape", rename_all = "snake_case")]
pub enum SegmentKind {
    /// All values equal; interpolated by the constant itself.
    Constant,
    Shaped(ShapeClass),
}

/// Extra node placed inside a single-interval segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InsertedNode {
    pub x: f64,
    pub y: f64,
    /// Slope at the node; `None` uses the chord slope of the segment.
    pub d: Option<f64>,
}

/// How inserted nodes are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[non_exhaustive]
pub enum InsertionPolicy {
    /// Midpoint abscissa, value on the chord.
    #[default]
    LinearMidpoint,
}

impl InsertionPolicy {
    pub fn node(self, xl: f64, yl: f64, xr: f64, yr: f64) -> InsertedNode {
        match self {
            InsertionPolicy::LinearMidpoint => InsertedNode {
                x: 0.5 * (xl + xr),
                y: 0.5 * (yl + yr),
                d: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    /// Knot indices (0-based, inclusive) of the segment ends.
    pub start: usize,
    pub end: usize,
    pub kind: SegmentKind,
    pub inserted: Option<InsertedNode>,
}

impl Segment {
    fn direction(&self) -> Option<i8> {
        match self.kind {
            SegmentKind::Shaped(ShapeClass::MonotoneIncreasing)
            | SegmentKind::Shaped(ShapeClass::ConvexMonotoneIncreasing) => Some(1),
            SegmentKind::Shaped(ShapeClass::MonotoneDecreasing) => Some(-1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentPlan {
    pub segments: Vec<Segment>,
    /// Knot indices whose slope is forced to zero.
    pub transitions: Vec<usize>,
}

impl SegmentPlan {
    /// Replaces the inserted node of segment `k`.
    pub fn set_inserted_node(&mut self, k: usize, node: InsertedNode) -> Result<()> {
        let seg = self
            .segments
            .get_mut(k)
            .ok_or_else(|| Error::InvalidArgument(format!("no segment {k}")))?;
        if seg.inserted.is_none() {
            return Err(Error::InvalidArgument(format!(
                "segment {} spans more than one interval and takes no inserted node",
                k + 1
            )));
        }
        seg.inserted = Some(node);
        Ok(())
    }

    /// Sets `d` to zero at every transition knot.
    pub fn force_transitions(&self, d: &mut [f64]) {
        for &j in &self.transitions {
            d[j] = 0.0;
        }
    }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Splits the data into segments of uniform shape. Without annotations,
/// maximal runs of equal chord-slope sign become increasing, decreasing or
/// constant segments.
pub fn plan_segments(
    x: &[f64],
    y: &[f64],
    annotations: Option<&[ShapeAnnotation]>,
) -> Result<SegmentPlan> {
    plan_segments_with(x, y, annotations, InsertionPolicy::default())
}

pub fn plan_segments_with(
    x: &[f64],
    y: &[f64],
    annotations: Option<&[ShapeAnnotation]>,
    policy: InsertionPolicy,
) -> Result<SegmentPlan> {
    // Validates lengths, finiteness and ordering.
    let probe = HermiteData::new(x.to_vec(), y.to_vec(), vec![0.0; x.len()])?;
    let delta = probe.delta();

    let flat = |s: usize, e: usize| delta[s..e].iter().all(|&v| v == 0.0);
    let mut ranges: Vec<(usize, usize, SegmentKind)> = Vec::new();
    match annotations {
        None => {
            let mut start = 0;
            for i in 1..=delta.len() {
                if i == delta.len() || sign(delta[i]) != sign(delta[start]) {
                    let kind = match sign(delta[start]) {
                        0 => SegmentKind::Constant,
                        1 => SegmentKind::Shaped(ShapeClass::MonotoneIncreasing),
                        _ => SegmentKind::Shaped(ShapeClass::MonotoneDecreasing),
                    };
                    ranges.push((start, i, kind));
                    start = i;
                }
            }
        }
        Some(list) => {
            let mut expect = 0usize;
            for a in list {
                let s = probe.knot_index(a.from);
                let e = probe.knot_index(a.to);
                let (s, e) = match (s, e) {
                    (Some(s), Some(e)) if e > s => (s, e),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "annotation [{}, {}] must run between two knots",
                            a.from, a.to
                        )))
                    }
                };
                if s != expect {
                    return Err(Error::InvalidArgument(format!(
                        "annotation [{}, {}] does not continue from x = {}",
                        a.from, a.to, x[expect]
                    )));
                }
                let kind = if flat(s, e) {
                    SegmentKind::Constant
                } else {
                    SegmentKind::Shaped(a.shape)
                };
                ranges.push((s, e, kind));
                expect = e;
            }
            if expect != x.len() - 1 {
                return Err(Error::InvalidArgument(format!(
                    "annotations stop at x = {} before the last knot",
                    x[expect]
                )));
            }
        }
    }

    let segments: Vec<Segment> = ranges
        .into_iter()
        .map(|(start, end, kind)| {
            let inserted = (end - start == 1 && kind != SegmentKind::Constant)
                .then(|| policy.node(x[start], y[start], x[end], y[end]));
            Segment {
                start,
                end,
                kind,
                inserted,
            }
        })
        .collect();

    let mut transitions: Vec<usize> = segments
        .windows(2)
        .filter(|w| {
            let constant = w[0].kind == SegmentKind::Constant || w[1].kind == SegmentKind::Constant;
            let flip = matches!((w[0].direction(), w[1].direction()), (Some(a), Some(b)) if a != b);
            constant || flip
        })
        .map(|w| w[0].end)
        .collect();
    // Constant segments at either end of the data need zero slopes there too.
    let (first, last) = (&segments[0], &segments[segments.len() - 1]);
    if first.kind == SegmentKind::Constant {
        transitions.insert(0, first.start);
    }
    if last.kind == SegmentKind::Constant {
        transitions.push(last.end);
    }
    transitions.dedup();
    Ok(SegmentPlan {
        segments,
        transitions,
    })
}

/// Per-segment Hermite data. Missing derivatives are estimated on the whole
/// data set (or set to the chord slope when there are only two knots); in
/// both cases transition slopes are then forced to zero. Supplied
/// derivatives must already vanish at the transitions.
pub fn segment_data(
    plan: &SegmentPlan,
    x: &[f64],
    y: &[f64],
    d: Option<&[f64]>,
) -> Result<Vec<HermiteData>> {
    let d = match d {
        Some(d) => {
            if d.len() != x.len() {
                return Err(Error::LengthMismatch {
                    what: "d",
                    expected: x.len(),
                    got: d.len(),
                });
            }
            if let Some(&j) = plan.transitions.iter().find(|&&j| d[j] != 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "d_{} = {} must be 0 at the transition x = {}",
                    j + 1,
                    d[j],
                    x[j]
                )));
            }
            d.to_vec()
        }
        None => {
            let mut d = if x.len() >= 3 {
                arithmetic_mean_derivatives(x, y)?
            } else {
                let slope = (y[1] - y[0]) / (x[1] - x[0]);
                vec![slope; x.len()]
            };
            plan.force_transitions(&mut d);
            d
        }
    };

    plan.segments
        .iter()
        .map(|seg| {
            let (s, e) = (seg.start, seg.end);
            match seg.inserted {
                Some(node) => {
                    let chord = (y[e] - y[s]) / (x[e] - x[s]);
                    HermiteData::new(
                        vec![x[s], node.x, x[e]],
                        vec![y[s], node.y, y[e]],
                        vec![d[s], node.d.unwrap_or(chord), d[e]],
                    )
                }
                None => HermiteData::new(x[s..=e].to_vec(), y[s..=e].to_vec(), d[s..=e].to_vec()),
            }
        })
        .collect()
}

/// Parameters for one segment.
#[derive(Debug, Clone, PartialEq)]
pub enum SegmentFit {
    /// Checked against the segment's shape conditions.
    Explicit(FifParameters),
    Auto { t: f64, policy: RPolicy },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SegmentModel {
    Constant { x0: f64, x1: f64, y: f64 },
    Fif { shape: ShapeClass, fif: RationalCubicFif },
}

impl SegmentModel {
    pub fn x_range(&self) -> (f64, f64) {
        match self {
            SegmentModel::Constant { x0, x1, .. } => (*x0, *x1),
            SegmentModel::Fif { fif, .. } => (fif.data().x_first(), fif.data().x_last()),
        }
    }
}

/// A C¹ interpolant pasted from per-segment fits.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFif {
    pub segments: Vec<SegmentModel>,
}

/// Pastes per-segment fits; adjacent segments must agree on the joint's
/// `(x, y, d)`.
pub fn assemble_piecewise(
    plan: &SegmentPlan,
    data: Vec<HermiteData>,
    fits: &[SegmentFit],
) -> Result<PiecewiseFif> {
    if data.len() != plan.segments.len() {
        return Err(Error::LengthMismatch {
            what: "segment data",
            expected: plan.segments.len(),
            got: data.len(),
        });
    }
    if fits.len() != plan.segments.len() {
        return Err(Error::LengthMismatch {
            what: "segment fits",
            expected: plan.segments.len(),
            got: fits.len(),
        });
    }
    for w in data.windows(2) {
        let (l, r) = (&w[0], &w[1]);
        let x = l.x_last();
        if x != r.x_first() {
            return Err(Error::JointMismatch { x, what: "knot" });
        }
        if l.y_last() != r.y_first() {
            return Err(Error::JointMismatch { x, what: "value" });
        }
        if l.d_last() != r.d_first() {
            return Err(Error::JointMismatch { x, what: "derivative" });
        }
    }

    let segments = plan
        .segments
        .iter()
        .zip(data)
        .zip(fits)
        .map(|((seg, data), fit)| match seg.kind {
            SegmentKind::Constant => {
                if data.d().iter().any(|&v| v != 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "constant segment on [{}, {}] needs zero slopes",
                        data.x_first(),
                        data.x_last()
                    )));
                }
                Ok(SegmentModel::Constant {
                    x0: data.x_first(),
                    x1: data.x_last(),
                    y: data.y_first(),
                })
            }
            SegmentKind::Shaped(shape) => {
                let params = match fit {
                    SegmentFit::Explicit(p) => {
                        check_shape_parameters(&data, p, shape)?;
                        p.clone()
                    }
                    SegmentFit::Auto { t, policy } => select_parameters(&data, shape, *t, policy)?,
                };
                Ok(SegmentModel::Fif {
                    shape,
                    fif: build_fif(data, params)?,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PiecewiseFif { segments })
}

impl PiecewiseFif {
    pub fn x_first(&self) -> f64 {
        self.segments[0].x_range().0
    }

    pub fn x_last(&self) -> f64 {
        self.segments[self.segments.len() - 1].x_range().1
    }

    fn locate(&self, x: f64) -> Result<&SegmentModel> {
        let (lo, hi) = (self.x_first(), self.x_last());
        if !(x >= lo && x <= hi) {
            return Err(Error::OutsideDomain { x, lo, hi });
        }
        let k = self.segments.partition_point(|s| s.x_range().1 < x);
        Ok(&self.segments[k.min(self.segments.len() - 1)])
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self.locate(x)? {
            SegmentModel::Constant { y, .. } => Ok(*y),
            SegmentModel::Fif { fif, .. } => fif.eval(x),
        }
    }

    pub fn eval_derivative(&self, x: f64) -> Result<f64> {
        match self.locate(x)? {
            SegmentModel::Constant { .. } => Ok(0.0),
            SegmentModel::Fif { fif, .. } => fif.eval_derivative(x),
        }
    }

    /// Concatenated attractor samples of the segments (constant segments
    /// contribute their end points).
    pub fn sample(&self, depth: usize, with_slopes: bool) -> Result<CurveSample> {
        let opts = SampleOptions {
            with_slopes,
            ..SampleOptions::default()
        };
        let mut out = CurveSample {
            x: Vec::new(),
            s: Vec::new(),
            s1: with_slopes.then(Vec::new),
            depth,
            exact: true,
        };
        for seg in &self.segments {
            let part = match seg {
                SegmentModel::Constant { x0, x1, y } => CurveSample {
                    x: vec![*x0, *x1],
                    s: vec![*y, *y],
                    s1: with_slopes.then(|| vec![0.0, 0.0]),
                    depth,
                    exact: true,
                },
                SegmentModel::Fif { fif, .. } => sample_attractor_with(fif, depth, &opts)?,
            };
            let skip = usize::from(out.x.last() == part.x.first());
            out.x.extend_from_slice(&part.x[skip..]);
            out.s.extend_from_slice(&part.s[skip..]);
            if let (Some(dst), Some(src)) = (out.s1.as_mut(), part.s1.as_ref()) {
                dst.extend_from_slice(&src[skip..]);
            }
        }
        Ok(out)
    }

    /// Shape verdict of every fitted segment (`None` for constant ones).
    pub fn verify_segments(&self, depth: usize) -> Result<Vec<Option<ShapeVerdict>>> {
        self.segments
            .iter()
            .map(|seg| match seg {
                SegmentModel::Constant { .. } => Ok(None),
                SegmentModel::Fif { shape, fif } => verify_shape(fif, *shape, depth).map(Some),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X2: [f64; 6] = [0.0, 1.5, 4.0, 6.0, 8.0, 10.0];
    const Y2: [f64; 6] = [10.0, 5.0, 3.5, 7.1, 3.0, 0.0];

    #[test]
    fn co_monotone_plan() {
        let plan = plan_segments(&X2, &Y2, None).unwrap();
        let kinds: Vec<_> = plan.segments.iter().map(|s| (s.start, s.end, s.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                (0, 2, SegmentKind::Shaped(ShapeClass::MonotoneDecreasing)),
                (2, 3, SegmentKind::Shaped(ShapeClass::MonotoneIncreasing)),
                (3, 5, SegmentKind::Shaped(ShapeClass::MonotoneDecreasing)),
            ]
        );
        assert_eq!(plan.transitions, vec![2, 3]);
        assert_eq!(
            plan.segments[1].inserted,
            Some(InsertedNode { x: 5.0, y: 5.3, d: None })
        );
        assert!(plan.segments[0].inserted.is_none());
    }

    #[test]
    fn increasing_data_is_one_segment() {
        let plan = plan_segments(&[0.0, 1.0, 2.0, 4.0], &[0.0, 1.0, 1.5, 3.0], None).unwrap();
        assert_eq!(plan.segments.len(), 1);
        assert!(plan.transitions.is_empty());
        assert!(plan.segments[0].inserted.is_none());
    }

    #[test]
    fn annotated_plan() {
        let x = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];
        let y = [1.0, 0.2, 1.0, 1.3, 1.8, 1.8, 1.8, 1.5, 0.0];
        let ann = [
            ShapeAnnotation { from: 0.0, to: 1.0, shape: ShapeClass::Positive },
            ShapeAnnotation { from: 1.0, to: 2.0, shape: ShapeClass::MonotoneIncreasing },
            ShapeAnnotation { from: 2.0, to: 3.0, shape: ShapeClass::MonotoneIncreasing },
            ShapeAnnotation { from: 3.0, to: 4.0, shape: ShapeClass::Concave },
        ];
        let plan = plan_segments(&x, &y, Some(&ann)).unwrap();
        let kinds: Vec<_> = plan.segments.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                SegmentKind::Shaped(ShapeClass::Positive),
                SegmentKind::Shaped(ShapeClass::MonotoneIncreasing),
                SegmentKind::Constant,
                SegmentKind::Shaped(ShapeClass::Concave),
            ]
        );
        assert_eq!(plan.transitions, vec![4, 6]);

        let gap = [ShapeAnnotation { from: 0.0, to: 1.0, shape: ShapeClass::Positive }];
        assert!(plan_segments(&x, &y, Some(&gap)).is_err());
    }

    fn hand_picked_example() -> (SegmentPlan, Vec<HermiteData>) {
        let mut plan = plan_segments(&X2, &Y2, None).unwrap();
        plan.set_inserted_node(1, InsertedNode { x: 5.0, y: 6.0, d: Some(1.8) }).unwrap();
        let d = [-4.35, -2.31, 0.0, 0.0, -1.77, -1.2];
        let data = segment_data(&plan, &X2, &Y2, Some(&d)).unwrap();
        (plan, data)
    }

    #[test]
    fn hand_picked_parameters_are_co_monotone() {
        let (plan, data) = hand_picked_example();
        let fits = [
            SegmentFit::Explicit(FifParameters::new(vec![0.2, 0.2], vec![2.0, 12.0])),
            SegmentFit::Explicit(FifParameters::new(vec![0.3, 0.3], vec![2.0, 91.0])),
            SegmentFit::Explicit(FifParameters::new(vec![0.4, 0.4], vec![2.0, 26.0])),
        ];
        let model = assemble_piecewise(&plan, data, &fits).unwrap();
        for v in model.verify_segments(6).unwrap() {
            assert!(v.unwrap().passed);
        }
        for &j in &[4.0, 6.0] {
            assert_eq!(model.eval(j).unwrap(), if j == 4.0 { 3.5 } else { 7.1 });
            assert_eq!(model.eval_derivative(j).unwrap(), 0.0);
        }
    }

    #[test]
    fn joint_mismatch_detected() {
        let (plan, mut data) = hand_picked_example();
        let d1 = data[1].clone();
        data[1] = HermiteData::new(d1.x().to_vec(), d1.y().to_vec(), vec![0.1, 1.8, 0.0]).unwrap();
        let fits = vec![SegmentFit::Auto { t: 0.5, policy: RPolicy::Optimal }; 3];
        assert!(matches!(
            assemble_piecewise(&plan, data, &fits),
            Err(Error::JointMismatch { what: "derivative", .. })
        ));
    }

    #[test]
    fn collinear_segments_give_the_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [0.0, 2.0, 4.0, 6.0];
        let ann = [
            ShapeAnnotation { from: 0.0, to: 2.0, shape: ShapeClass::MonotoneIncreasing },
            ShapeAnnotation { from: 2.0, to: 3.0, shape: ShapeClass::Convex },
        ];
        let plan = plan_segments(&x, &y, Some(&ann)).unwrap();
        let data = segment_data(&plan, &x, &y, Some(&[2.0; 4])).unwrap();
        let fits = vec![SegmentFit::Auto { t: 0.5, policy: RPolicy::Optimal }; 2];
        let model = assemble_piecewise(&plan, data, &fits).unwrap();
        for k in 0..=30 {
            let t = k as f64 * 0.1;
            assert!((model.eval(t).unwrap() - 2.0 * t).abs() < 1e-12);
        }
    }

    #[test]
    fn auto_fit_with_estimated_slopes() {
        let plan = plan_segments(&X2, &Y2, None).unwrap();
        let data = segment_data(&plan, &X2, &Y2, None).unwrap();
        assert_eq!(data[1].d()[0], 0.0);
        assert!((data[1].d()[1] - 1.8).abs() < 1e-15);
        let fits = vec![SegmentFit::Auto { t: 0.5, policy: RPolicy::Optimal }; 3];
        let model = assemble_piecewise(&plan, data, &fits).unwrap();
        assert!(model.verify_segments(5).unwrap().into_iter().all(|v| v.unwrap().passed));
        let s = model.sample(3, true).unwrap();
        assert!(s.x.windows(2).all(|w| w[1] > w[0]));
    }
}
