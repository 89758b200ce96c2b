//! Acceptance gate: one PASS/FAIL line per criterion, each under its time
//! limit. Exits nonzero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rational_fif::analysis::{
    convergence_order, sampled_sup_norm, AlphaRule, ConvergenceConfig, ConvergenceReport,
    DerivativeNorms, RRule, NORM_GRID,
};
use rational_fif::eval::{sample_attractor_with, SampleOptions};
use rational_fif::{
    alpha_bounds, build_fif, r_bounds, select_parameters, verify_shape, EvalSettings,
    FifParameters, HermiteData, RPolicy, RationalCubicFif, ShapeClass,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn monotone_shape_parameters() -> Check {
    let data = monotone_data();
    let alpha = [0.001, 0.0, 0.08, 0.001];
    let got: Vec<f64> = r_bounds(&data, ShapeClass::MonotoneIncreasing, &alpha)
        .map_err(err)?
        .iter()
        .map(|b| b.optimal)
        .collect();
    let oracle = monotone_r_oracle(&MONO_X, &MONO_Y, &MONO_D, &alpha);
    let reference = [2.9961, 2.7619, 23.8269, 2.9961];
    for i in 0..4 {
        ensure((got[i] - oracle[i]).abs() < 1e-12, || {
            format!("r_{} = {} differs from oracle {}", i + 1, got[i], oracle[i])
        })?;
        ensure((got[i] - reference[i]).abs() < 1e-3, || {
            format!("r_{} = {} differs from reference {}", i + 1, got[i], reference[i])
        })?;
    }
    Ok(format!("r = {got:.4?}"))
}

fn monotone_alpha_bound_report() -> Check {
    let data = monotone_data();
    let report = alpha_bounds(&data, ShapeClass::MonotoneIncreasing).map_err(err)?;
    let max = report.alpha_max();
    for (i, want) in [(0, 0.1818), (2, 0.1538), (3, 0.1818)] {
        ensure((max[i] - want).abs() < 5e-4, || {
            format!("interval {}: bound {} vs {want}", i + 1, max[i])
        })?;
    }
    let b2 = &report.intervals[1];
    let data_only = b2.data_only_max.ok_or("interval 2 has no data-only minimum")?;
    ensure((data_only - 0.0985).abs() < 5e-4, || format!("data-only minimum {data_only}"))?;
    ensure((b2.alpha_max - 0.0909).abs() < 5e-4, || format!("full minimum {}", b2.alpha_max))?;

    // The discrepancy has to be visible in the CLI report.
    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("mono.csv");
    let mut csv = String::from("x,y,d\n");
    for i in 0..5 {
        csv.push_str(&format!("{},{},{}\n", MONO_X[i], MONO_Y[i], MONO_D[i]));
    }
    std::fs::write(&path, csv).map_err(err)?;
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let code = rational_fif::cli::run(
        ["rfif", "bounds", path.to_str().unwrap(), "--shape", "monotone-increasing"],
        &mut out,
        &mut errs,
    );
    let text = String::from_utf8(out).map_err(err)?;
    ensure(code == 0, || format!("bounds exited {code}"))?;
    ensure(
        text.lines().any(|l| l.starts_with("note: interval 2") && l.contains("0.0985")),
        || format!("discrepancy note missing:\n{text}"),
    )?;
    Ok(format!(
        "bounds {:.4}/{:.4}/{:.4}/{:.4}, interval 2 data-only {:.4}",
        max[0], max[1], max[2], max[3], data_only
    ))
}

fn convex_shape_parameters() -> Check {
    let data = convex_data();
    let lib_d = rational_fif::arithmetic_mean_derivatives(&CONVEX_X, &CONVEX_Y).map_err(err)?;
    for (u, v) in lib_d.iter().zip(data.d()) {
        ensure((u - v).abs() < 1e-12, || format!("slope estimates {lib_d:?} vs {:?}", data.d()))?;
    }
    let zeros = [0.0; 4];
    let r: Vec<f64> = r_bounds(&data, ShapeClass::Convex, &zeros)
        .map_err(err)?
        .iter()
        .map(|b| b.optimal)
        .collect();
    ensure((r[0] - 3.0).abs() < 1e-3, || format!("r_1 = {}", r[0]))?;
    ensure((r[3] - 3.0).abs() < 1e-3, || format!("r_4 = {}", r[3]))?;
    ensure((r[2] - 12.8069).abs() < 0.05, || format!("r_3 = {}", r[2]))?;
    let oracle = convex_r_oracle(&CONVEX_X, &CONVEX_Y, data.d(), &zeros);
    ensure((r[1] - oracle[1]).abs() < 1e-9, || format!("r_2 = {} vs oracle {}", r[1], oracle[1]))?;
    ensure((r[1] - 4.6459).abs() < 1e-3, || format!("r_2 = {}", r[1]))?;

    // At the optimal r the classical spline collapses to the
    // quadratic-over-linear form on every interval.
    let fif = build_fif(data.clone(), FifParameters::classical(r.clone())).map_err(err)?;
    for i in 0..4 {
        for t in uniform(CONVEX_X[i], CONVEX_X[i + 1], 101) {
            let want = convex_reduced_form(&CONVEX_X, &CONVEX_Y, data.d(), i, t);
            let got = fif.eval(t).map_err(err)?;
            ensure((got - want).abs() < 1e-10, || {
                format!("reduced form mismatch at x = {t}: {got} vs {want}")
            })?;
        }
    }
    Ok(format!("r = {r:.4?}"))
}

fn random_admissible(rng: &mut StdRng) -> RationalCubicFif {
    loop {
        let data = random_data(rng);
        let n = data.n_intervals();
        let alpha = (0..n)
            .map(|i| rng.gen_range(-0.99..0.99) * data.a(i))
            .collect();
        let r = (0..n).map(|_| rng.gen_range(-0.9..30.0)).collect();
        if let Ok(fif) = build_fif(data, FifParameters::new(alpha, r)) {
            return fif;
        }
    }
}

fn interpolation_exactness() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for m in 0..50 {
        let fif = random_admissible(&mut rng);
        let data = fif.data();
        for k in 0..data.len() {
            let (x, y, d) = (data.x()[k], data.y()[k], data.d()[k]);
            let s = fif.eval(x).map_err(err)?;
            let s1 = fif.eval_derivative(x).map_err(err)?;
            let e = ((s - y).abs() / y.abs().max(1.0)).max((s1 - d).abs() / d.abs().max(1.0));
            worst = worst.max(e);
            ensure(e <= 1e-12, || {
                format!("model {m}, knot {k}: S = {s} vs {y}, S' = {s1} vs {d}")
            })?;
        }
    }
    Ok(format!("50 models, worst knot error {worst:.1e}"))
}

fn classical_reduction() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    let data = random_data(&mut rng);
    let fif = build_fif(data.clone(), FifParameters::cubic_hermite(data.n_intervals())).map_err(err)?;
    let mut worst: f64 = 0.0;
    for t in uniform(data.x_first(), data.x_last(), 1000) {
        let want = hermite_cubic(data.x(), data.y(), data.d(), t);
        worst = worst.max((fif.eval(t).map_err(err)? - want).abs());
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn tension_limit() -> Check {
    let data = monotone_data();
    let fif = build_fif(data.clone(), FifParameters::classical(vec![1e6; 4])).map_err(err)?;
    let mut worst: f64 = 0.0;
    for t in uniform(data.x_first(), data.x_last(), 1000) {
        let want = linear_interp(data.x(), data.y(), t);
        worst = worst.max((fif.eval(t).map_err(err)? - want).abs());
    }
    ensure(worst <= 1e-4, || format!("sup distance {worst:e}"))?;
    Ok(format!("sup distance to the polyline {worst:.2e}"))
}

const DIALS: [f64; 3] = [0.0, 0.3, 0.9];

/// Fits every dataset at every dial setting and verifies `verify_as`.
fn soundness(
    datasets: &[(HermiteData, ShapeClass)],
    verify_as: Option<ShapeClass>,
) -> Result<usize, String> {
    let mut fits = 0;
    for (k, (data, shape)) in datasets.iter().enumerate() {
        for t in DIALS {
            let params =
                select_parameters(data, *shape, t, &RPolicy::Optimal).map_err(|e| format!("dataset {k}, t = {t}: {e}"))?;
            let fif = build_fif(data.clone(), params).map_err(err)?;
            let target = verify_as.unwrap_or(*shape);
            let verdict = verify_shape(&fif, target, 6).map_err(err)?;
            ensure(verdict.passed, || {
                format!("dataset {k}, t = {t}: {target} failed, witness {:?}", verdict.witness)
            })?;
            fits += 1;
        }
    }
    Ok(fits)
}

fn monotone_soundness() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let sets: Vec<_> = (0..100)
        .map(|k| {
            let data = random_increasing(&mut rng);
            if k % 2 == 0 {
                (data, ShapeClass::MonotoneIncreasing)
            } else {
                (data.negated(), ShapeClass::MonotoneDecreasing)
            }
        })
        .collect();
    let fits = soundness(&sets, None)?;
    Ok(format!("{fits} fits verified at depth 6"))
}

fn convexity_soundness() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let sets: Vec<_> = (0..100)
        .map(|_| (random_convex(&mut rng, false), ShapeClass::Convex))
        .collect();
    let fits = soundness(&sets, None)?;
    Ok(format!("{fits} fits verified at depth 6"))
}

fn convex_monotone_implication() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    let sets: Vec<_> = (0..50)
        .map(|_| (random_convex(&mut rng, true), ShapeClass::Convex))
        .collect();
    let fits = soundness(&sets, Some(ShapeClass::MonotoneIncreasing))?;
    Ok(format!("{fits} convex fits pass the monotone check"))
}

struct Regime {
    label: &'static str,
    alpha: AlphaRule,
    r: RRule,
    min_order: f64,
}

const REGIMES: [Regime; 3] = [
    Regime {
        label: "alpha = a^4/2, r = 3",
        alpha: AlphaRule::HalfFourth,
        r: RRule::Fixed(3.0),
        min_order: 3.7,
    },
    Regime {
        label: "alpha = a^3/2, r = 3 + h",
        alpha: AlphaRule::HalfCube,
        r: RRule::ThreePlusH,
        min_order: 2.7,
    },
    Regime {
        label: "alpha = a^2/2, r = 2",
        alpha: AlphaRule::HalfSquare,
        r: RRule::Fixed(2.0),
        min_order: 1.7,
    },
];

fn convergence_reports() -> &'static Result<Vec<ConvergenceReport>, String> {
    static REPORTS: OnceLock<Result<Vec<ConvergenceReport>, String>> = OnceLock::new();
    REPORTS.get_or_init(|| {
        let norms = DerivativeNorms {
            f2: sampled_sup_norm(|x| -x.sin(), 0.0, 1.0, NORM_GRID),
            f3: sampled_sup_norm(|x| -x.cos(), 0.0, 1.0, NORM_GRID),
            f4: sampled_sup_norm(f64::sin, 0.0, 1.0, NORM_GRID),
        };
        REGIMES
            .iter()
            .map(|g| {
                let mut cfg = ConvergenceConfig::new(0.0, 1.0, vec![9, 17, 33, 65], g.alpha, g.r);
                cfg.norms = Some(norms);
                convergence_order(f64::sin, f64::cos, &cfg).map_err(err)
            })
            .collect()
    })
}

fn convergence() -> Check {
    let reports = convergence_reports().as_ref().map_err(Clone::clone)?;
    let mut parts = Vec::new();
    for (g, rep) in REGIMES.iter().zip(reports) {
        let order = rep.order.ok_or_else(|| format!("{}: no order (exact)", g.label))?;
        ensure(order >= g.min_order, || format!("{}: order {order:.3} < {}", g.label, g.min_order))?;
        parts.push(format!("{:.2}", order));
    }
    Ok(format!("orders {}", parts.join(" / ")))
}

fn functional_residual() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let mut models: Vec<RationalCubicFif> = (0..10).map(|_| random_admissible(&mut rng)).collect();
    for (shape, data) in [
        (ShapeClass::MonotoneIncreasing, random_increasing(&mut rng)),
        (ShapeClass::Convex, random_convex(&mut rng, false)),
        (ShapeClass::MonotoneIncreasing, monotone_data()),
        (ShapeClass::Convex, convex_data()),
    ] {
        let params = select_parameters(&data, shape, 0.9, &RPolicy::Optimal).map_err(err)?;
        models.push(build_fif(data, params).map_err(err)?);
    }
    let settings = EvalSettings::with_tolerance(1e-13);
    let opts = SampleOptions {
        with_slopes: false,
        ..SampleOptions::default()
    };
    let (mut worst, mut checked) = (0.0f64, 0usize);
    for (m, fif) in models.iter().enumerate() {
        let depth = if fif.n_intervals() > 5 { 2 } else { 3 };
        let sample = sample_attractor_with(fif, depth, &opts).map_err(err)?;
        for (&x, &s) in sample.x.iter().zip(&sample.s) {
            for i in 0..fif.n_intervals() {
                let mapped = rational_fif::eval_at(fif, fif.map_x(i, x), &settings).map_err(err)?;
                let res = fif.functional_residual(i, x, s, mapped.value).abs();
                worst = worst.max(res);
                checked += 1;
                ensure(res <= 1e-10, || format!("model {m}, map {i}, x = {x}: residual {res:e}"))?;
            }
        }
    }
    Ok(format!("{checked} map images over {} models, worst {worst:.1e}", models.len()))
}

fn error_bound_validity() -> Check {
    let reports = convergence_reports().as_ref().map_err(Clone::clone)?;
    let mut tightest = f64::INFINITY;
    for (g, rep) in REGIMES.iter().zip(reports) {
        for row in &rep.rows {
            let bound = row.bound.as_ref().ok_or("no bound computed")?.total;
            ensure(row.max_error <= bound, || {
                format!("{}, N = {}: error {:e} > bound {:e}", g.label, row.knots, row.max_error, bound)
            })?;
            tightest = tightest.min(bound / row.max_error);
        }
    }
    Ok(format!("12 meshes, smallest bound/error ratio {tightest:.2}"))
}

type Criterion = (&'static str, u64, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("optimal monotone shape parameters", 1, monotone_shape_parameters),
        ("monotone scaling-factor bounds", 1, monotone_alpha_bound_report),
        ("optimal convex shape parameters", 1, convex_shape_parameters),
        ("interpolation exactness", 5, interpolation_exactness),
        ("classical reduction", 1, classical_reduction),
        ("tension limit", 1, tension_limit),
        ("monotonicity soundness", 60, monotone_soundness),
        ("convexity soundness", 60, convexity_soundness),
        ("convex implies monotone", 30, convex_monotone_implication),
        ("convergence orders", 60, convergence),
        ("functional-equation residual", 10, functional_residual),
        ("error-bound validity", 60, error_bound_validity),
    ];
    let mut failures = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let late = elapsed > Duration::from_secs(*limit);
        let (status, detail) = match (&result, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {limit}s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "{status} {:>2}. {name}: {detail} [{:.2}s / {limit}s]",
            k + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
