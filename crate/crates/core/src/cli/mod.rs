//! Command-line front end. [`run`] takes the argument list and output
//! streams, so the whole CLI is testable in-process.
//!
//! Exit codes: 0 success, 2 validation failure, 3 infeasible shape
//! constraints, 4 I/O failure.

pub mod io;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    convergence_order, sampled_sup_norm, AlphaRule, ConvergenceConfig, DerivativeNorms, RRule,
    NORM_GRID,
};
use crate::data::HermiteData;
use crate::error::Error;
use crate::eval::{eval_at, eval_derivative_at, sample_attractor_with, EvalSettings, SampleOptions};
use crate::fif::{build_fif, validate_parameters, FifParameters, RationalCubicFif};
use crate::shape::{
    alpha_bounds, check_shape_parameters, r_bounds, select_parameters, verify_shape, BoundsReport,
    RPolicy, ShapeClass,
};
use io::{fmt_list, fmt_num, parse_dataset, parse_sample, InputError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "rfif",
    version,
    about = "Shape-preserving rational cubic fractal interpolation"
)]
pub struct Cli {
    /// Print reports, and errors on stderr, as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible scaling-factor and shape-parameter ranges for a shape.
    Bounds {
        /// CSV (x,y[,d]) or JSON dataset.
        input: PathBuf,
        #[arg(long)]
        shape: ShapeClass,
    },
    /// Fit a model and report its parameters and coefficients.
    Fit(FitArgs),
    /// Exact attractor points as CSV (x,S,S1,depth).
    Sample {
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit the S1 column.
        #[arg(long)]
        no_slopes: bool,
    },
    /// Value (or slope) at one abscissa with a certified error bound.
    Eval {
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Evaluate S' instead of S.
        #[arg(long)]
        derivative: bool,
    },
    /// Verify the fitted model's shape on an attractor sample.
    Check {
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Shape to verify; defaults to --shape.
        #[arg(long)]
        verify: Option<ShapeClass>,
    },
    /// Empirical convergence order against a known generator.
    Converge(ConvergeArgs),
    /// Arithmetic-mean slope estimates as CSV (x,y,d).
    EstimateDerivs {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG plot of an attractor sample.
    Plot {
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 500)]
        height: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Treat the input as a CSV written by `sample`.
        #[arg(long)]
        from_sample: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// CSV (x,y[,d]) or JSON dataset.
    pub input: PathBuf,
    #[arg(long, default_value = "unconstrained")]
    pub shape: ShapeClass,
    /// Fractality dial in [0, 1): alpha_i = t * (bound of interval i).
    #[arg(long = "t", default_value_t = 0.5)]
    pub t: f64,
    /// Explicit scaling factors, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,
    /// Explicit shape parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub r: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    /// sin, cos, exp or linear.
    #[arg(long, default_value = "sin")]
    pub generator: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub b: f64,
    /// Knot counts; each mesh halves the previous one.
    #[arg(long, value_delimiter = ',', default_value = "9,17,33,65")]
    pub knots: Vec<usize>,
    /// zero, a2, a3 or a4 (alpha_i = a_i^k / 2).
    #[arg(long, default_value = "a4")]
    pub alpha_rule: String,
    /// A number (fixed r), 3+h or 3+h2.
    #[arg(long, default_value = "3")]
    pub r_rule: String,
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
}

/// A failed command: exit code, error kind and message.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            code,
            kind,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::NecessaryCondition { .. } => (EXIT_INFEASIBLE, "necessary_condition"),
            Error::Infeasible { .. } => (EXIT_INFEASIBLE, "infeasible"),
            Error::ShapeConstraints { .. } => (EXIT_INFEASIBLE, "shape_constraints"),
            Error::InvalidParameters(_) => (EXIT_VALIDATION, "invalid_parameters"),
            _ => (EXIT_VALIDATION, "invalid_input"),
        };
        Self::new(code, kind, e.to_string())
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        if e.io {
            Self::new(EXIT_IO, "io", e.message)
        } else {
            Self::new(EXIT_VALIDATION, "parse", e.message)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(EXIT_IO, "io", e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_err = e.use_stderr();
            let text = e.render().to_string();
            let _ = if to_err {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return if to_err { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let json = cli.json;
    match execute(cli.command, json, out) {
        Ok(code) => code,
        Err(e) => {
            if json {
                let body = json!({"error": e.kind, "message": e.message, "exit_code": e.code});
                let _ = writeln!(err, "{body}");
            } else {
                let _ = writeln!(err, "error: {}", e.message);
            }
            e.code
        }
    }
}

fn execute(command: Command, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Bounds { input, shape } => cmd_bounds(&input, shape, json, out),
        Command::Fit(args) => cmd_fit(&args, json, out),
        Command::Sample {
            fit,
            depth,
            out: path,
            no_slopes,
        } => cmd_sample(&fit, depth, path.as_deref(), !no_slopes, json, out),
        Command::Eval {
            fit,
            x,
            tol,
            derivative,
        } => cmd_eval(&fit, x, tol, derivative, json, out),
        Command::Check { fit, depth, verify } => cmd_check(&fit, depth, verify, json, out),
        Command::Converge(args) => cmd_converge(&args, json, out),
        Command::EstimateDerivs { input, out: path } => cmd_estimate(&input, path.as_deref(), json, out),
        Command::Plot {
            fit,
            depth,
            width,
            height,
            out: path,
            from_sample,
        } => cmd_plot(&fit, depth, width, height, path.as_deref(), from_sample, json, out),
    }
}

const ESTIMATED_NOTE: &str = "# d estimated from values by the arithmetic-mean rule";

fn load(path: &Path) -> CliResult<(HermiteData, bool)> {
    let ds = parse_dataset(path)?;
    Ok(ds.to_hermite()?)
}

fn print_json(out: &mut dyn Write, value: &impl Serialize) -> CliResult<i32> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::new(EXIT_IO, "io", e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(EXIT_OK)
}

/// Writes `content` to `path`, or to `out` when no path is given.
fn emit(path: Option<&Path>, content: &str, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| {
                CliError::new(EXIT_IO, "io", format!("cannot write {}: {e}", p.display()))
            })?;
            if json {
                print_json(out, &json!({"written": p.display().to_string()}))
            } else {
                writeln!(out, "wrote {}", p.display())?;
                Ok(EXIT_OK)
            }
        }
        None => {
            out.write_all(content.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

// ------------------------------------------------------------------ bounds

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), fmt_num)
}

fn cmd_bounds(input: &Path, shape: ShapeClass, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (data, estimated) = load(input)?;
    let report = alpha_bounds(&data, shape)?;
    let zeros = vec![0.0; data.n_intervals()];
    let r_at_zero = r_bounds(&data, shape, &zeros).ok();
    if json {
        return print_json(
            out,
            &json!({
                "derivatives_estimated": estimated,
                "d": data.d(),
                "report": report,
                "r_at_alpha_zero": r_at_zero,
            }),
        );
    }
    write_bounds_text(out, &data, &report, r_at_zero.as_deref(), estimated)?;
    Ok(EXIT_OK)
}

fn write_bounds_text(
    out: &mut dyn Write,
    data: &HermiteData,
    report: &BoundsReport,
    r_at_zero: Option<&[crate::shape::RBound]>,
    estimated: bool,
) -> std::io::Result<()> {
    if estimated {
        writeln!(out, "{ESTIMATED_NOTE}: {}", fmt_list(data.d()))?;
    }
    writeln!(out, "shape: {}  kappa: {}", report.shape, fmt_num(report.kappa))?;
    writeln!(
        out,
        "{:>8}  {:>16}  {:>16}  {:>16}  {:>16}  terms",
        "interval", "alpha_max", "data_only_max", "r_lower(a=0)", "r_opt(a=0)"
    )?;
    for b in &report.intervals {
        let r_opt = r_at_zero.map(|r| r[b.interval].optimal);
        let terms: Vec<String> = b
            .terms
            .iter()
            .map(|t| {
                let v = t.value.map_or_else(|| "dropped".into(), fmt_num);
                format!("{}={}", t.criterion.label(), v)
            })
            .collect();
        let r_lower = format!("{}{}", if b.r_strict { ">" } else { ">=" }, fmt_num(b.r_lower));
        writeln!(
            out,
            "{:>8}  {:>16}  {:>16}  {:>16}  {:>16}  {}{}",
            b.interval + 1,
            fmt_num(b.alpha_max),
            fmt_opt(b.data_only_max),
            r_lower,
            fmt_opt(r_opt),
            terms.join(" "),
            if b.forced_zero { " (alpha forced to 0)" } else { "" }
        )?;
    }
    for d in &report.diagnostics {
        writeln!(out, "note: {d}")?;
    }
    Ok(())
}

// --------------------------------------------------------------------- fit

#[derive(Debug, Serialize)]
struct FitSummary {
    shape: ShapeClass,
    selection: String,
    derivatives_estimated: bool,
    classical: bool,
    params: FifParameters,
    d: Vec<f64>,
    validation: Vec<String>,
    shape_check: Vec<String>,
    coefficients: Vec<CoefficientRow>,
}

#[derive(Debug, Serialize)]
struct CoefficientRow {
    interval: usize,
    a: f64,
    b: f64,
    value: [f64; 4],
    slope: [f64; 5],
    curvature: [f64; 4],
}

/// Builds the model described by the fit flags. Explicit `--alpha` values
/// are checked against the shape's conditions; otherwise parameters are
/// selected with the fractality dial.
fn resolve_model(args: &FitArgs) -> CliResult<(RationalCubicFif, bool, String)> {
    let (data, estimated) = load(&args.input)?;
    let (params, selection) = match &args.alpha {
        Some(alpha) => {
            let r = match &args.r {
                Some(r) => r.clone(),
                None if args.shape == ShapeClass::Unconstrained => vec![3.0; alpha.len()],
                None => r_bounds(&data, args.shape, alpha)?
                    .iter()
                    .map(|b| b.optimal)
                    .collect(),
            };
            let params = FifParameters::new(alpha.clone(), r);
            if args.shape != ShapeClass::Unconstrained {
                check_shape_parameters(&data, &params, args.shape)?;
            }
            (params, "explicit alpha".to_string())
        }
        None => {
            let policy = match &args.r {
                Some(r) => RPolicy::Explicit(r.clone()),
                None => RPolicy::Optimal,
            };
            let params = select_parameters(&data, args.shape, args.t, &policy)?;
            let how = if args.r.is_some() { "explicit r" } else { "optimal r" };
            (params, format!("t = {}, {how}", fmt_num(args.t)))
        }
    };
    Ok((build_fif(data, params)?, estimated, selection))
}

fn cmd_fit(args: &FitArgs, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (fif, estimated, selection) = resolve_model(args)?;
    let data = fif.data();
    let validation: Vec<String> = validate_parameters(data, fif.params())
        .violations
        .iter()
        .map(ToString::to_string)
        .collect();
    let shape_check = match check_shape_parameters(data, fif.params(), args.shape) {
        Ok(()) => Vec::new(),
        Err(Error::ShapeConstraints { violations, .. })
        | Err(Error::NecessaryCondition { violations, .. }) => violations,
        Err(e) => vec![e.to_string()],
    };
    let summary = FitSummary {
        shape: args.shape,
        selection,
        derivatives_estimated: estimated,
        classical: fif.is_classical(),
        params: fif.params().clone(),
        d: data.d().to_vec(),
        validation,
        shape_check,
        coefficients: fif
            .coefficients()
            .iter()
            .enumerate()
            .map(|(i, c)| CoefficientRow {
                interval: i + 1,
                a: c.scale,
                b: c.shift,
                value: c.value,
                slope: c.slope,
                curvature: c.curvature,
            })
            .collect(),
    };
    if json {
        return print_json(out, &summary);
    }
    if estimated {
        writeln!(out, "{ESTIMATED_NOTE}: {}", fmt_list(data.d()))?;
    }
    writeln!(out, "shape: {} ({})", summary.shape, summary.selection)?;
    if summary.classical {
        writeln!(out, "model: classical rational cubic spline (all alpha = 0)")?;
    } else {
        writeln!(
            out,
            "model: fractal, max |alpha| = {}",
            fmt_num(fif.params().alpha_abs_max())
        )?;
    }
    writeln!(out, "kappa: {}", fmt_num(fif.params().kappa))?;
    writeln!(
        out,
        "{:>8}  {:>16}  {:>16}  {:>16}  {:>16}  {:>16}  {:>16}",
        "interval", "alpha", "r", "A", "B", "C", "D"
    )?;
    for (i, c) in fif.coefficients().iter().enumerate() {
        writeln!(
            out,
            "{:>8}  {:>16}  {:>16}  {:>16}  {:>16}  {:>16}  {:>16}",
            i + 1,
            fmt_num(c.alpha),
            fmt_num(c.r),
            fmt_num(c.value[0]),
            fmt_num(c.value[1]),
            fmt_num(c.value[2]),
            fmt_num(c.value[3])
        )?;
    }
    if summary.validation.is_empty() {
        writeln!(out, "validation: admissible")?;
    } else {
        writeln!(out, "validation: {}", summary.validation.join("; "))?;
    }
    if args.shape != ShapeClass::Unconstrained {
        if summary.shape_check.is_empty() {
            writeln!(out, "shape conditions: satisfied")?;
        } else {
            writeln!(out, "shape conditions: {}", summary.shape_check.join("; "))?;
        }
    }
    Ok(EXIT_OK)
}

// ------------------------------------------------------------------ sample

fn sample_csv(fif: &RationalCubicFif, depth: usize, slopes: bool, estimated: bool) -> CliResult<String> {
    let opts = SampleOptions {
        with_slopes: slopes,
        ..SampleOptions::default()
    };
    let sample = sample_attractor_with(fif, depth, &opts)?;
    let mut text = String::with_capacity(sample.len() * 48);
    if estimated {
        text.push_str(ESTIMATED_NOTE);
        text.push('\n');
    }
    text.push_str(if slopes { "x,S,S1,depth\n" } else { "x,S,depth\n" });
    for k in 0..sample.len() {
        text.push_str(&fmt_num(sample.x[k]));
        text.push(',');
        text.push_str(&fmt_num(sample.s[k]));
        if let Some(s1) = &sample.s1 {
            text.push(',');
            text.push_str(&fmt_num(s1[k]));
        }
        text.push(',');
        text.push_str(&depth.to_string());
        text.push('\n');
    }
    Ok(text)
}

fn cmd_sample(
    args: &FitArgs,
    depth: usize,
    path: Option<&Path>,
    slopes: bool,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (fif, estimated, _) = resolve_model(args)?;
    let text = sample_csv(&fif, depth, slopes, estimated)?;
    emit(path, &text, json && path.is_some(), out)
}

// -------------------------------------------------------------------- eval

fn cmd_eval(
    args: &FitArgs,
    x: f64,
    tol: f64,
    derivative: bool,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (fif, _, _) = resolve_model(args)?;
    let settings = EvalSettings::with_tolerance(tol);
    let e = if derivative {
        eval_derivative_at(&fif, x, &settings)?
    } else {
        eval_at(&fif, x, &settings)?
    };
    let what = if derivative { "S'" } else { "S" };
    if json {
        return print_json(
            out,
            &json!({"x": x, "quantity": what, "value": e.value, "error_bound": e.error_bound, "depth": e.depth}),
        );
    }
    writeln!(
        out,
        "{what}({}) = {}  (error <= {}, depth {})",
        fmt_num(x),
        fmt_num(e.value),
        fmt_num(e.error_bound),
        e.depth
    )?;
    Ok(EXIT_OK)
}

// ------------------------------------------------------------------- check

fn cmd_check(
    args: &FitArgs,
    depth: usize,
    verify: Option<ShapeClass>,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (fif, _, _) = resolve_model(args)?;
    let shape = verify.unwrap_or(args.shape);
    let verdict = verify_shape(&fif, shape, depth)?;
    let code = if verdict.passed { EXIT_OK } else { EXIT_VALIDATION };
    if json {
        print_json(out, &verdict)?;
        return Ok(code);
    }
    let status = if verdict.passed { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{status} {} at depth {} ({} points, tolerance {})",
        verdict.shape,
        verdict.depth,
        verdict.points,
        fmt_num(verdict.tolerance)
    )?;
    if let Some(w) = verdict.witness {
        writeln!(
            out,
            "witness: x in [{}, {}], defect {}",
            fmt_num(w.x_left),
            fmt_num(w.x_right),
            fmt_num(w.defect)
        )?;
    }
    Ok(code)
}

// ---------------------------------------------------------------- converge

type Generator = [fn(f64) -> f64; 5];

fn generator(name: &str) -> CliResult<Generator> {
    let g: Generator = match name {
        "sin" => [f64::sin, f64::cos, |x| -x.sin(), |x| -x.cos(), f64::sin],
        "cos" => [f64::cos, |x| -x.sin(), |x| -x.cos(), f64::sin, f64::cos],
        "exp" => [f64::exp; 5],
        "linear" => [|x| 2.0 * x + 1.0, |_| 2.0, |_| 0.0, |_| 0.0, |_| 0.0],
        _ => {
            return Err(CliError::new(
                EXIT_VALIDATION,
                "invalid_input",
                format!("unknown generator '{name}' (sin, cos, exp, linear)"),
            ))
        }
    };
    Ok(g)
}

fn parse_alpha_rule(s: &str) -> CliResult<AlphaRule> {
    match s {
        "zero" | "0" => Ok(AlphaRule::Zero),
        "a2" => Ok(AlphaRule::HalfSquare),
        "a3" => Ok(AlphaRule::HalfCube),
        "a4" => Ok(AlphaRule::HalfFourth),
        _ => Err(CliError::new(
            EXIT_VALIDATION,
            "invalid_input",
            format!("unknown alpha rule '{s}' (zero, a2, a3, a4)"),
        )),
    }
}

fn parse_r_rule(s: &str) -> CliResult<RRule> {
    match s {
        "3+h" => Ok(RRule::ThreePlusH),
        "3+h2" | "3+h^2" => Ok(RRule::ThreePlusH2),
        _ => s.parse::<f64>().map(RRule::Fixed).map_err(|_| {
            CliError::new(
                EXIT_VALIDATION,
                "invalid_input",
                format!("unknown r rule '{s}' (a number, 3+h, 3+h2)"),
            )
        }),
    }
}

fn cmd_converge(args: &ConvergeArgs, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let g = generator(&args.generator)?;
    let mut cfg = ConvergenceConfig::new(
        args.a,
        args.b,
        args.knots.clone(),
        parse_alpha_rule(&args.alpha_rule)?,
        parse_r_rule(&args.r_rule)?,
    );
    cfg.tolerance = args.tol;
    cfg.norms = Some(DerivativeNorms {
        f2: sampled_sup_norm(g[2], args.a, args.b, NORM_GRID),
        f3: sampled_sup_norm(g[3], args.a, args.b, NORM_GRID),
        f4: sampled_sup_norm(g[4], args.a, args.b, NORM_GRID),
    });
    let report = convergence_order(g[0], g[1], &cfg)?;
    if json {
        return print_json(out, &json!({"generator": args.generator, "config": cfg, "report": report}));
    }
    writeln!(
        out,
        "generator {} on [{}, {}], alpha rule {}, r rule {}",
        args.generator,
        fmt_num(args.a),
        fmt_num(args.b),
        args.alpha_rule,
        args.r_rule
    )?;
    writeln!(out, "{:>6}  {:>16}  {:>16}  {:>16}", "knots", "h", "max_error", "c4_bound")?;
    for row in &report.rows {
        writeln!(
            out,
            "{:>6}  {:>16}  {:>16}  {:>16}",
            row.knots,
            fmt_num(row.h),
            fmt_num(row.max_error),
            fmt_opt(row.bound.as_ref().map(|b| b.total))
        )?;
    }
    match report.order {
        Some(order) => writeln!(out, "order: {}", fmt_num(order))?,
        None => writeln!(out, "order: exact")?,
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- estimate

fn cmd_estimate(input: &Path, path: Option<&Path>, json: bool, out: &mut dyn Write) -> CliResult<i32> {
    let ds = parse_dataset(input)?;
    let d = crate::estimate::arithmetic_mean_derivatives(&ds.x, &ds.y)?;
    if json && path.is_none() {
        return print_json(out, &json!({"x": ds.x, "y": ds.y, "d": d}));
    }
    let mut text = String::from("x,y,d\n");
    for ((x, y), d) in ds.x.iter().zip(&ds.y).zip(&d) {
        text.push_str(&format!("{},{},{}\n", fmt_num(*x), fmt_num(*y), fmt_num(*d)));
    }
    emit(path, &text, json, out)
}

// -------------------------------------------------------------------- plot

#[allow(clippy::too_many_arguments)]
fn cmd_plot(
    args: &FitArgs,
    depth: usize,
    width: u32,
    height: u32,
    path: Option<&Path>,
    from_sample: bool,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<i32> {
    if width < 10 || height < 10 {
        return Err(CliError::new(EXIT_VALIDATION, "invalid_input", "plot must be at least 10x10"));
    }
    let svg = if from_sample {
        let (x, s) = parse_sample(&args.input)?;
        svg::render(&svg::Plot {
            x: &x,
            y: &s,
            knots: None,
            width,
            height,
            title: Some(args.input.display().to_string()),
        })
    } else {
        let (fif, _, _) = resolve_model(args)?;
        let opts = SampleOptions {
            with_slopes: false,
            ..SampleOptions::default()
        };
        let sample = sample_attractor_with(&fif, depth, &opts)?;
        let data = fif.data();
        svg::render(&svg::Plot {
            x: &sample.x,
            y: &sample.s,
            knots: Some((data.x(), data.y())),
            width,
            height,
            title: Some(format!("{} fit, depth {depth}", args.shape)),
        })
    };
    emit(path, &svg, json, out)
}
