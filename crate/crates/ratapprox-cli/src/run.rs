use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ratapprox::analysis::{acceleration_compare, error_curve, error_report, Weight};
use ratapprox::autocorrection::{autocorrection_experiment, Method as AcMethod, Perturbation};
use ratapprox::cheb::{ChebSeries, Domain};
use ratapprox::elemfun::{accuracy_harness, nominal_accuracy, FunctionId, Precision};
use ratapprox::modeling::{fit_model, SampleTable, Spline, SplineKind};
use ratapprox::pade::{pade_on_domain, TaylorSeries};
use ratapprox::pade_chebyshev::{
    build_linear_cross, build_linear_integral, build_nonlinear, series_length, target_cheb_coeffs,
    BuildOptions, ValueNoise,
};
use ratapprox::remez::{remez_solve, seed_from_approximant, RemezOptions};
use ratapprox::report::{
    acceleration_document, accuracy_document, approximant_document, experiment_document, fmt_float,
    remez_document, report_document, Document,
};
use ratapprox::{Builtin, Error, Normalization, Parity, RationalApproximant, TargetFunction};

use crate::args::*;

/// Failure classes, one exit status each.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Construction(String),
    Evaluation(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Construction(_) => 3,
            Failure::Evaluation(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Construction(m) | Failure::Evaluation(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Evaluation { .. } | Error::Domain { .. } | Error::Overflow | Error::Pole { .. } => {
                Failure::Evaluation(msg)
            }
            Error::Parse { .. } | Error::InvalidInput(_) | Error::ShapeMismatch(_) => Failure::Usage(msg),
            _ => Failure::Construction(msg),
        }
    }
}

type Out = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_values(text: &str) -> Result<Vec<f64>, Failure> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v = line
            .parse()
            .map_err(|_| usage(format!("line {}: '{line}' is not a number", i + 1)))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(usage("coefficient file holds no values"));
    }
    Ok(out)
}

fn domain(f: &FunctionArgs) -> Result<Domain<f64>, Failure> {
    if !(f.a < f.b) {
        return Err(usage(format!("need a < b, got a = {} and b = {}", f.a, f.b)));
    }
    Ok(Domain::new(f.a, f.b)?)
}

fn parity(even: bool, odd: bool) -> Parity {
    match (even, odd) {
        (true, _) => Parity::Even,
        (_, true) => Parity::Odd,
        _ => Parity::Plain,
    }
}

fn norm(n: NormArg) -> Normalization {
    match n {
        NormArg::B0 => Normalization::B0,
        NormArg::Bm => Normalization::Bm,
        NormArg::An => Normalization::An,
    }
}

fn weight(w: WeightArg) -> Weight {
    match w {
        WeightArg::Abs => Weight::Absolute,
        WeightArg::Rel => Weight::Relative,
    }
}

fn options(s: &ShapeArgs) -> BuildOptions {
    let mut o = BuildOptions::default()
        .with_parity(parity(s.even, s.odd))
        .with_normalization(norm(s.norm))
        .with_nodes(s.nodes);
    o.checkpoints = s.checkpoints;
    o
}

fn validate_shape(s: &ShapeArgs) -> Result<(), Failure> {
    if s.nodes == 0 || s.checkpoints < 2 {
        return Err(usage("--nodes must be positive and --checkpoints at least 2"));
    }
    Ok(())
}

fn target(f: &FunctionArgs) -> Result<TargetFunction<f64>, Failure> {
    let given = [f.function.is_some(), f.taylor_file.is_some(), f.cheb_file.is_some(), f.samples_file.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(usage("give exactly one of --fn, --taylor-file, --cheb-file, --samples-file"));
    }
    if let Some(path) = &f.samples_file {
        let table = SampleTable::parse_columns(&read(path)?)?;
        return Ok(TargetFunction::samples(Spline::new(&table, SplineKind::Cubic)?));
    }
    let d = domain(f)?;
    if let Some(name) = &f.function {
        return Ok(TargetFunction::builtin(Builtin::parse(name)?, d));
    }
    if let Some(path) = &f.taylor_file {
        return Ok(TargetFunction::taylor(TaylorSeries::new(parse_values(&read(path)?)?), d));
    }
    let path = f.cheb_file.as_ref().expect("one source is present");
    Ok(TargetFunction::chebyshev(ChebSeries::new(parse_values(&read(path)?)?), d))
}

fn render(title: &str, doc: &Document, format: Format) -> String {
    match format {
        Format::Doc => doc.render(),
        Format::Text => {
            let width = doc.keys().map(str::len).max().unwrap_or(0);
            let mut s = format!("{title}\n");
            for k in doc.keys() {
                let _ = writeln!(s, "  {k:<width$}  {}", doc.get(k).unwrap_or(""));
            }
            s
        }
    }
}

fn curve_text(f: &TargetFunction<f64>, r: &RationalApproximant<f64>, checkpoints: usize) -> Result<String, Failure> {
    let mut s = String::from("# x abs_error rel_error\n");
    for (x, a, d) in error_curve(f, r, checkpoints)? {
        let _ = writeln!(s, "{} {} {}", fmt_float(x), fmt_float(a), fmt_float(d));
    }
    Ok(s)
}

fn series_input(f: &TargetFunction<f64>, fa: &FunctionArgs, k: usize, nodes: usize) -> Result<ChebSeries<f64>, Failure> {
    if let Some(path) = &fa.cheb_file {
        let c = ChebSeries::new(parse_values(&read(path)?)?);
        if c.coeffs().len() < k + 1 {
            return Err(usage(format!("the series schemes need {} Chebyshev coefficients", k + 1)));
        }
        return Ok(c.truncate(k));
    }
    Ok(target_cheb_coeffs(f, k, nodes, None)?)
}

/// Builds the approximant of `approx`/`report`, returning it with its
/// construction diagnostics.
fn construct(args: &ApproxArgs, f: &TargetFunction<f64>) -> Result<(RationalApproximant<f64>, Document), Failure> {
    let s = &args.shape;
    let opts = options(s);
    let mut diag = Document::new();
    let r = match args.method {
        Method::Pade => {
            if opts.parity != Parity::Plain {
                return Err(usage("the pade method builds plain forms only"));
            }
            let t = f
                .taylor_series(s.m + s.n + 1)
                .ok_or_else(|| usage("the pade method needs a function with known Taylor coefficients"))?;
            diag.text("condition", "none");
            pade_on_domain(&t, s.m, s.n, f.domain())?
        }
        Method::PcLinear => {
            let out = build_linear_integral(f, s.m, s.n, &opts)?;
            diag.float("condition", out.condition);
            out.approximant
        }
        Method::PcCross | Method::PcNonlinear => {
            let k = series_length(opts.parity, s.m, s.n) - 1;
            let c = series_input(f, &args.function, k, opts.quadrature_nodes)?;
            let out = if args.method == Method::PcCross {
                build_linear_cross(&c, s.m, s.n, opts.parity, f.domain())?
            } else {
                build_nonlinear(&c, s.m, s.n, opts.parity, f.domain())?
            };
            diag.float("condition", out.condition);
            out.approximant
        }
        Method::Remez => {
            let w = weight(s.weight);
            let seed = build_linear_integral(f, s.m, s.n, &opts)
                .ok()
                .and_then(|o| seed_from_approximant(&o.approximant, f, w).ok());
            let ropts = RemezOptions { parity: opts.parity, grid: s.checkpoints, ..RemezOptions::default() };
            let out = remez_solve(f, s.m, s.n, w, seed, &ropts)?;
            diag.extend("", &remez_document(&out));
            out.approximant
        }
    };
    Ok((r, diag))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Pade => "pade",
        Method::PcLinear => "pc-linear",
        Method::PcCross => "pc-cross",
        Method::PcNonlinear => "pc-nonlinear",
        Method::Remez => "remez",
    }
}

pub fn approx(args: &ApproxArgs, with_curve: bool) -> Out {
    validate_shape(&args.shape)?;
    let f = target(&args.function)?;
    let (r, diag) = construct(args, &f)?;
    let s = &args.shape;
    let rep = error_report(&f, &r, weight(s.weight), s.checkpoints)?;
    let mut doc = Document::new();
    doc.text("function", f.name())
        .text("method", method_name(args.method))
        .text("normalization", norm(s.norm).name())
        .extend("", &diag)
        .extend("", &approximant_document(&r))
        .extend("report.", &report_document(&rep));
    let mut out = render("approximant", &doc, s.format);
    if let Some(path) = &args.curve {
        write(path, &curve_text(&f, &r, s.checkpoints)?)?;
    } else if with_curve {
        out.push_str(&curve_text(&f, &r, s.checkpoints)?);
    }
    Ok(out)
}

pub fn autocorrect(args: &AutocorrectArgs) -> Out {
    validate_shape(&args.shape)?;
    let f = target(&args.function)?;
    let mut opts = options(&args.shape);
    let mut chosen = Vec::new();
    if let (Some(first), Some(second)) = (args.n1, args.n2) {
        chosen.push(Perturbation::TaylorTruncation { first, second });
    }
    if let (Some(first), Some(second)) = (args.nodes1, args.nodes2) {
        chosen.push(Perturbation::QuadratureNodes { first, second });
    }
    if let Some(epsilon) = args.noise {
        chosen.push(Perturbation::ValueNoise(ValueNoise { epsilon, seed: args.seed }));
    }
    if let Some(n) = args.switch_norm {
        chosen.push(Perturbation::NormalizationSwitch(norm(n)));
    }
    let [perturbation] = chosen[..] else {
        return Err(usage("give exactly one perturbation: --N1/--N2, --nodes1/--nodes2, --noise or --switch-norm"));
    };
    if let Perturbation::NormalizationSwitch(_) = perturbation {
        if args.method != SeriesMethod::PcLinear {
            return Err(usage("--switch-norm applies to --method pc-linear"));
        }
    }
    let method = match args.method {
        SeriesMethod::PcLinear => AcMethod::LinearIntegral,
        SeriesMethod::PcCross => AcMethod::LinearCross,
        SeriesMethod::PcNonlinear => AcMethod::Nonlinear,
    };
    opts.value_noise = None;
    let rec = autocorrection_experiment(&f, args.shape.m, args.shape.n, &opts, method, perturbation)?;
    let mut doc = Document::new();
    doc.text("function", f.name()).extend("", &experiment_document(&rec));
    Ok(render("autocorrection experiment", &doc, args.shape.format))
}

pub fn elemfun_check(args: &ElemfunArgs) -> Out {
    let ids: Vec<FunctionId> = match &args.function {
        Some(name) => {
            let id: FunctionId = name.parse()?;
            if id == FunctionId::Pow {
                return Err(usage("pow takes two arguments and has no harness interval"));
            }
            vec![id]
        }
        None => FunctionId::KERNELS.to_vec(),
    };
    let precisions = match args.precision {
        PrecisionArg::Ordinary => vec![Precision::Ordinary],
        PrecisionArg::Enhanced => vec![Precision::Enhanced],
        PrecisionArg::Both => vec![Precision::Ordinary, Precision::Enhanced],
    };
    let mut doc = Document::new();
    for id in ids {
        for &p in &precisions {
            let rec = accuracy_harness(id, p, args.grid)?;
            let prefix = format!("{}.{}.", id.name(), p.name());
            doc.extend(&prefix, &accuracy_document(&rec));
            if let Some(nom) = nominal_accuracy(id, p) {
                doc.opt_float(&format!("{prefix}stated_max_abs"), nom.max_abs)
                    .opt_float(&format!("{prefix}stated_max_rel"), nom.max_rel);
            }
        }
    }
    Ok(render("elementary function accuracy", &doc, args.format))
}

pub fn model(args: &ModelArgs) -> Out {
    validate_shape(&args.shape)?;
    let table = SampleTable::parse_columns(&read(&args.samples_file)?)?;
    let kind = match args.spline {
        SplineArg::Linear => SplineKind::Linear,
        SplineArg::Cubic => SplineKind::Cubic,
        SplineArg::Natural => SplineKind::NaturalCubic,
    };
    let s = &args.shape;
    let out = fit_model(&table, s.m, s.n, kind, &options(s))?;
    let mut doc = Document::new();
    doc.text("samples", table.len())
        .text("spline", format!("{kind:?}").to_lowercase())
        .float("condition", out.condition)
        .extend("", &approximant_document(&out.approximant))
        .extend("report.", &report_document(&out.report));
    if let Some(path) = &args.curve {
        let f = TargetFunction::samples(Spline::new(&table, kind)?);
        write(path, &curve_text(&f, &out.approximant, s.checkpoints)?)?;
    }
    Ok(render("spline model", &doc, s.format))
}

pub fn accelerate(args: &AccelerateArgs) -> Out {
    let f = target(&args.function)?;
    let rec = acceleration_compare(&f, args.m, args.n, parity(args.even, args.odd))?;
    let mut doc = Document::new();
    doc.text("function", f.name()).extend("", &acceleration_document(&rec));
    Ok(render("series acceleration", &doc, args.format))
}
