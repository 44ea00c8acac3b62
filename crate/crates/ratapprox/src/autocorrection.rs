//! Error autocorrection diagnostics.
//!
//! Two approximate constructions of the same rational approximant differ by
//! coefficient increments `ΔP`, `ΔQ`. The error approximant `ΔP/ΔQ` tends to
//! approximate the target itself, which is why large correlated coefficient
//! errors cancel when the rational function is evaluated.

use crate::analysis::{error_report, Weight, DEFAULT_CHECKPOINTS};
use crate::cheb::{cheb_multiply, monomial_to_cheb, ChebSeries, Domain, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{norm1, Matrix};
use crate::pade::{first_nonvanishing, residual_series, TaylorSeries, VanishingOrder};
use crate::pade_chebyshev::{
    build_linear_cross, build_linear_integral, build_nonlinear, series_length,
    target_cheb_coeffs, taylor_to_cheb_truncated, BuildOptions, SeriesOutcome, ValueNoise,
};
use crate::rational::{Normalization, Parity, RationalApproximant};
use crate::scalar::{max_abs, Real};
use crate::target::TargetFunction;

/// Zones where `|ΔQ|` falls below this fraction of its maximum are excluded.
pub const EXCLUSION_FRACTION: f64 = 1e-3;

/// `ΔP/ΔQ` for a pair of approximants of identical shape.
#[derive(Debug, Clone)]
pub struct ErrorApproximant<T> {
    pub delta_numerator: Polynomial<T>,
    pub delta_denominator: Polynomial<T>,
    pub parity: Parity,
    pub domain: Domain<T>,
    /// Intervals where `|ΔQ|` is too small for the ratio to be meaningful.
    pub excluded_zones: Vec<(T, T)>,
    /// Both approximants have identical coefficients.
    pub degenerate: bool,
    first: Vec<T>,
    second: Vec<T>,
}

impl<T: Real> ErrorApproximant<T> {
    fn as_rational(&self) -> RationalApproximant<T> {
        RationalApproximant::new(
            self.delta_numerator.clone(),
            self.delta_denominator.clone(),
            self.parity,
            self.domain,
        )
        .expect("shape checked on construction")
    }

    pub fn eval(&self, x: T) -> T {
        self.as_rational().eval(x)
    }

    pub fn is_excluded(&self, x: T) -> bool {
        self.excluded_zones.iter().any(|&(a, b)| x >= a && x <= b)
    }

    /// Coefficient vectors `(a, b)` of the first and second approximant.
    pub fn sources(&self) -> (&[T], &[T]) {
        (&self.first, &self.second)
    }

    pub fn delta_coefficients(&self) -> Vec<T> {
        self.second.iter().zip(&self.first).map(|(&b, &a)| b - a).collect()
    }

    /// Largest `|f - ΔP/ΔQ|` over the checkpoints outside the excluded zones.
    pub fn max_error(&self, f: &TargetFunction<T>, checkpoints: usize) -> Result<Option<T>> {
        if self.degenerate {
            return Ok(None);
        }
        let mut worst = None::<T>;
        for x in f.domain().grid(checkpoints) {
            if self.is_excluded(x) {
                continue;
            }
            let e = (f.eval(x)? - self.eval(x)).abs();
            if e.is_finite() {
                worst = Some(worst.map_or(e, |w| w.max(e)));
            }
        }
        Ok(worst)
    }
}

fn same_shape<T: Real>(r1: &RationalApproximant<T>, r2: &RationalApproximant<T>) -> Result<()> {
    if r1.m() != r2.m() || r1.n() != r2.n() || r1.parity() != r2.parity() || r1.domain() != r2.domain()
    {
        return Err(Error::ShapeMismatch(format!(
            "({},{}) {} vs ({},{}) {}",
            r1.m(),
            r1.n(),
            r1.parity().name(),
            r2.m(),
            r2.n(),
            r2.parity().name()
        )));
    }
    Ok(())
}

/// Coefficient differences of `r2 - r1` in their native normalizations.
pub fn error_approximant<T: Real>(
    r1: &RationalApproximant<T>,
    r2: &RationalApproximant<T>,
) -> Result<ErrorApproximant<T>> {
    same_shape(r1, r2)?;
    let dp = r2.numerator().sub(r1.numerator());
    let dq = r2.denominator().sub(r1.denominator());
    let degenerate = dp.coeffs().iter().chain(dq.coeffs()).all(|&v| v == T::zero());
    let domain = r1.domain();
    let grid = domain.grid(DEFAULT_CHECKPOINTS);
    let dq_vals: Vec<T> = grid.iter().map(|&x| dq.eval(r1.working_var(x))).collect();
    let cut = T::lit(EXCLUSION_FRACTION) * max_abs(&dq_vals);
    let mut excluded_zones: Vec<(T, T)> = Vec::new();
    if !degenerate {
        let mut open: Option<T> = None;
        for (i, (&x, &v)) in grid.iter().zip(&dq_vals).enumerate() {
            let low = v.abs() < cut || v == T::zero();
            match (low, open) {
                (true, None) => open = Some(if i > 0 { grid[i - 1] } else { x }),
                (false, Some(a)) => {
                    excluded_zones.push((a, x));
                    open = None;
                }
                _ => {}
            }
        }
        if let Some(a) = open {
            excluded_zones.push((a, domain.b()));
        }
    }
    Ok(ErrorApproximant {
        delta_numerator: dp,
        delta_denominator: dq,
        parity: r1.parity(),
        domain,
        excluded_zones,
        degenerate,
        first: r1.coefficients(),
        second: r2.coefficients(),
    })
}

/// Pointwise residuals of the exact increment identities, relative to the
/// approximant magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals<T> {
    /// `R̃ - R` against `(ΔQ/Q̃)(ΔP/ΔQ - P/Q)`.
    pub ratio_form: T,
    /// `ΔP/Q̃ - (ΔQ/Q̃)(P/Q)` against the ratio form.
    pub split_form: T,
    /// Points where all denominators were large enough to compare.
    pub points: usize,
}

/// Checks the increment identities on `checkpoints + 1` uniform points,
/// skipping points where a denominator is below `1e-8` (`ΔQ` relative to its
/// maximum).
pub fn identity_residuals<T: Real>(
    r1: &RationalApproximant<T>,
    r2: &RationalApproximant<T>,
    checkpoints: usize,
) -> Result<IdentityResiduals<T>> {
    same_shape(r1, r2)?;
    let (p1, q1) = (r1.plain_numerator(), r1.plain_denominator());
    let (p2, q2) = (r2.plain_numerator(), r2.plain_denominator());
    let (dp, dq) = (p2.sub(&p1), q2.sub(&q1));
    let grid = Domain::<T>::unit().grid(checkpoints);
    let dq_max = grid.iter().fold(T::zero(), |m, &t| m.max(dq.eval(t).abs()));
    let floor = T::lit(1e-8);
    let mut out = IdentityResiduals { ratio_form: T::zero(), split_form: T::zero(), points: 0 };
    for &t in &grid {
        let (a1, b1, a2, b2) = (p1.eval(t), q1.eval(t), p2.eval(t), q2.eval(t));
        let (da, db) = (dp.eval(t), dq.eval(t));
        if b1.abs() <= floor || b2.abs() <= floor || db.abs() <= floor * dq_max || db == T::zero() {
            continue;
        }
        let (v1, v2) = (a1 / b1, a2 / b2);
        let scale = v1.abs().max(v2.abs()).max(T::min_positive_value());
        let lhs = v2 - v1;
        let ratio = db / b2 * (da / db - v1);
        let split = da / b2 - db / b2 * v1;
        out.ratio_form = out.ratio_form.max((lhs - ratio).abs() / scale);
        out.split_form = out.split_form.max((split - ratio).abs() / scale);
        out.points += 1;
    }
    Ok(out)
}

/// Increment of the coefficient pinned by the normalization row.
pub fn normalization_residual<T: Real>(
    norm: Normalization,
    r1: &RationalApproximant<T>,
    r2: &RationalApproximant<T>,
) -> Result<T> {
    same_shape(r1, r2)?;
    let pinned = |r: &RationalApproximant<T>| match norm {
        Normalization::B0 => r.denominator().coeff(0),
        Normalization::Bm => r.denominator().coeff(r.m()),
        Normalization::An => r.numerator().coeff(r.n()),
    };
    Ok((pinned(r2) - pinned(r1)).abs())
}

/// 1-norm residuals of the coefficient increment in the homogeneous system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualCheck<T> {
    /// `‖H Δy‖₁`
    pub delta_residual: T,
    /// `‖H y₁‖₁ + ‖H y₂‖₁`
    pub bound: T,
    /// `‖H Δy‖₁ / (‖H‖₁ ‖Δy‖₁)`
    pub delta_relative: T,
    /// `‖H y₁‖₁ / (‖H‖₁ ‖y₁‖₁)`
    pub solution_relative: T,
}

impl<T: Real> ResidualCheck<T> {
    pub fn within_bound(&self) -> bool {
        self.delta_residual <= self.bound
    }
}

pub fn residual_check<T: Real>(
    delta: &ErrorApproximant<T>,
    system: &Matrix<T>,
) -> Result<ResidualCheck<T>> {
    let (y1, y2) = delta.sources();
    let dy = delta.delta_coefficients();
    let hd = system.mul_vec(&dy)?;
    let h1 = system.mul_vec(y1)?;
    let h2 = system.mul_vec(y2)?;
    let hn = system.norm1();
    let ratio = |num: T, den: T| if den == T::zero() { T::zero() } else { num / den };
    Ok(ResidualCheck {
        delta_residual: norm1(&hd),
        bound: norm1(&h1) + norm1(&h2),
        delta_relative: ratio(norm1(&hd), hn * norm1(&dy)),
        solution_relative: ratio(norm1(&h1), hn * norm1(y1)),
    })
}

/// First Taylor coefficient of `f·ΔQ - ΔP` that does not cancel.
pub fn pade_error_approximant_order<T: Real>(
    t: &TaylorSeries<T>,
    r1: &RationalApproximant<T>,
    r2: &RationalApproximant<T>,
) -> Result<VanishingOrder> {
    let delta = error_approximant(r1, r2)?;
    if delta.degenerate {
        return Ok(VanishingOrder::Degenerate);
    }
    let series = residual_series(
        t,
        &delta.as_rational().plain_numerator(),
        &delta.as_rational().plain_denominator(),
    );
    Ok(first_nonvanishing(&series))
}

/// Largest `|∫(f ΔQ - ΔP) T_i w|`, `i = 0..n`, relative to the largest
/// Chebyshev coefficient of `f ΔQ`.
pub fn cheb_error_approximant_residual<T: Real>(
    c: &ChebSeries<T>,
    delta: &ErrorApproximant<T>,
) -> Result<T> {
    let r = delta.as_rational();
    let (dp, dq) = (r.plain_numerator(), r.plain_denominator());
    let prod = cheb_multiply(c, &monomial_to_cheb(&dq)?);
    let dpc = monomial_to_cheb(&dp)?;
    let scale = max_abs(prod.coeffs());
    if scale == T::zero() {
        return Ok(T::zero());
    }
    let worst = (0..=dp.degree())
        .map(|i| (prod.coeff(i) - dpc.coeff(i)).abs())
        .fold(T::zero(), T::max);
    Ok(worst / scale)
}

/// Construction whose sensitivity is probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    LinearIntegral,
    LinearCross,
    Nonlinear,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pc-linear" => Ok(Self::LinearIntegral),
            "pc-cross" => Ok(Self::LinearCross),
            "pc-nonlinear" => Ok(Self::Nonlinear),
            _ => Err(Error::InvalidInput(format!("unknown method '{s}'"))),
        }
    }
}

/// How the second construction differs from the first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    /// Different quadrature node counts.
    QuadratureNodes { first: usize, second: usize },
    /// Noise on the sampled function values of the second construction.
    ValueNoise(ValueNoise),
    /// Second construction uses another normalization; it is rescaled to the
    /// first one before differencing.
    NormalizationSwitch(Normalization),
    /// Chebyshev coefficients from Taylor partial sums of two degrees.
    TaylorTruncation { first: usize, second: usize },
}

/// Outcome of a perturbation experiment.
#[derive(Debug, Clone)]
pub struct ExperimentRecord<T> {
    pub method: Method,
    pub perturbation: Perturbation,
    /// Largest relative coefficient difference after rescaling both to `b_0 = 1`.
    pub coeff_rel_error: T,
    pub error_first: T,
    pub error_second: T,
    /// `Δ₀`: error of `ΔP/ΔQ` outside the excluded zones; `None` when degenerate.
    pub error_approximant_error: Option<T>,
    pub condition_first: T,
    pub condition_second: T,
    pub excluded_zones: Vec<(T, T)>,
    pub degenerate: bool,
    pub first: RationalApproximant<T>,
    pub second: RationalApproximant<T>,
}

/// Largest Chebyshev degree requested from a Taylor partial sum.
const TAYLOR_CHEB_DEGREE: usize = 40;

fn rel_coeff_error<T: Real>(r1: &RationalApproximant<T>, r2: &RationalApproximant<T>) -> Result<T> {
    let (a, b) = (r1.normalized_b0()?, r2.normalized_b0()?);
    let (ca, cb) = (a.coefficients(), b.coefficients());
    let b0 = a.n() + 1;
    Ok(ca
        .iter()
        .zip(&cb)
        .enumerate()
        .filter(|&(i, (x, _))| i != b0 && *x != T::zero())
        .map(|(_, (x, y))| ((*y - *x) / *x).abs())
        .fold(T::zero(), T::max))
}

pub fn autocorrection_experiment<T: Real>(
    f: &TargetFunction<T>,
    m: usize,
    n: usize,
    opts: &BuildOptions,
    method: Method,
    perturbation: Perturbation,
) -> Result<ExperimentRecord<T>> {
    let ((r1, c1), (mut r2, c2)) = match method {
        Method::LinearIntegral => {
            let build = |o: &BuildOptions, g: &TargetFunction<T>| -> Result<(RationalApproximant<T>, T)> {
                let out = build_linear_integral(g, m, n, o)?;
                Ok((out.approximant, out.condition))
            };
            match perturbation {
                Perturbation::QuadratureNodes { first, second } => (
                    build(&opts.clone().with_nodes(first), f)?,
                    build(&opts.clone().with_nodes(second), f)?,
                ),
                Perturbation::ValueNoise(noise) => {
                    let mut noisy = opts.clone();
                    noisy.value_noise = Some(noise);
                    (build(opts, f)?, build(&noisy, f)?)
                }
                Perturbation::NormalizationSwitch(norm) => {
                    (build(opts, f)?, build(&opts.clone().with_normalization(norm), f)?)
                }
                Perturbation::TaylorTruncation { first, second } => {
                    let partial = |deg: usize| -> Result<TargetFunction<T>> {
                        let t = f.taylor_series(deg).ok_or_else(|| {
                            Error::InvalidInput(format!("{} has no Taylor coefficients", f.name()))
                        })?;
                        Ok(TargetFunction::taylor(t, f.domain()).with_symmetry(f.symmetry()))
                    };
                    (build(opts, &partial(first)?)?, build(opts, &partial(second)?)?)
                }
            }
        }
        Method::LinearCross | Method::Nonlinear => {
            let k = series_length(opts.parity, m, n) - 1;
            let coeffs = |nodes: usize, noise: Option<ValueNoise>| target_cheb_coeffs(f, k, nodes, noise);
            let (s1, s2) = match perturbation {
                Perturbation::QuadratureNodes { first, second } => {
                    (coeffs(first, None)?, coeffs(second, None)?)
                }
                Perturbation::ValueNoise(noise) => (
                    coeffs(opts.quadrature_nodes, None)?,
                    coeffs(opts.quadrature_nodes, Some(noise))?,
                ),
                Perturbation::TaylorTruncation { first, second } => {
                    let t = f.taylor_series(first.max(second)).ok_or_else(|| {
                        Error::InvalidInput(format!("{} has no Taylor coefficients", f.name()))
                    })?;
                    let cut = |deg: usize| taylor_to_cheb_truncated(&t, deg, deg.min(TAYLOR_CHEB_DEGREE));
                    (cut(first)?, cut(second)?)
                }
                Perturbation::NormalizationSwitch(_) => {
                    return Err(Error::InvalidInput(
                        "normalization switch applies to the integral method only".into(),
                    ))
                }
            };
            let build = |s: &ChebSeries<T>| -> Result<SeriesOutcome<T>> {
                match method {
                    Method::LinearCross => build_linear_cross(s, m, n, opts.parity, f.domain()),
                    _ => build_nonlinear(s, m, n, opts.parity, f.domain()),
                }
            };
            let (o1, o2) = (build(&s1)?, build(&s2)?);
            ((o1.approximant, o1.condition), (o2.approximant, o2.condition))
        }
    };
    if let Perturbation::NormalizationSwitch(_) = perturbation {
        r2 = r2.normalized(opts.normalization)?;
    }
    let delta = error_approximant(&r1, &r2)?;
    let err = |r: &RationalApproximant<T>| -> Result<T> {
        Ok(error_report(f, r, Weight::Absolute, opts.checkpoints)?.abs_error)
    };
    Ok(ExperimentRecord {
        method,
        perturbation,
        coeff_rel_error: rel_coeff_error(&r1, &r2)?,
        error_first: err(&r1)?,
        error_second: err(&r2)?,
        error_approximant_error: delta.max_error(f, opts.checkpoints)?,
        condition_first: c1,
        condition_second: c2,
        excluded_zones: delta.excluded_zones.clone(),
        degenerate: delta.degenerate,
        first: r1,
        second: r2,
    })
}
