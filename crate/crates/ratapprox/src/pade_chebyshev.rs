//! Padé-Chebyshev approximants: the linear integral method, the linear
//! cross-multiplied series scheme and the nonlinear (Clenshaw-Lord) scheme.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{error_report, ApproxReport, Weight, DEFAULT_CHECKPOINTS};
use crate::cheb::{
    cheb_eval, cheb_multiply, cheb_to_monomial, gauss_cheb_nodes, monomial_to_cheb, ChebSeries, Domain,
    Polynomial, DEFAULT_NODES,
};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::pade::TaylorSeries;
use crate::rational::{Normalization, Parity, RationalApproximant};
use crate::scalar::Real;
use crate::target::TargetFunction;

/// Multiplicative perturbation `f_i (1 + ε ξ_i)` of the sampled values,
/// `ξ_i` uniform in `[-1, 1]` from a seeded generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueNoise {
    pub epsilon: f64,
    pub seed: u64,
}

impl ValueNoise {
    pub(crate) fn factors<T: Real>(&self, count: usize) -> Vec<T> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..count)
            .map(|_| T::lit(1.0 + self.epsilon * rng.gen_range(-1.0..=1.0)))
            .collect()
    }
}

/// Options shared by the constructions.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildOptions {
    pub normalization: Normalization,
    pub parity: Parity,
    pub quadrature_nodes: usize,
    pub checkpoints: usize,
    pub value_noise: Option<ValueNoise>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            normalization: Normalization::B0,
            parity: Parity::Plain,
            quadrature_nodes: DEFAULT_NODES,
            checkpoints: DEFAULT_CHECKPOINTS,
            value_noise: None,
        }
    }
}

impl BuildOptions {
    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.quadrature_nodes = nodes;
        self
    }
}

/// An approximant with its construction diagnostics.
#[derive(Debug, Clone)]
pub struct BuildOutcome<T> {
    pub approximant: RationalApproximant<T>,
    /// 1-norm condition number of the solved system.
    pub condition: T,
    pub report: ApproxReport<T>,
}

/// Orthogonality system of the integral method.
///
/// Unknowns are ordered `a_0..a_n, b_0..b_m`. `homogeneous` holds the
/// `m+n+1` orthogonality rows; `full` appends the normalization row, and the
/// right-hand side of `full` is the last unit vector.
#[derive(Debug, Clone)]
pub struct LinearSystem<T> {
    pub homogeneous: Matrix<T>,
    pub full: Matrix<T>,
    pub rhs: Vec<T>,
}

fn check_parity_domain<T: Real>(parity: Parity, domain: Domain<T>) -> Result<()> {
    if parity != Parity::Plain && !domain.is_symmetric() {
        return Err(Error::InvalidInput(format!(
            "the {} form needs a domain symmetric about the origin",
            parity.name()
        )));
    }
    Ok(())
}

/// Samples the function the rational form actually approximates in `t`.
fn form_target<T: Real>(f: &TargetFunction<T>, parity: Parity, t: T) -> Result<T> {
    let x = f.domain().from_unit(t);
    match parity {
        Parity::Odd => f.eval_reduced_odd(x),
        _ => f.eval(x),
    }
}

pub fn assemble_linear_system<T: Real>(
    f: &TargetFunction<T>,
    m: usize,
    n: usize,
    opts: &BuildOptions,
) -> Result<LinearSystem<T>> {
    check_parity_domain(opts.parity, f.domain())?;
    let s = opts.quadrature_nodes;
    if s == 0 {
        return Err(Error::InvalidInput("quadrature needs at least one node".into()));
    }
    let nodes = gauss_cheb_nodes::<T>(s);
    let mut values = nodes
        .iter()
        .map(|&t| form_target(f, opts.parity, t))
        .collect::<Result<Vec<T>>>()?;
    if let Some(noise) = opts.value_noise {
        for (v, k) in values.iter_mut().zip(noise.factors::<T>(s)) {
            *v = *v * k;
        }
    }
    let step = if opts.parity == Parity::Plain { 1 } else { 2 };
    let weight = T::PI() / T::of_usize(s);
    let cols = m + n + 2;
    let mut h = Matrix::zeros(m + n + 1, cols);
    for k in 0..=m + n {
        let tk: Vec<T> = nodes.iter().map(|&t| cheb_eval(step * k, t)).collect();
        let moment = |power: usize, with_f: bool| -> T {
            let sum: T = nodes
                .iter()
                .zip(&tk)
                .zip(&values)
                .map(|((&t, &c), &v)| {
                    let p = t.powi(power as i32) * c;
                    if with_f {
                        p * v
                    } else {
                        p
                    }
                })
                .sum();
            sum * weight
        };
        for i in 0..=n {
            h[(k, i)] = -moment(step * i, false);
        }
        for j in 0..=m {
            h[(k, n + 1 + j)] = moment(step * j, true);
        }
    }
    let mut full = Matrix::zeros(cols, cols);
    for i in 0..=m + n {
        for j in 0..cols {
            full[(i, j)] = h[(i, j)];
        }
    }
    let pin = match opts.normalization {
        Normalization::B0 => n + 1,
        Normalization::Bm => n + 1 + m,
        Normalization::An => n,
    };
    full[(m + n + 1, pin)] = T::one();
    let mut rhs = vec![T::zero(); cols];
    rhs[cols - 1] = T::one();
    Ok(LinearSystem { homogeneous: h, full, rhs })
}

fn singular_to_failure(e: Error) -> Error {
    match e {
        Error::Singular { pivot } => Error::ConstructionFailure {
            detail: format!("singular system (pivot {pivot})"),
            condition: None,
        },
        other => other,
    }
}

/// Integral (orthogonality) construction on the target's domain.
pub fn build_linear_integral<T: Real>(
    f: &TargetFunction<T>,
    m: usize,
    n: usize,
    opts: &BuildOptions,
) -> Result<BuildOutcome<T>> {
    let sys = assemble_linear_system(f, m, n, opts)?;
    let sol = solve(&sys.full, &sys.rhs).map_err(singular_to_failure)?;
    let condition = sol.condition.ok_or_else(|| Error::ConstructionFailure {
        detail: "condition number unavailable".into(),
        condition: None,
    })?;
    let approximant = RationalApproximant::new(
        Polynomial::new(sol.x[..=n].to_vec()),
        Polynomial::new(sol.x[n + 1..].to_vec()),
        opts.parity,
        f.domain(),
    )?;
    if approximant.denominator().coeffs().iter().all(|&b| b == T::zero()) {
        return Err(Error::ConstructionFailure {
            detail: "denominator vanishes identically".into(),
            condition: Some(condition.as_f64()),
        });
    }
    let report = error_report(f, &approximant, Weight::Absolute, opts.checkpoints)?;
    Ok(BuildOutcome { approximant, condition, report })
}

/// Approximant from a series construction with the condition number of the
/// solved system.
#[derive(Debug, Clone)]
pub struct SeriesOutcome<T> {
    pub approximant: RationalApproximant<T>,
    pub condition: T,
}

fn primed<T: Real>(c: &ChebSeries<T>) -> impl Fn(usize) -> T + '_ {
    let two = T::lit(2.0);
    move |i| if i == 0 { two * c.coeff(0) } else { c.coeff(i) }
}

/// Numerator `a_i = ½ Σ'_j b_j (c_{i+j} + c_{|i-j|})`, `i = 0..n`, primed coefficients.
fn cross_numerator<T: Real>(c: &impl Fn(usize) -> T, b: &[T], n: usize) -> Vec<T> {
    let half = T::lit(0.5);
    (0..=n)
        .map(|i| {
            let mut s = half * b[0] * (c(i) + c(i));
            for (j, &bj) in b.iter().enumerate().skip(1) {
                s = s + bj * (c(i + j) + c(i.abs_diff(j)));
            }
            half * s
        })
        .collect()
}

/// Converts primed Chebyshev numerator/denominator coefficients in `t` into
/// an approximant of the requested form.
fn assemble_form<T: Real>(
    a: Vec<T>,
    b: Vec<T>,
    parity: Parity,
    domain: Domain<T>,
) -> Result<RationalApproximant<T>> {
    let p = cheb_to_monomial(&ChebSeries::from_primed(a))?;
    let q = cheb_to_monomial(&ChebSeries::from_primed(b))?;
    let pick = |poly: &Polynomial<T>, offset: usize| {
        Polynomial::new(poly.coeffs().iter().skip(offset).step_by(2).copied().collect())
    };
    let (num, den) = match parity {
        Parity::Plain => (p, q),
        Parity::Even => (pick(&p, 0), pick(&q, 0)),
        Parity::Odd => (pick(&p, 1), pick(&q, 0)),
    };
    RationalApproximant::new(num, den, parity, domain)
}

/// Linear Padé-Chebyshev approximant from Chebyshev coefficients by the
/// cross-multiplied scheme, `Q(t) = 1 + ...` before form extraction.
///
/// `c` is in the plain-sum convention and is treated as zero past its end.
/// Even and odd forms are obtained through plain degrees `(2m, 2n)` and
/// `(2m, 2n+1)`.
pub fn build_linear_cross<T: Real>(
    c: &ChebSeries<T>,
    m: usize,
    n: usize,
    parity: Parity,
    domain: Domain<T>,
) -> Result<SeriesOutcome<T>> {
    check_parity_domain(parity, domain)?;
    let (pm, pn) = parity.plain_degrees(m, n);
    let cp = primed(c);
    let mut b = vec![T::lit(2.0)];
    let mut condition = T::one();
    if pm > 0 {
        let mut rows = Vec::with_capacity(pm);
        let mut rhs = Vec::with_capacity(pm);
        for i in pn + 1..=pn + pm {
            rows.push((1..=pm).map(|j| cp(i + j) + cp(i.abs_diff(j))).collect());
            rhs.push(-b[0] * cp(i));
        }
        let sys = Matrix::from_rows(rows)?;
        let sol = solve(&sys, &rhs).map_err(singular_to_failure)?;
        condition = sol.condition.unwrap_or_else(T::infinity);
        b.extend(sol.x);
    }
    let a = cross_numerator(&cp, &b, pn);
    Ok(SeriesOutcome { approximant: assemble_form(a, b, parity, domain)?, condition })
}

/// Nonlinear Padé-Chebyshev approximant from Chebyshev coefficients.
///
/// Solves `Σ_{j=0..m} γ_j c_{|k-j|} = 0`, `k = n+1..n+m`, `γ_0 = 1`, forms
/// `b_j = μ Σ_i γ_i γ_{i+j}` with `1/μ = ½ Σ γ_i²` and takes the numerator from
/// the cross-multiplied relation. The reported condition number is that of
/// the γ system.
pub fn build_nonlinear<T: Real>(
    c: &ChebSeries<T>,
    m: usize,
    n: usize,
    parity: Parity,
    domain: Domain<T>,
) -> Result<SeriesOutcome<T>> {
    check_parity_domain(parity, domain)?;
    let (pm, pn) = parity.plain_degrees(m, n);
    let cp = primed(c);
    let mut g = vec![T::one()];
    let mut condition = T::one();
    if pm > 0 {
        let mut rows = Vec::with_capacity(pm);
        let mut rhs = Vec::with_capacity(pm);
        for k in pn + 1..=pn + pm {
            rows.push((1..=pm).map(|j| cp(k.abs_diff(j))).collect());
            rhs.push(-cp(k));
        }
        let sys = Matrix::from_rows(rows)?;
        let sol = solve(&sys, &rhs).map_err(|e| match e {
            Error::Singular { .. } => Error::Nonexistence { m, n },
            other => other,
        })?;
        condition = sol.condition.unwrap_or_else(T::infinity);
        g.extend(sol.x);
    }
    let half = T::lit(0.5);
    let mu = T::one() / (half * g.iter().map(|&v| v * v).sum::<T>());
    let b: Vec<T> = (0..=pm)
        .map(|j| mu * (0..=pm - j).map(|i| g[i] * g[i + j]).sum::<T>())
        .collect();
    let a = cross_numerator(&cp, &b, pn);
    let approximant = assemble_form(a, b, parity, domain)?;
    Ok(SeriesOutcome { approximant, condition })
}

/// Numerator of degree `n` matching a given plain-form denominator: the
/// first `n+1` Chebyshev coefficients of `c·Q`, as a polynomial in `t`.
pub fn series_numerator<T: Real>(
    c: &ChebSeries<T>,
    q: &Polynomial<T>,
    n: usize,
) -> Result<Polynomial<T>> {
    let prod = cheb_multiply(c, &monomial_to_cheb(q)?);
    cheb_to_monomial(&ChebSeries::new((0..=n).map(|i| prod.coeff(i)).collect()))
}

/// Chebyshev coefficients `c_0..c_k` of the degree-`n_terms` Taylor partial sum.
///
/// Truncating the Chebyshev expansion of the partial sum is the same as
/// economizing it down to degree `k`.
pub fn taylor_to_cheb_truncated<T: Real>(
    t: &TaylorSeries<T>,
    n_terms: usize,
    k: usize,
) -> Result<ChebSeries<T>> {
    if n_terms < k {
        return Err(Error::InvalidInput(format!(
            "Taylor degree {n_terms} is below the requested Chebyshev degree {k}"
        )));
    }
    let s = monomial_to_cheb(&t.truncated(n_terms))?;
    Ok(ChebSeries::new((0..=k).map(|i| s.coeff(i)).collect()))
}

/// Chebyshev coefficients of the target in its reference variable.
pub fn target_cheb_coeffs<T: Real>(
    f: &TargetFunction<T>,
    k_max: usize,
    nodes: usize,
    noise: Option<ValueNoise>,
) -> Result<ChebSeries<T>> {
    let ts = gauss_cheb_nodes::<T>(nodes);
    let mut values = ts
        .iter()
        .map(|&t| f.eval(f.domain().from_unit(t)))
        .collect::<Result<Vec<T>>>()?;
    if let Some(noise) = noise {
        for (v, k) in values.iter_mut().zip(noise.factors::<T>(nodes)) {
            *v = *v * k;
        }
    }
    Ok(crate::cheb::coeffs_from_samples(&ts, &values, k_max))
}

/// Number of Chebyshev coefficients consumed by the series schemes.
pub fn series_length(parity: Parity, m: usize, n: usize) -> usize {
    let (pm, pn) = parity.plain_degrees(m, n);
    pn + 2 * pm + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::Builtin;
    use proptest::prelude::*;

    fn exp_target() -> TargetFunction<f64> {
        TargetFunction::builtin(Builtin::Exp, Domain::unit())
    }

    #[test]
    fn polynomial_case_matches_chebyshev_truncation() {
        // With m = 0 the integral method returns the truncated Chebyshev series.
        let f = exp_target();
        let out = build_linear_integral(&f, 0, 5, &BuildOptions::default()).unwrap();
        let c = target_cheb_coeffs(&f, 5, 128, None).unwrap();
        let p = cheb_to_monomial(&c).unwrap();
        let b0 = out.approximant.denominator().coeff(0);
        for i in 0..=5 {
            assert!((out.approximant.numerator().coeff(i) / b0 - p.coeff(i)).abs() < 1e-13);
        }
    }

    #[test]
    fn exp_two_two_error() {
        let out = build_linear_integral(&exp_target(), 2, 2, &BuildOptions::default()).unwrap();
        let d = out.report.abs_error;
        assert!((d - 1.88e-4).abs() < 0.05 * 1.88e-4, "{d}");
    }

    #[test]
    fn cross_and_integral_agree() {
        let f = exp_target();
        let c = target_cheb_coeffs(&f, 12, 128, None).unwrap();
        let cross = build_linear_cross(&c, 3, 3, Parity::Plain, Domain::unit()).unwrap();
        let int = build_linear_integral(&f, 3, 3, &BuildOptions::default()).unwrap();
        for &x in &[-1.0, -0.4, 0.2, 0.9] {
            assert!((cross.approximant.eval(x) - int.approximant.eval(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn nonlinear_denominator_constant_is_two_in_primed_form() {
        let c = target_cheb_coeffs(&exp_target(), 12, 128, None).unwrap();
        let out = build_nonlinear(&c, 3, 3, Parity::Plain, Domain::unit()).unwrap();
        let cheb_q = monomial_to_cheb(out.approximant.denominator()).unwrap();
        assert!((cheb_q.to_primed()[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn parity_forms_need_symmetric_domains() {
        let f = TargetFunction::builtin(Builtin::Exp, Domain::new(0.0, 1.0).unwrap());
        let opts = BuildOptions::default().with_parity(Parity::Even);
        assert!(matches!(build_linear_integral(&f, 1, 1, &opts), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn noise_is_deterministic() {
        let f = exp_target();
        let mut opts = BuildOptions::default();
        opts.value_noise = Some(ValueNoise { epsilon: 1e-8, seed: 7 });
        let a = build_linear_integral(&f, 2, 2, &opts).unwrap();
        let b = build_linear_integral(&f, 2, 2, &opts).unwrap();
        assert_eq!(a.approximant, b.approximant);
    }

    #[test]
    fn taylor_truncation_checks_order() {
        let t = Builtin::Exp.taylor::<f64>(10).unwrap();
        assert!(taylor_to_cheb_truncated(&t, 3, 5).is_err());
        let c = taylor_to_cheb_truncated(&t, 10, 10).unwrap();
        let back = cheb_to_monomial(&c).unwrap();
        for i in 0..=10 {
            assert!((back.coeff(i) - t.coeff(i as isize)).abs() < 1e-15);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn normalizations_give_same_function(m in 1usize..4, n in 0usize..4) {
            let f = exp_target();
            let a = build_linear_integral(&f, m, n, &BuildOptions::default()).unwrap();
            let b = build_linear_integral(
                &f, m, n, &BuildOptions::default().with_normalization(Normalization::Bm)).unwrap();
            for &x in &[-1.0, -0.3, 0.5, 1.0] {
                prop_assert!((a.approximant.eval(x) - b.approximant.eval(x)).abs() < 1e-10);
            }
        }

        #[test]
        fn rational_in_span_and_orthogonal(m in 0usize..3, n in 0usize..4, k in 0.5..2.0f64) {
            // The error f·Q - P is orthogonal to T_0..T_{m+n}.
            let f = TargetFunction::from_fn("e", move |x: f64| (k * x).exp(), Domain::unit());
            let out = build_linear_integral(&f, m, n, &BuildOptions::default()).unwrap();
            let r = &out.approximant;
            for j in 0..=m + n {
                let ip = crate::cheb::gauss_cheb_quadrature(|t: f64| {
                    let q = r.denominator().eval(t);
                    Ok(((k * t).exp() * q - r.numerator().eval(t)) * cheb_eval(j, t))
                }, 128).unwrap();
                prop_assert!(ip.abs() < 1e-12);
            }
        }
    }
}
