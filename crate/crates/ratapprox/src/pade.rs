//! Classical Padé approximants from Taylor coefficients about the origin.

use crate::cheb::{Domain, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::rational::{Parity, RationalApproximant};
use crate::scalar::Real;

/// Taylor coefficients `c_0, c_1, ...` about the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Real> TaylorSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![T::zero()] } else { coeffs };
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficient `c_i`, zero beyond the stored terms and for negative indices.
    pub fn coeff(&self, i: isize) -> T {
        if i < 0 {
            T::zero()
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or_else(T::zero)
        }
    }

    /// Partial sum of degree `degree`.
    pub fn truncated(&self, degree: usize) -> Polynomial<T> {
        Polynomial::new((0..=degree).map(|i| self.coeff(i as isize)).collect())
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }
}

/// Padé approximant `[n/m]` with `b_0 = 1`, defined on `[-1, 1]` with `t = x`.
///
/// The denominator solves `Σ_{j=1..m} c_{n+k-j} b_j = -c_{n+k}` for
/// `k = 1..m`; the numerator follows from `a_i = Σ_{k≤i} b_k c_{i-k}`.
pub fn pade_from_taylor<T: Real>(
    t: &TaylorSeries<T>,
    m: usize,
    n: usize,
) -> Result<RationalApproximant<T>> {
    if t.len() < m + n + 1 {
        return Err(Error::InvalidInput(format!(
            "({m},{n}) Padé needs {} Taylor coefficients, got {}",
            m + n + 1,
            t.len()
        )));
    }
    let mut b = vec![T::one()];
    if m > 0 {
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for k in 1..=m {
            rows.push(
                (1..=m)
                    .map(|j| t.coeff(n as isize + k as isize - j as isize))
                    .collect(),
            );
            rhs.push(-t.coeff((n + k) as isize));
        }
        let a = Matrix::from_rows(rows)?;
        let sol = solve(&a, &rhs).map_err(|e| match e {
            Error::Singular { .. } => Error::DegeneratePade { m, n },
            other => other,
        })?;
        b.extend(sol.x);
    }
    let b = Polynomial::new(b);
    RationalApproximant::new(pade_numerator(t, &b, n), b, Parity::Plain, Domain::unit())
}

/// Padé approximant on `[-h, h]`, built from the series in `t = x/h`.
pub fn pade_on_domain<T: Real>(
    t: &TaylorSeries<T>,
    m: usize,
    n: usize,
    domain: Domain<T>,
) -> Result<RationalApproximant<T>> {
    if !domain.is_symmetric() {
        return Err(Error::InvalidInput("Padé approximants need a domain centred at 0".into()));
    }
    let h = domain.b();
    let mut scale = T::one();
    let scaled = TaylorSeries::new(
        t.coeffs()
            .iter()
            .map(|&c| {
                let v = c * scale;
                scale = scale * h;
                v
            })
            .collect(),
    );
    let r = pade_from_taylor(&scaled, m, n)?;
    RationalApproximant::new(r.numerator().clone(), r.denominator().clone(), Parity::Plain, domain)
}

/// Numerator `a_i = Σ_{k≤i} b_k c_{i-k}`, `i = 0..n`, for a given denominator.
pub fn pade_numerator<T: Real>(t: &TaylorSeries<T>, b: &Polynomial<T>, n: usize) -> Polynomial<T> {
    Polynomial::new(
        (0..=n)
            .map(|i| {
                (0..=i.min(b.degree()))
                    .map(|k| b.coeff(k) * t.coeff((i - k) as isize))
                    .sum()
            })
            .collect(),
    )
}

/// First-vanishing-order result for a formal power series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VanishingOrder {
    /// Both inputs coincide, so there is nothing to measure.
    Degenerate,
    /// First index whose coefficient does not vanish.
    Order(usize),
    /// Every coefficient below this length vanishes.
    AtLeast(usize),
}

/// Relative cancellation threshold for deciding that a coefficient vanishes.
pub(crate) const VANISH_REL: f64 = 1e-6;

/// Taylor coefficients of `Q·f - P` together with the magnitude of the terms
/// that cancel in each one.
pub(crate) fn residual_series<T: Real>(
    t: &TaylorSeries<T>,
    num: &Polynomial<T>,
    den: &Polynomial<T>,
) -> Vec<(T, T)> {
    (0..t.len())
        .map(|i| {
            let mut v = -num.coeff(i);
            let mut scale = num.coeff(i).abs();
            for k in 0..=i.min(den.degree()) {
                let term = den.coeff(k) * t.coeff((i - k) as isize);
                v = v + term;
                scale = scale + term.abs();
            }
            (v, scale)
        })
        .collect()
}

pub(crate) fn first_nonvanishing<T: Real>(series: &[(T, T)]) -> VanishingOrder {
    let tol = T::lit(VANISH_REL);
    series
        .iter()
        .position(|&(v, s)| v.abs() > tol * s && v != T::zero())
        .map_or(VanishingOrder::AtLeast(series.len()), VanishingOrder::Order)
}

/// Index of the first Taylor coefficient of `Q·f - P` that does not cancel.
///
/// A coefficient counts as vanishing when it is below `1e-6` times the sum of
/// magnitudes of the terms that produce it.
pub fn pade_residual_order<T: Real>(
    t: &TaylorSeries<T>,
    r: &RationalApproximant<T>,
) -> VanishingOrder {
    first_nonvanishing(&residual_series(t, &r.plain_numerator(), &r.plain_denominator()))
}
