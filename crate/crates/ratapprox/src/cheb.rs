//! Chebyshev polynomials, basis conversion, economization and
//! Gauss-Chebyshev quadrature.
//!
//! Chebyshev coefficient vectors use the plain-sum convention throughout:
//! `f ≈ Σ c_k T_k`, with `c_0` already carrying the factor `1/π`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest polynomial degree accepted by the basis conversions.
pub const DEGREE_CAP: usize = 64;

/// Default number of Gauss-Chebyshev quadrature nodes.
pub const DEFAULT_NODES: usize = 128;

/// Polynomial in the monomial basis, lowest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![T::zero()] } else { coeffs };
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![T::zero()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Structural degree: number of stored coefficients minus one.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Self::new(out)
    }

    /// Substitutes `x -> x^2`.
    pub fn in_square(&self) -> Self {
        let mut out = vec![T::zero(); 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c;
        }
        Self::new(out)
    }

    /// Multiplies by `x`.
    pub fn shift_up(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(T::zero());
        out.extend_from_slice(&self.coeffs);
        Self::new(out)
    }
}

/// Series in Chebyshev polynomials of the first kind (plain-sum convention).
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Real> ChebSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![T::zero()] } else { coeffs };
        Self { coeffs }
    }

    /// Builds a series from coefficients whose leading term is halved on use
    /// (`c_0/2 + Σ c_k T_k`).
    pub fn from_primed(mut coeffs: Vec<T>) -> Self {
        if let Some(c0) = coeffs.first_mut() {
            *c0 = *c0 / T::lit(2.0);
        }
        Self::new(coeffs)
    }

    /// Coefficients in the primed convention (`c_0` doubled).
    pub fn to_primed(&self) -> Vec<T> {
        let mut c = self.coeffs.clone();
        c[0] = c[0] * T::lit(2.0);
        c
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or_else(T::zero)
    }

    /// Keeps the terms up to and including degree `k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().take(k + 1).copied().collect())
    }

    /// Clenshaw summation.
    pub fn eval(&self, x: T) -> T {
        let two_x = x + x;
        let (mut b1, mut b2) = (T::zero(), T::zero());
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + x * b1 - b2
    }
}

/// Closed interval `[a, b]` with its affine map onto `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<T> {
    a: T,
    b: T,
}

impl<T: Real> Domain<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::InvalidInput(format!(
                "domain needs finite a < b, got [{a}, {b}]"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn unit() -> Self {
        Self { a: -T::one(), b: T::one() }
    }

    pub fn symmetric(half_width: T) -> Result<Self> {
        Self::new(-half_width, half_width)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == -self.b
    }

    pub fn to_unit(&self, x: T) -> T {
        (x + x - self.a - self.b) / (self.b - self.a)
    }

    pub fn from_unit(&self, t: T) -> T {
        ((self.b - self.a) * t + self.a + self.b) / T::lit(2.0)
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.a && x <= self.b
    }

    /// `count + 1` equally spaced points including both endpoints.
    pub fn grid(&self, count: usize) -> Vec<T> {
        let count = count.max(1);
        let h = (self.b - self.a) / T::of_usize(count);
        (0..=count)
            .map(|i| if i == count { self.b } else { self.a + h * T::of_usize(i) })
            .collect()
    }
}

/// `T_n(x)` by the three-term recurrence.
pub fn cheb_eval<T: Real>(n: usize, x: T) -> T {
    let (mut t0, mut t1) = (T::one(), x);
    if n == 0 {
        return t0;
    }
    for _ in 1..n {
        let t2 = (x + x) * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    t1
}

/// Monomial coefficients of `T_n`, built with the recurrence.
pub fn cheb_monomial<T: Real>(n: usize) -> Result<Polynomial<T>> {
    check_cap(n)?;
    let mut prev = vec![T::one()];
    if n == 0 {
        return Ok(Polynomial::new(prev));
    }
    let mut cur = vec![T::zero(), T::one()];
    for _ in 1..n {
        let mut next = vec![T::zero(); cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] = next[i + 1] + c + c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] = next[i] - c;
        }
        prev = cur;
        cur = next;
    }
    Ok(Polynomial::new(cur))
}

fn check_cap(degree: usize) -> Result<()> {
    if degree > DEGREE_CAP {
        Err(Error::DegreeOverCap { degree, cap: DEGREE_CAP })
    } else {
        Ok(())
    }
}

/// Expresses a monomial-basis polynomial as a Chebyshev series.
///
/// Uses `x^m = 2^{1-m} Σ_k' C(m,k) T_{m-2k}` with the central term halved.
pub fn monomial_to_cheb<T: Real>(p: &Polynomial<T>) -> Result<ChebSeries<T>> {
    let deg = p.degree();
    check_cap(deg)?;
    let mut out = vec![T::zero(); deg + 1];
    let two = T::lit(2.0);
    for (m, &pm) in p.coeffs().iter().enumerate() {
        if pm == T::zero() {
            continue;
        }
        if m == 0 {
            out[0] = out[0] + pm;
            continue;
        }
        let scale = two.powi(1 - m as i32);
        let mut binom = T::one();
        for k in 0..=m / 2 {
            if k > 0 {
                binom = binom * T::of_usize(m - k + 1) / T::of_usize(k);
            }
            let mut term = scale * binom;
            if 2 * k == m {
                term = term / two;
            }
            out[m - 2 * k] = out[m - 2 * k] + pm * term;
        }
    }
    Ok(ChebSeries::new(out))
}

/// Expands a Chebyshev series in the monomial basis.
///
/// Uses `T_m = Σ_k (-1)^k 2^{m-2k-1} m/(m-k) C(m-k,k) x^{m-2k}` for `m ≥ 1`.
pub fn cheb_to_monomial<T: Real>(s: &ChebSeries<T>) -> Result<Polynomial<T>> {
    let deg = s.degree();
    check_cap(deg)?;
    let mut out = vec![T::zero(); deg + 1];
    let two = T::lit(2.0);
    out[0] = s.coeff(0);
    for m in 1..=deg {
        let cm = s.coeff(m);
        if cm == T::zero() {
            continue;
        }
        // C(m-k, k) updated multiplicatively in k.
        let mut binom = T::one();
        for k in 0..=m / 2 {
            if k > 0 {
                let num = (m - 2 * k + 2) * (m - 2 * k + 1);
                binom = binom * T::of_usize(num) / (T::of_usize(k) * T::of_usize(m - k + 1));
            }
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            let power = two.powi(m as i32 - 2 * k as i32 - 1);
            let term = sign * power * T::of_usize(m) / T::of_usize(m - k) * binom;
            out[m - 2 * k] = out[m - 2 * k] + cm * term;
        }
    }
    Ok(Polynomial::new(out))
}

/// Reduces a polynomial to degree `target` by repeatedly subtracting the
/// scaled Chebyshev polynomial of the current leading degree.
pub fn economize<T: Real>(p: &Polynomial<T>, target: usize) -> Result<Polynomial<T>> {
    let deg = p.degree();
    if target > deg {
        return Err(Error::InvalidInput(format!(
            "economization target {target} exceeds degree {deg}"
        )));
    }
    check_cap(deg)?;
    let mut c = p.coeffs().to_vec();
    for d in (target + 1..=deg).rev() {
        let lead = c[d];
        if lead == T::zero() {
            continue;
        }
        let t = cheb_monomial::<T>(d)?;
        let scale = lead / t.coeff(d);
        for (i, &ti) in t.coeffs().iter().enumerate() {
            c[i] = c[i] - scale * ti;
        }
        c[d] = T::zero();
    }
    c.truncate(target + 1);
    Ok(Polynomial::new(c))
}

/// Gauss-Chebyshev nodes `cos((2i-1)π/(2s))`, `i = 1..s`.
pub fn gauss_cheb_nodes<T: Real>(s: usize) -> Vec<T> {
    let pi = T::PI();
    let two_s = T::of_usize(2 * s);
    (1..=s)
        .map(|i| (T::of_usize(2 * i - 1) * pi / two_s).cos())
        .collect()
}

/// Approximates `∫_{-1}^{1} φ(x)/sqrt(1-x²) dx` with an `s`-node Gauss-Chebyshev rule.
pub fn gauss_cheb_quadrature<T, F>(mut phi: F, s: usize) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if s == 0 {
        return Err(Error::InvalidInput("quadrature needs at least one node".into()));
    }
    let mut sum = T::zero();
    for x in gauss_cheb_nodes::<T>(s) {
        sum = sum + phi(x)?;
    }
    Ok(sum * T::PI() / T::of_usize(s))
}

/// Fourier-Chebyshev coefficients `c_0..c_{k_max}` of `g` on `[-1, 1]`,
/// computed from one set of `s` quadrature samples.
pub fn fourier_cheb_coeffs<T, F>(mut g: F, k_max: usize, s: usize) -> Result<ChebSeries<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if s == 0 {
        return Err(Error::InvalidInput("quadrature needs at least one node".into()));
    }
    let nodes = gauss_cheb_nodes::<T>(s);
    let values = nodes.iter().map(|&x| g(x)).collect::<Result<Vec<T>>>()?;
    Ok(coeffs_from_samples(&nodes, &values, k_max))
}

pub(crate) fn coeffs_from_samples<T: Real>(nodes: &[T], values: &[T], k_max: usize) -> ChebSeries<T> {
    let s = T::of_usize(nodes.len());
    let two = T::lit(2.0);
    let coeffs = (0..=k_max)
        .map(|k| {
            let sum: T = nodes
                .iter()
                .zip(values)
                .map(|(&x, &v)| v * cheb_eval(k, x))
                .sum();
            if k == 0 {
                sum / s
            } else {
                two * sum / s
            }
        })
        .collect();
    ChebSeries::new(coeffs)
}

/// Evaluates a Chebyshev series.
pub fn cheb_series_eval<T: Real>(s: &ChebSeries<T>, x: T) -> T {
    s.eval(x)
}

/// Product of two Chebyshev series via `T_i T_j = (T_{i+j} + T_{|i-j|})/2`.
pub fn cheb_multiply<T: Real>(a: &ChebSeries<T>, b: &ChebSeries<T>) -> ChebSeries<T> {
    let mut out = vec![T::zero(); a.degree() + b.degree() + 1];
    let half = T::lit(0.5);
    for (i, &ai) in a.coeffs().iter().enumerate() {
        for (j, &bj) in b.coeffs().iter().enumerate() {
            let p = half * ai * bj;
            out[i + j] = out[i + j] + p;
            let d = i.abs_diff(j);
            out[d] = out[d] + p;
        }
    }
    ChebSeries::new(out)
}
