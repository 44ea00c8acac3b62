//! Functions to be approximated.

use std::fmt;
use std::sync::Arc;

use crate::cheb::{ChebSeries, Domain};
use crate::error::{Error, Result};
use crate::modeling::Spline;
use crate::pade::TaylorSeries;
use crate::rational::Parity;
use crate::scalar::Real;

/// Built-in elementary functions. The scaled variants compute `f(πx/k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    Sqrt,
    Exp,
    Exp10,
    Ln,
    Lg,
    Sin,
    Cos,
    Tan,
    Atan,
    Asin,
    SinScaled(f64),
    CosScaled(f64),
    TanScaled(f64),
}

/// Divisor used by the scaled variants when none is given.
pub const DEFAULT_DIVISOR: f64 = 4.0;

impl Builtin {
    /// Parses `name` or `name:k` (divisor for the scaled variants).
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let divisor = || -> Result<f64> {
            match arg {
                None => Ok(DEFAULT_DIVISOR),
                Some(a) => a
                    .parse::<f64>()
                    .ok()
                    .filter(|k| k.is_finite() && *k != 0.0)
                    .ok_or_else(|| Error::InvalidInput(format!("bad divisor '{a}'"))),
            }
        };
        let plain = |b: Self| {
            if arg.is_some() {
                Err(Error::InvalidInput(format!("'{name}' takes no divisor")))
            } else {
                Ok(b)
            }
        };
        match name {
            "sqrt" => plain(Self::Sqrt),
            "exp" => plain(Self::Exp),
            "exp10" => plain(Self::Exp10),
            "ln" => plain(Self::Ln),
            "lg" => plain(Self::Lg),
            "sin" => plain(Self::Sin),
            "cos" => plain(Self::Cos),
            "tan" => plain(Self::Tan),
            "atan" => plain(Self::Atan),
            "asin" => plain(Self::Asin),
            "sin-scaled" => Ok(Self::SinScaled(divisor()?)),
            "cos-scaled" => Ok(Self::CosScaled(divisor()?)),
            "tan-scaled" => Ok(Self::TanScaled(divisor()?)),
            _ => Err(Error::InvalidInput(format!("unknown function '{name}'"))),
        }
    }

    pub fn eval<T: Real>(self, x: T) -> T {
        let scaled = |k: f64| T::PI() * x / T::lit(k);
        match self {
            Self::Sqrt => x.sqrt(),
            Self::Exp => x.exp(),
            Self::Exp10 => T::lit(10.0).powf(x),
            Self::Ln => x.ln(),
            Self::Lg => x.log10(),
            Self::Sin => x.sin(),
            Self::Cos => x.cos(),
            Self::Tan => x.tan(),
            Self::Atan => x.atan(),
            Self::Asin => x.asin(),
            Self::SinScaled(k) => scaled(k).sin(),
            Self::CosScaled(k) => scaled(k).cos(),
            Self::TanScaled(k) => scaled(k).tan(),
        }
    }

    /// Symmetry about the origin, if any.
    pub fn symmetry(self) -> Parity {
        match self {
            Self::Cos | Self::CosScaled(_) => Parity::Even,
            Self::Sin | Self::Tan | Self::Atan | Self::Asin | Self::SinScaled(_) | Self::TanScaled(_) => {
                Parity::Odd
            }
            _ => Parity::Plain,
        }
    }

    /// `f'(0)` for the odd builtins.
    fn slope_at_zero<T: Real>(self) -> Option<T> {
        match self {
            Self::Sin | Self::Tan | Self::Atan | Self::Asin => Some(T::one()),
            Self::SinScaled(k) | Self::TanScaled(k) => Some(T::PI() / T::lit(k)),
            _ => None,
        }
    }

    /// Taylor coefficients `c_0..c_{degree}` about the origin, where known.
    pub fn taylor<T: Real>(self, degree: usize) -> Option<TaylorSeries<T>> {
        let len = degree + 1;
        let factorial_series = |rate: T| {
            let mut c = vec![T::one()];
            for i in 1..len {
                let prev = c[i - 1];
                c.push(prev * rate / T::of_usize(i));
            }
            c
        };
        // sin/cos from the exponential coefficients of rate s.
        let trig = |s: T, even: bool| {
            factorial_series(s)
                .into_iter()
                .enumerate()
                .map(|(i, v)| match (i % 4, even) {
                    (0, true) | (1, false) => v,
                    (2, true) | (3, false) => -v,
                    _ => T::zero(),
                })
                .collect::<Vec<T>>()
        };
        let tan = |s: T| {
            // t' = 1 + t², t(0) = 0.
            let mut a = vec![T::zero(); len];
            for k in 0..len.saturating_sub(1) {
                let mut acc = if k == 0 { T::one() } else { T::zero() };
                for i in 0..=k {
                    acc = acc + a[i] * a[k - i];
                }
                a[k + 1] = acc / T::of_usize(k + 1);
            }
            let mut p = T::one();
            for v in a.iter_mut() {
                *v = *v * p;
                p = p * s;
            }
            a
        };
        let coeffs = match self {
            Self::Exp => factorial_series(T::one()),
            Self::Exp10 => factorial_series(T::LN_10()),
            Self::Sin => trig(T::one(), false),
            Self::Cos => trig(T::one(), true),
            Self::SinScaled(k) => trig(T::PI() / T::lit(k), false),
            Self::CosScaled(k) => trig(T::PI() / T::lit(k), true),
            Self::Tan => tan(T::one()),
            Self::TanScaled(k) => tan(T::PI() / T::lit(k)),
            Self::Atan => (0..len)
                .map(|i| match i % 4 {
                    1 => T::one() / T::of_usize(i),
                    3 => -T::one() / T::of_usize(i),
                    _ => T::zero(),
                })
                .collect(),
            _ => return None,
        };
        Some(TaylorSeries::new(coeffs))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sqrt => write!(f, "sqrt"),
            Self::Exp => write!(f, "exp"),
            Self::Exp10 => write!(f, "exp10"),
            Self::Ln => write!(f, "ln"),
            Self::Lg => write!(f, "lg"),
            Self::Sin => write!(f, "sin"),
            Self::Cos => write!(f, "cos"),
            Self::Tan => write!(f, "tan"),
            Self::Atan => write!(f, "atan"),
            Self::Asin => write!(f, "asin"),
            Self::SinScaled(k) => write!(f, "sin-scaled:{k}"),
            Self::CosScaled(k) => write!(f, "cos-scaled:{k}"),
            Self::TanScaled(k) => write!(f, "tan-scaled:{k}"),
        }
    }
}

type Closure<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

#[derive(Clone)]
enum Source<T: Real> {
    Builtin(Builtin),
    Taylor(TaylorSeries<T>),
    Chebyshev(ChebSeries<T>),
    Samples(Spline<T>),
    Custom { name: String, f: Closure<T> },
}

/// A function on a domain, with an optional symmetry hint.
#[derive(Clone)]
pub struct TargetFunction<T: Real> {
    source: Source<T>,
    domain: Domain<T>,
    symmetry: Parity,
}

impl<T: Real> fmt::Debug for TargetFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("name", &self.name())
            .field("domain", &self.domain)
            .field("symmetry", &self.symmetry)
            .finish()
    }
}

impl<T: Real> TargetFunction<T> {
    pub fn builtin(b: Builtin, domain: Domain<T>) -> Self {
        Self { source: Source::Builtin(b), domain, symmetry: b.symmetry() }
    }

    /// Taylor series about the origin, evaluated as its partial sum.
    pub fn taylor(t: TaylorSeries<T>, domain: Domain<T>) -> Self {
        Self { source: Source::Taylor(t), domain, symmetry: Parity::Plain }
    }

    /// Chebyshev series in the reference variable of `domain`.
    pub fn chebyshev(s: ChebSeries<T>, domain: Domain<T>) -> Self {
        Self { source: Source::Chebyshev(s), domain, symmetry: Parity::Plain }
    }

    /// Interpolating spline over its own knot range.
    pub fn samples(s: Spline<T>) -> Self {
        let domain = s.domain();
        Self { source: Source::Samples(s), domain, symmetry: Parity::Plain }
    }

    pub fn from_fn<F>(name: &str, f: F, domain: Domain<T>) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            source: Source::Custom { name: name.to_string(), f: Arc::new(f) },
            domain,
            symmetry: Parity::Plain,
        }
    }

    /// Declares the function even or odd about the origin.
    pub fn with_symmetry(mut self, symmetry: Parity) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn with_domain(mut self, domain: Domain<T>) -> Self {
        self.domain = domain;
        self
    }

    pub fn domain(&self) -> Domain<T> {
        self.domain
    }

    pub fn symmetry(&self) -> Parity {
        self.symmetry
    }

    pub fn builtin_kind(&self) -> Option<Builtin> {
        match self.source {
            Source::Builtin(b) => Some(b),
            _ => None,
        }
    }

    /// Taylor coefficients about the origin, when the source provides them.
    pub fn taylor_series(&self, degree: usize) -> Option<TaylorSeries<T>> {
        match &self.source {
            Source::Builtin(b) => b.taylor(degree),
            Source::Taylor(t) => Some(TaylorSeries::new(
                (0..=degree).map(|i| t.coeff(i as isize)).collect(),
            )),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.source {
            Source::Builtin(b) => b.to_string(),
            Source::Taylor(_) => "taylor".into(),
            Source::Chebyshev(_) => "chebyshev".into(),
            Source::Samples(_) => "samples".into(),
            Source::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, x: T) -> Result<T> {
        let v = match &self.source {
            Source::Builtin(b) => b.eval(x),
            Source::Taylor(t) => t.eval(x),
            Source::Chebyshev(s) => s.eval(self.domain.to_unit(x)),
            Source::Samples(s) => s.eval(x),
            Source::Custom { f, .. } => f(x),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { x: x.as_f64(), reason: format!("{} is not finite", self.name()) })
        }
    }

    /// `f(x)/t` with `t = to_unit(x)`, continuous through the origin.
    ///
    /// At `t = 0` the value comes from the known slope for builtins and from
    /// even quadratic extrapolation of two nearby values otherwise.
    pub fn eval_reduced_odd(&self, x: T) -> Result<T> {
        let t = self.domain.to_unit(x);
        if t != T::zero() {
            return Ok(self.eval(x)? / t);
        }
        let half = (self.domain.b() - self.domain.a()) / T::lit(2.0);
        if let Some(b) = self.builtin_kind() {
            if let Some(s) = b.slope_at_zero::<T>() {
                return Ok(s * half);
            }
        }
        let h = T::lit(1e-4);
        let phi = |tt: T| -> Result<T> { Ok(self.eval(self.domain.from_unit(tt))? / tt) };
        Ok((T::lit(4.0) * phi(h)? - phi(h + h)?) / T::lit(3.0))
    }
}
