//! Rational approximants `P/Q` in plain, even and odd forms.

use crate::cheb::{Domain, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Structural form of an approximant in the reference variable `t`.
///
/// * `Plain`: `P(t)/Q(t)`
/// * `Even`: `P(t²)/Q(t²)`
/// * `Odd`: `t·P(t²)/Q(t²)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Plain,
    Even,
    Odd,
}

impl Parity {
    /// Degrees of the equivalent plain approximant for form degrees `(m, n)`.
    pub fn plain_degrees(self, m: usize, n: usize) -> (usize, usize) {
        match self {
            Parity::Plain => (m, n),
            Parity::Even => (2 * m, 2 * n),
            Parity::Odd => (2 * m, 2 * n + 1),
        }
    }

    /// Length of the alternation set that characterizes a best approximation.
    pub fn required_alternation(self, m: usize, n: usize) -> usize {
        let (pm, pn) = self.plain_degrees(m, n);
        pm + pn + 2
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Plain => "plain",
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Which coefficient is fixed to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `b_0 = 1`
    B0,
    /// `b_m = 1`
    Bm,
    /// `a_n = 1`
    An,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::B0 => "b0",
            Normalization::Bm => "bm",
            Normalization::An => "an",
        }
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b0" => Ok(Self::B0),
            "bm" => Ok(Self::Bm),
            "an" => Ok(Self::An),
            _ => Err(Error::InvalidInput(format!("unknown normalization '{s}'"))),
        }
    }
}

/// Rational function `P/Q` on a domain, with polynomials expressed in the
/// reference variable (`t = to_unit(x)`, or `t²` for even and odd forms).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalApproximant<T> {
    numerator: Polynomial<T>,
    denominator: Polynomial<T>,
    parity: Parity,
    domain: Domain<T>,
}

impl<T: Real> RationalApproximant<T> {
    pub fn new(
        numerator: Polynomial<T>,
        denominator: Polynomial<T>,
        parity: Parity,
        domain: Domain<T>,
    ) -> Result<Self> {
        if parity != Parity::Plain && !domain.is_symmetric() {
            return Err(Error::InvalidInput(format!(
                "{} form needs a symmetric domain",
                parity.name()
            )));
        }
        Ok(Self { numerator, denominator, parity, domain })
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.denominator
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn domain(&self) -> Domain<T> {
        self.domain
    }

    /// Numerator degree.
    pub fn n(&self) -> usize {
        self.numerator.degree()
    }

    /// Denominator degree.
    pub fn m(&self) -> usize {
        self.denominator.degree()
    }

    /// Working variable (`t` or `t²`) for a point `x`.
    pub fn working_var(&self, x: T) -> T {
        let t = self.domain.to_unit(x);
        match self.parity {
            Parity::Plain => t,
            _ => t * t,
        }
    }

    /// `P(u)/Q(u)` without the odd-form factor `t`.
    pub fn eval_reduced(&self, x: T) -> T {
        let u = self.working_var(x);
        self.numerator.eval(u) / self.denominator.eval(u)
    }

    pub fn eval(&self, x: T) -> T {
        let r = self.eval_reduced(x);
        match self.parity {
            Parity::Odd => self.domain.to_unit(x) * r,
            _ => r,
        }
    }

    /// Evaluates, reporting a pole when the denominator vanishes.
    pub fn try_eval(&self, x: T) -> Result<T> {
        let q = self.denominator.eval(self.working_var(x));
        let v = self.eval(x);
        if q == T::zero() || !v.is_finite() {
            return Err(Error::Pole { locations: vec![x.as_f64()] });
        }
        Ok(v)
    }

    /// Numerator as a polynomial in `t`.
    pub fn plain_numerator(&self) -> Polynomial<T> {
        match self.parity {
            Parity::Plain => self.numerator.clone(),
            Parity::Even => self.numerator.in_square(),
            Parity::Odd => self.numerator.in_square().shift_up(),
        }
    }

    /// Denominator as a polynomial in `t`.
    pub fn plain_denominator(&self) -> Polynomial<T> {
        match self.parity {
            Parity::Plain => self.denominator.clone(),
            _ => self.denominator.in_square(),
        }
    }

    /// Numerator then denominator coefficients.
    pub fn coefficients(&self) -> Vec<T> {
        let mut v = self.numerator.coeffs().to_vec();
        v.extend_from_slice(self.denominator.coeffs());
        v
    }

    fn divided(&self, s: T, what: &str) -> Result<Self> {
        if s == T::zero() || !s.is_finite() {
            return Err(Error::ConstructionFailure {
                detail: format!("cannot normalize: {what} is zero"),
                condition: None,
            });
        }
        let inv = T::one() / s;
        Ok(Self {
            numerator: self.numerator.scale(inv),
            denominator: self.denominator.scale(inv),
            parity: self.parity,
            domain: self.domain,
        })
    }

    /// Rescaled so that `b_0 = 1`.
    pub fn normalized_b0(&self) -> Result<Self> {
        self.divided(self.denominator.coeff(0), "b_0")
    }

    /// Rescaled so that `b_m = 1`, or `a_n = 1` when `m = 0`.
    pub fn normalized_leading(&self) -> Result<Self> {
        if self.m() > 0 {
            self.divided(self.denominator.coeff(self.m()), "b_m")
        } else {
            self.divided(self.numerator.coeff(self.n()), "a_n")
        }
    }

    /// Rescaled to the given normalization.
    pub fn normalized(&self, norm: Normalization) -> Result<Self> {
        match norm {
            Normalization::B0 => self.normalized_b0(),
            Normalization::Bm => self.divided(self.denominator.coeff(self.m()), "b_m"),
            Normalization::An => self.divided(self.numerator.coeff(self.n()), "a_n"),
        }
    }
}
