//! Elementary functions through argument reduction and one shared odd
//! rational kernel `R(y) = y·N(y²)/D(y²)` with monic `D`.

mod harness;
mod table;

pub use harness::{accuracy_harness, nominal_accuracy, AccuracyRecord, NominalAccuracy};
pub use table::{parse_fortran, parse_tables, TableEntry};

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Kernel size: three numerator and two denominator coefficients, or four and three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Ordinary,
    Enhanced,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Ordinary => "ordinary",
            Precision::Enhanced => "enhanced",
        }
    }

    pub(crate) fn kernel_len(self) -> usize {
        match self {
            Precision::Ordinary => 5,
            Precision::Enhanced => 7,
        }
    }
}

impl std::str::FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(Self::Ordinary),
            "enhanced" => Ok(Self::Enhanced),
            _ => Err(Error::InvalidInput(format!("unknown precision '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Lg,
    Exp10,
    Ln,
    Exp,
    Pow,
    Sin,
    Cos,
    Tan,
    Atan,
    Asin,
}

impl FunctionId {
    pub const ALL: [FunctionId; 10] = [
        Self::Lg,
        Self::Exp10,
        Self::Ln,
        Self::Exp,
        Self::Pow,
        Self::Sin,
        Self::Cos,
        Self::Tan,
        Self::Atan,
        Self::Asin,
    ];

    /// Functions that own a coefficient table.
    pub const KERNELS: [FunctionId; 6] =
        [Self::Lg, Self::Exp10, Self::Sin, Self::Tan, Self::Atan, Self::Asin];

    pub fn name(self) -> &'static str {
        match self {
            Self::Lg => "lg",
            Self::Exp10 => "exp10",
            Self::Ln => "ln",
            Self::Exp => "exp",
            Self::Pow => "pow",
            Self::Sin => "sin",
            Self::Cos => "cos",
            Self::Tan => "tan",
            Self::Atan => "atan",
            Self::Asin => "asin",
        }
    }

    /// Table whose kernel the reduction uses.
    pub fn kernel_id(self) -> FunctionId {
        match self {
            Self::Lg | Self::Ln => Self::Lg,
            Self::Exp10 | Self::Exp | Self::Pow => Self::Exp10,
            Self::Sin | Self::Cos => Self::Sin,
            other => other,
        }
    }

    /// Interval on which the kernel accuracy is stated.
    pub fn reference_interval(self) -> (f64, f64) {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_10};
        match self {
            Self::Lg | Self::Ln => (0.1, 1.0),
            Self::Exp10 => (-1.0, 1.0),
            Self::Exp => (-LN_10, LN_10),
            Self::Pow => (1.0, 10.0),
            Self::Sin => (-FRAC_PI_2, FRAC_PI_2),
            Self::Cos => (0.0, std::f64::consts::PI),
            Self::Tan => (-FRAC_PI_4, FRAC_PI_4),
            Self::Atan => (-(2f64.sqrt() - 1.0), 2f64.sqrt() - 1.0),
            Self::Asin => (-0.5, 0.5),
        }
    }
}

impl std::str::FromStr for FunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown elementary function '{s}'")))
    }
}

impl std::fmt::Display for FunctionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients of `y(a+by²+cy⁴)/(α+βy²+y⁴)` or
/// `y(a+by²+cy⁴+dy⁶)/(α+βy²+γy⁴+y⁶)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelCoeffs<T> {
    Ordinary { a: T, b: T, c: T, alpha: T, beta: T },
    Enhanced { a: T, b: T, c: T, d: T, alpha: T, beta: T, gamma: T },
}

/// Continued-fraction coefficients:
/// `y(c + μ/(y²+ν + æ/(y²+λ)))` or
/// `y(d + ξ/(y²+η + μ/(y²+ν + æ/(y²+λ))))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JacobiCoeffs<T> {
    Ordinary { c: T, mu: T, lambda: T, nu: T, ae: T },
    Enhanced { d: T, xi: T, eta: T, mu: T, lambda: T, nu: T, ae: T },
}

fn checked<T: Real>(num: T, den: T) -> Result<T> {
    if den == T::zero() || !den.is_finite() {
        return Err(Error::Pole { locations: vec![] });
    }
    Ok(num / den)
}

impl<T: Real> KernelCoeffs<T> {
    pub fn precision(&self) -> Precision {
        match self {
            Self::Ordinary { .. } => Precision::Ordinary,
            Self::Enhanced { .. } => Precision::Enhanced,
        }
    }

    fn from_slice(v: &[T]) -> Self {
        match *v {
            [a, b, c, alpha, beta] => Self::Ordinary { a, b, c, alpha, beta },
            [a, b, c, d, alpha, beta, gamma] => Self::Enhanced { a, b, c, d, alpha, beta, gamma },
            _ => unreachable!("table lengths are validated by the parser"),
        }
    }

    /// Nested evaluation `y(a+z(b+cz))/(α+z(β+z))`, `z = y²`.
    pub fn eval(&self, y: T) -> Result<T> {
        let z = y * y;
        let (num, den) = match *self {
            Self::Ordinary { a, b, c, alpha, beta } => (a + z * (b + c * z), alpha + z * (beta + z)),
            Self::Enhanced { a, b, c, d, alpha, beta, gamma } => {
                (a + z * (b + z * (c + d * z)), alpha + z * (beta + z * (gamma + z)))
            }
        };
        Ok(y * checked(num, den)?)
    }

    /// Evaluation with explicit powers of `y`.
    pub fn eval_expanded(&self, y: T) -> Result<T> {
        let (y2, y4) = (y * y, y * y * y * y);
        let (num, den) = match *self {
            Self::Ordinary { a, b, c, alpha, beta } => (a + b * y2 + c * y4, alpha + beta * y2 + y4),
            Self::Enhanced { a, b, c, d, alpha, beta, gamma } => {
                let y6 = y4 * y2;
                (a + b * y2 + c * y4 + d * y6, alpha + beta * y2 + gamma * y4 + y6)
            }
        };
        Ok(y * checked(num, den)?)
    }
}

impl<T: Real> JacobiCoeffs<T> {
    fn from_slice(v: &[T]) -> Self {
        match *v {
            [c, mu, lambda, nu, ae] => Self::Ordinary { c, mu, lambda, nu, ae },
            [d, xi, eta, mu, lambda, nu, ae] => Self::Enhanced { d, xi, eta, mu, lambda, nu, ae },
            _ => unreachable!("table lengths are validated by the parser"),
        }
    }

    /// Values in table order.
    pub fn values(&self) -> Vec<T> {
        match *self {
            Self::Ordinary { c, mu, lambda, nu, ae } => vec![c, mu, lambda, nu, ae],
            Self::Enhanced { d, xi, eta, mu, lambda, nu, ae } => vec![d, xi, eta, mu, lambda, nu, ae],
        }
    }

    pub fn eval(&self, y: T) -> Result<T> {
        let z = y * y;
        match *self {
            Self::Ordinary { c, mu, lambda, nu, ae } => {
                let inner = z + nu + checked(ae, z + lambda)?;
                Ok(y * (c + checked(mu, inner)?))
            }
            Self::Enhanced { d, xi, eta, mu, lambda, nu, ae } => {
                let deep = z + nu + checked(ae, z + lambda)?;
                let mid = z + eta + checked(mu, deep)?;
                Ok(y * (d + checked(xi, mid)?))
            }
        }
    }
}

/// Converts the kernel to continued-fraction form by repeated division of
/// polynomials in `y²`.
pub fn to_jacobi<T: Real>(k: &KernelCoeffs<T>) -> Result<JacobiCoeffs<T>> {
    let div = |num: T, den: T, what: &str| {
        if den == T::zero() || !den.is_finite() {
            Err(Error::ConversionBreakdown(format!("{what} vanishes")))
        } else {
            Ok(num / den)
        }
    };
    match *k {
        KernelCoeffs::Ordinary { a, b, c, alpha, beta } => {
            let mu = b - c * beta;
            let lambda = div(a - c * alpha, mu, "first remainder")?;
            let nu = beta - lambda;
            Ok(JacobiCoeffs::Ordinary { c, mu, lambda, nu, ae: alpha - lambda * nu })
        }
        KernelCoeffs::Enhanced { a, b, c, d, alpha, beta, gamma } => {
            let xi = c - d * gamma;
            let r1 = div(b - d * beta, xi, "first remainder")?;
            let r0 = div(a - d * alpha, xi, "first remainder")?;
            let eta = gamma - r1;
            let mu = beta - r0 - eta * r1;
            let lambda = div(alpha - eta * r0, mu, "second remainder")?;
            let nu = r1 - lambda;
            Ok(JacobiCoeffs::Enhanced { d, xi, eta, mu, lambda, nu, ae: r0 - lambda * nu })
        }
    }
}

fn tables() -> &'static [TableEntry] {
    static TABLES: OnceLock<Vec<TableEntry>> = OnceLock::new();
    TABLES.get_or_init(|| parse_tables(table::DATA).expect("embedded coefficient table parses"))
}

fn entry(id: FunctionId, precision: Precision) -> &'static TableEntry {
    let kid = id.kernel_id();
    tables()
        .iter()
        .find(|e| e.id == kid && e.precision == precision)
        .expect("every kernel has both precisions")
}

/// Published kernel for a function (derived ids share their base kernel).
pub fn kernel<T: Real>(id: FunctionId, precision: Precision) -> KernelCoeffs<T> {
    let v: Vec<T> = entry(id, precision).kernel.iter().map(|&c| T::lit(c)).collect();
    KernelCoeffs::from_slice(&v)
}

/// Continued-fraction coefficients as tabulated.
pub fn tabulated_jacobi<T: Real>(id: FunctionId, precision: Precision) -> JacobiCoeffs<T> {
    let v: Vec<T> = entry(id, precision).jacobi.iter().map(|&c| T::lit(c)).collect();
    JacobiCoeffs::from_slice(&v)
}

/// Splits `x > 0` as `x0·10^p`, `0.1 ≤ x0 < 1`, from the shortest decimal
/// representation of `x`.
fn decimal_split<T: Real>(x: T) -> (T, i32) {
    let s = format!("{x:e}");
    let (mantissa, exp) = s.split_once('e').expect("LowerExp output has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let x0: f64 = format!("0.{digits}").parse().expect("decimal digits");
    (T::lit(x0), exp + 1)
}

fn pow10<T: Real>(p: i64) -> Result<T> {
    let v: f64 = format!("1e{p}").parse().expect("power of ten");
    let t = T::lit(v);
    if !t.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(t)
}

fn frac<T: Real>(a: T) -> T {
    a - a.floor()
}

fn lg<T: Real>(x: T, p: Precision) -> Result<T> {
    if x.is_nan() || x <= T::zero() {
        return Err(Error::Domain { function: "lg".into(), x: x.as_f64() });
    }
    let (x0, e) = decimal_split(x);
    let base = T::lit(f64::from(e)) - T::lit(0.5);
    if x0 == T::lit(0.1) {
        return Ok(base - T::lit(0.5));
    }
    let s = T::lit(10f64.powf(-0.5));
    let y = (x0 - s) / (x0 + s);
    Ok(base + kernel::<T>(FunctionId::Lg, p).eval(y)?)
}

fn exp10<T: Real>(x: T, p: Precision) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::Domain { function: "exp10".into(), x: x.as_f64() });
    }
    let int = x.trunc();
    let y = x - int;
    let scale = pow10::<T>(int.to_i64().ok_or(Error::Overflow)?)?;
    let r = kernel::<T>(FunctionId::Exp10, p).eval(y)?;
    let v = scale * ((T::one() + r) / (T::one() - r));
    if !v.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(v)
}

fn sin<T: Real>(x: T, p: Precision) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::Domain { function: "sin".into(), x: x.as_f64() });
    }
    if x < T::zero() {
        return Ok(-sin(-x, p)?);
    }
    let two_pi = T::TAU();
    let y = frac(x / two_pi) * two_pi;
    let half = T::FRAC_PI_2();
    let z = if y <= half {
        y
    } else if y <= T::lit(3.0) * half {
        T::PI() - y
    } else {
        y - two_pi
    };
    kernel::<T>(FunctionId::Sin, p).eval(z)
}

fn tan<T: Real>(x: T, p: Precision) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::Domain { function: "tan".into(), x: x.as_f64() });
    }
    if x < T::zero() {
        return Ok(-tan(-x, p)?);
    }
    let k = kernel::<T>(FunctionId::Tan, p);
    let y = frac(x / T::PI()) * T::PI();
    let quarter = T::FRAC_PI_4();
    if y <= quarter {
        k.eval(y)
    } else if y <= T::lit(3.0) * quarter {
        let r = k.eval(T::FRAC_PI_2() - y)?;
        if r == T::zero() {
            return Err(Error::Pole { locations: vec![x.as_f64()] });
        }
        Ok(T::one() / r)
    } else {
        k.eval(y - T::PI())
    }
}

fn atan<T: Real>(x: T, p: Precision) -> Result<T> {
    if x.is_nan() {
        return Err(Error::Domain { function: "atan".into(), x: f64::NAN });
    }
    if x < T::zero() {
        return Ok(-atan(-x, p)?);
    }
    if x > T::one() {
        // 1/x may still exceed the kernel interval, so reduce it again.
        return Ok(T::FRAC_PI_2() - atan(T::one() / x, p)?);
    }
    let k = kernel::<T>(FunctionId::Atan, p);
    if x < T::SQRT_2() - T::one() {
        k.eval(x)
    } else {
        Ok(T::FRAC_PI_4() - k.eval((T::one() - x) / (T::one() + x))?)
    }
}

fn asin<T: Real>(x: T, p: Precision) -> Result<T> {
    if x.is_nan() || x.abs() > T::one() {
        return Err(Error::Domain { function: "asin".into(), x: x.as_f64() });
    }
    if x < T::zero() {
        return Ok(-asin(-x, p)?);
    }
    let k = kernel::<T>(FunctionId::Asin, p);
    if x <= T::lit(0.5) {
        k.eval(x)
    } else {
        let y = ((T::one() - x) / T::lit(2.0)).sqrt();
        Ok(T::FRAC_PI_2() - T::lit(2.0) * k.eval(y)?)
    }
}

/// Evaluates a one-argument function; `pow` needs [`evaluate_pow`].
pub fn evaluate<T: Real>(id: FunctionId, x: T, precision: Precision) -> Result<T> {
    match id {
        FunctionId::Lg => lg(x, precision),
        FunctionId::Ln => Ok(T::LN_10() * lg(x, precision)?),
        FunctionId::Exp10 => exp10(x, precision),
        FunctionId::Exp => exp10(x * T::LOG10_E(), precision),
        FunctionId::Sin => sin(x, precision),
        FunctionId::Cos => sin(T::FRAC_PI_2() - x.abs(), precision),
        FunctionId::Tan => tan(x, precision),
        FunctionId::Atan => atan(x, precision),
        FunctionId::Asin => asin(x, precision),
        FunctionId::Pow => {
            Err(Error::InvalidInput("pow takes two arguments; use evaluate_pow".into()))
        }
    }
}

/// `x^y = 10^(y·lg x)` for `x > 0`.
pub fn evaluate_pow<T: Real>(x: T, y: T, precision: Precision) -> Result<T> {
    if x.is_nan() || x <= T::zero() {
        return Err(Error::Domain { function: "pow".into(), x: x.as_f64() });
    }
    exp10(y * lg(x, precision)?, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: [Precision; 2] = [Precision::Ordinary, Precision::Enhanced];

    fn interval(id: FunctionId) -> (f64, f64) {
        match id {
            // Reduced argument range of the logarithm kernel.
            FunctionId::Lg => {
                let r = (10f64.sqrt() - 1.0) / (10f64.sqrt() + 1.0);
                (-r, r)
            }
            other => other.reference_interval(),
        }
    }

    #[test]
    fn forms_agree_on_reduction_intervals() {
        for id in FunctionId::KERNELS {
            for p in P {
                let k = kernel::<f64>(id, p);
                let j = to_jacobi(&k).unwrap();
                let tab = tabulated_jacobi::<f64>(id, p);
                let (a, b) = interval(id);
                for i in 0..=1000 {
                    let y = a + (b - a) * i as f64 / 1000.0;
                    let v = k.eval(y).unwrap();
                    let scale = v.abs().max(f64::MIN_POSITIVE);
                    for w in [k.eval_expanded(y).unwrap(), j.eval(y).unwrap(), tab.eval(y).unwrap()] {
                        assert!((w - v).abs() <= 1e-12 * scale, "{id} {p:?} y={y}: {w} vs {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn conversion_reproduces_tabulated_blocks() {
        for id in FunctionId::KERNELS {
            for p in P {
                let got = to_jacobi(&kernel::<f64>(id, p)).unwrap().values();
                let want = tabulated_jacobi::<f64>(id, p).values();
                for (g, w) in got.iter().zip(&want) {
                    assert!((g - w).abs() <= 1e-9 * w.abs().max(1e-300), "{id} {p:?}: {g} vs {w}");
                }
            }
        }
    }

    #[test]
    fn conversion_breakdown_detected() {
        let k = KernelCoeffs::Ordinary { a: 1.0, b: 2.0, c: 1.0, alpha: 1.0, beta: 2.0 };
        assert!(matches!(to_jacobi(&k), Err(Error::ConversionBreakdown(_))));
    }

    #[test]
    fn kernels_vanish_at_origin() {
        for id in FunctionId::KERNELS {
            for p in P {
                assert_eq!(kernel::<f64>(id, p).eval(0.0).unwrap(), 0.0);
                assert_eq!(tabulated_jacobi::<f64>(id, p).eval(0.0).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn decimal_logarithm_of_powers_of_ten_is_exact() {
        for k in -10..=10 {
            let x: f64 = format!("1e{k}").parse().unwrap();
            for p in P {
                assert_eq!(evaluate(FunctionId::Lg, x, p).unwrap(), k as f64);
            }
        }
        assert!((evaluate(FunctionId::Lg, 2.0, Precision::Ordinary).unwrap() - 2f64.log10()).abs() <= 0.23e-8);
    }

    #[test]
    fn domain_and_overflow_errors() {
        let o = Precision::Ordinary;
        assert!(matches!(evaluate(FunctionId::Lg, 0.0, o), Err(Error::Domain { .. })));
        assert!(matches!(evaluate(FunctionId::Ln, -1.0, o), Err(Error::Domain { .. })));
        assert!(matches!(evaluate(FunctionId::Asin, 1.5, o), Err(Error::Domain { .. })));
        assert!(matches!(evaluate(FunctionId::Exp10, 400.0, o), Err(Error::Overflow)));
        assert!(matches!(evaluate(FunctionId::Pow, 2.0, o), Err(Error::InvalidInput(_))));
        assert!(matches!(evaluate_pow(-2.0, 0.5, o), Err(Error::Domain { .. })));
    }

    #[test]
    fn derived_functions() {
        let e = Precision::Enhanced;
        assert!((evaluate(FunctionId::Ln, 5.0, e).unwrap() - 5f64.ln()).abs() < 1e-11);
        assert!((evaluate(FunctionId::Exp, 1.3, e).unwrap() - 1.3f64.exp()).abs() < 1e-11);
        assert!((evaluate_pow(3.0, 1.7, e).unwrap() - 3f64.powf(1.7)).abs() < 1e-10);
        assert!((evaluate(FunctionId::Cos, 0.0f64, e).unwrap() - 1.0).abs() <= 0.56e-13);
        assert!((evaluate(FunctionId::Exp10, -12.85, e).unwrap() / 10f64.powf(-12.85) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn branch_boundaries_are_continuous() {
        let o = Precision::Ordinary;
        let h = 1e-12;
        let cases = [
            (FunctionId::Sin, std::f64::consts::FRAC_PI_2, 0.53e-8),
            (FunctionId::Sin, 1.5 * std::f64::consts::PI, 0.53e-8),
            (FunctionId::Tan, std::f64::consts::FRAC_PI_4, 0.22e-10),
            (FunctionId::Atan, 2f64.sqrt() - 1.0, 0.11e-9),
            (FunctionId::Atan, 1.0, 0.11e-9),
            (FunctionId::Asin, 0.5, 0.13e-8),
            (FunctionId::Lg, 1.0, 0.23e-8),
            (FunctionId::Exp10, 1.0, 0.23e-7),
        ];
        for (id, x, delta) in cases {
            let (l, r) = (evaluate(id, x - h, o).unwrap(), evaluate(id, x + h, o).unwrap());
            let slope = (r - l).abs();
            assert!(slope <= 10.0 * delta * l.abs().max(1.0), "{id} at {x}: {l} {r}");
        }
    }

    #[test]
    fn exp10_inverts_lg() {
        let o = Precision::Ordinary;
        for i in 0..=90 {
            let x = 1.0 + i as f64 * 0.1;
            let back = evaluate(FunctionId::Exp10, evaluate(FunctionId::Lg, x, o).unwrap(), o).unwrap();
            assert!((back - x).abs() <= x * (0.23e-8 * std::f64::consts::LN_10 + 0.23e-8) * 2.0, "{x} {back}");
        }
    }

    #[test]
    fn single_precision_instantiation() {
        let v = evaluate(FunctionId::Sin, 1.0f32, Precision::Ordinary).unwrap();
        assert!((v - 1f32.sin()).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn symmetry_is_exact(x in -50.0..50.0f64) {
            for p in P {
                prop_assert_eq!(evaluate(FunctionId::Sin, -x, p).unwrap(), -evaluate(FunctionId::Sin, x, p).unwrap());
                prop_assert_eq!(evaluate(FunctionId::Cos, -x, p).unwrap(), evaluate(FunctionId::Cos, x, p).unwrap());
                prop_assert_eq!(evaluate(FunctionId::Atan, -x, p).unwrap(), -evaluate(FunctionId::Atan, x, p).unwrap());
            }
        }

        #[test]
        fn kernels_are_odd(y in -0.4..0.4f64) {
            for id in FunctionId::KERNELS {
                let k = kernel::<f64>(id, Precision::Enhanced);
                prop_assert_eq!(k.eval(-y).unwrap(), -k.eval(y).unwrap());
            }
        }
    }
}
