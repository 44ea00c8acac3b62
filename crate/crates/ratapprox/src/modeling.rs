//! Tabulated data: sample tables, interpolating splines and rational models
//! fitted to them.

use crate::cheb::Domain;
use crate::error::{Error, Result};
use crate::pade_chebyshev::{build_linear_integral, BuildOptions, BuildOutcome};
use crate::scalar::Real;
use crate::target::TargetFunction;

/// Points `(x_i, y_i)` with strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable<T> {
    xs: Vec<T>,
    ys: Vec<T>,
}

impl<T: Real> SampleTable<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} abscissae but {} ordinates",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidInput("a sample table needs at least two points".into()));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("sample values must be finite".into()));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("abscissae must be strictly increasing".into()));
        }
        Ok(Self { xs, ys })
    }

    pub fn from_fn(xs: Vec<T>, f: impl Fn(T) -> T) -> Result<Self> {
        let ys = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, ys)
    }

    /// Whitespace-separated two-column text; `#` starts a comment.
    pub fn parse_columns(text: &str) -> Result<Self> {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace().map(|s| {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("not a number: '{s}'"),
                })
            });
            let (x, y) = match (cols.next(), cols.next(), cols.next()) {
                (Some(x), Some(y), None) => (x?, y?),
                _ => {
                    return Err(Error::Parse { line: i + 1, message: "expected two columns".into() })
                }
            };
            xs.push(T::lit(x));
            ys.push(T::lit(y));
        }
        Self::new(xs, ys)
    }

    /// JSON object with numeric arrays `x` and `y`.
    pub fn parse_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let column = |key: &str| -> Result<Vec<T>> {
            v.get(key)
                .and_then(|c| c.as_array())
                .ok_or_else(|| Error::Parse { line: 0, message: format!("missing array '{key}'") })?
                .iter()
                .map(|e| {
                    e.as_f64().map(T::lit).ok_or_else(|| Error::Parse {
                        line: 0,
                        message: format!("non-numeric entry in '{key}'"),
                    })
                })
                .collect()
        };
        Self::new(column("x")?, column("y")?)
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn domain(&self) -> Domain<T> {
        Domain::new(self.xs[0], self.xs[self.xs.len() - 1]).expect("increasing abscissae")
    }
}

/// Interpolant used to turn samples into a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplineKind {
    Linear,
    /// Cubic whose end third derivatives match the cubics through the first
    /// and last four points.
    Cubic,
    /// Cubic with zero end second derivatives.
    NaturalCubic,
}

impl std::str::FromStr for SplineKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "cubic" => Ok(Self::Cubic),
            "natural" => Ok(Self::NaturalCubic),
            _ => Err(Error::InvalidInput(format!("unknown spline kind '{s}'"))),
        }
    }
}

/// Piecewise polynomial `y_i + b_i d + c_i d² + e_i d³`, `d = x - x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    b: Vec<T>,
    c: Vec<T>,
    e: Vec<T>,
    kind: SplineKind,
}

impl<T: Real> Spline<T> {
    pub fn new(table: &SampleTable<T>, kind: SplineKind) -> Result<Self> {
        let (xs, ys) = (table.xs.clone(), table.ys.clone());
        let np = xs.len();
        if kind != SplineKind::Linear && np < 4 {
            return Err(Error::InvalidInput("a cubic spline needs at least four points".into()));
        }
        let (b, c, e) = match kind {
            SplineKind::Linear => {
                let mut b: Vec<T> = xs
                    .windows(2)
                    .zip(ys.windows(2))
                    .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
                    .collect();
                b.push(b[np - 2]);
                (b, vec![T::zero(); np], vec![T::zero(); np])
            }
            SplineKind::Cubic => end_matched(&xs, &ys),
            SplineKind::NaturalCubic => natural(&xs, &ys),
        };
        Ok(Self { xs, ys, b, c, e, kind })
    }

    pub fn kind(&self) -> SplineKind {
        self.kind
    }

    pub fn domain(&self) -> Domain<T> {
        Domain::new(self.xs[0], self.xs[self.xs.len() - 1]).expect("increasing abscissae")
    }

    pub fn eval(&self, x: T) -> T {
        let i = match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            p => (p - 1).min(self.xs.len() - 2),
        };
        let d = x - self.xs[i];
        self.ys[i] + d * (self.b[i] + d * (self.c[i] + d * self.e[i]))
    }
}

type Coeffs<T> = (Vec<T>, Vec<T>, Vec<T>);

/// Interval lengths and first differences of slopes, the common ingredients
/// of the tridiagonal system in `σ_i = s''(x_i)/6`.
fn differences<T: Real>(xs: &[T], ys: &[T]) -> (Vec<T>, Vec<T>) {
    let np = xs.len();
    let d: Vec<T> = (0..np - 1).map(|i| xs[i + 1] - xs[i]).collect();
    let slope: Vec<T> = (0..np - 1).map(|i| (ys[i + 1] - ys[i]) / d[i]).collect();
    let mut delta = vec![T::zero(); np];
    for i in 1..np - 1 {
        delta[i] = slope[i] - slope[i - 1];
    }
    (d, delta)
}

/// End third derivatives equal to those of the cubics through the first and
/// last four points.
fn end_matched<T: Real>(xs: &[T], ys: &[T]) -> Coeffs<T> {
    let np = xs.len();
    let (d, mut c) = differences(xs, ys);
    let two = T::lit(2.0);
    let mut b = vec![T::zero(); np];
    for i in 1..np - 1 {
        b[i] = two * (d[i - 1] + d[i]);
    }
    b[0] = -d[0];
    b[np - 1] = -d[np - 2];
    let c0 = c[2] / (xs[3] - xs[1]) - c[1] / (xs[2] - xs[0]);
    let cn = c[np - 2] / (xs[np - 1] - xs[np - 3]) - c[np - 3] / (xs[np - 2] - xs[np - 4]);
    c[0] = c0 * d[0] * d[0] / (xs[3] - xs[0]);
    c[np - 1] = -cn * d[np - 2] * d[np - 2] / (xs[np - 1] - xs[np - 4]);
    // Symmetric tridiagonal with off-diagonals d_i.
    for i in 1..np {
        let t = d[i - 1] / b[i - 1];
        b[i] = b[i] - t * d[i - 1];
        c[i] = c[i] - t * c[i - 1];
    }
    c[np - 1] = c[np - 1] / b[np - 1];
    for i in (0..np - 1).rev() {
        c[i] = (c[i] - d[i] * c[i + 1]) / b[i];
    }
    from_sigma(xs, ys, &c)
}

/// Zero second derivative at both ends.
fn natural<T: Real>(xs: &[T], ys: &[T]) -> Coeffs<T> {
    let np = xs.len();
    let (d, delta) = differences(xs, ys);
    let two = T::lit(2.0);
    let mut sigma = vec![T::zero(); np];
    let mut diag = vec![T::zero(); np];
    let mut rhs = vec![T::zero(); np];
    for i in 1..np - 1 {
        diag[i] = two * (d[i - 1] + d[i]);
        rhs[i] = delta[i];
    }
    for i in 2..np - 1 {
        let t = d[i - 1] / diag[i - 1];
        diag[i] = diag[i] - t * d[i - 1];
        rhs[i] = rhs[i] - t * rhs[i - 1];
    }
    for i in (1..np - 1).rev() {
        sigma[i] = (rhs[i] - d[i] * sigma[i + 1]) / diag[i];
    }
    from_sigma(xs, ys, &sigma)
}

fn from_sigma<T: Real>(xs: &[T], ys: &[T], sigma: &[T]) -> Coeffs<T> {
    let np = xs.len();
    let (two, three) = (T::lit(2.0), T::lit(3.0));
    let mut b = vec![T::zero(); np];
    let mut c = vec![T::zero(); np];
    let mut e = vec![T::zero(); np];
    for i in 0..np - 1 {
        let h = xs[i + 1] - xs[i];
        b[i] = (ys[i + 1] - ys[i]) / h - h * (sigma[i + 1] + two * sigma[i]);
        c[i] = three * sigma[i];
        e[i] = (sigma[i + 1] - sigma[i]) / h;
    }
    let h = xs[np - 1] - xs[np - 2];
    b[np - 1] = (ys[np - 1] - ys[np - 2]) / h + h * (sigma[np - 2] + two * sigma[np - 1]);
    c[np - 1] = three * sigma[np - 1];
    e[np - 1] = e[np - 2];
    (b, c, e)
}

/// Fits a rational approximant to the spline through `table`.
pub fn fit_model<T: Real>(
    table: &SampleTable<T>,
    m: usize,
    n: usize,
    kind: SplineKind,
    opts: &BuildOptions,
) -> Result<BuildOutcome<T>> {
    let f = TargetFunction::samples(Spline::new(table, kind)?);
    build_linear_integral(&f, m, n, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(SampleTable::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(SampleTable::new(vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 3.0]).is_err());
        assert!(SampleTable::new(vec![1.0], vec![1.0]).is_err());
    }

    #[test]
    fn parses_both_formats() {
        let a = SampleTable::<f64>::parse_columns("# x y\n0 1\n1 2\n2 5\n").unwrap();
        let b = SampleTable::<f64>::parse_json(r#"{"x":[0,1,2],"y":[1,2,5]}"#).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            SampleTable::<f64>::parse_columns("0 1\n1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn cubics_reproduce_cubic_data() {
        // End-matched conditions are exact for cubics; natural ones are not.
        let p = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x + 0.3 * x * x * x;
        let t = SampleTable::from_fn(grid(-1.0, 2.0, 9), p).unwrap();
        let s = Spline::new(&t, SplineKind::Cubic).unwrap();
        for &x in &grid(-1.0, 2.0, 101) {
            assert!((s.eval(x) - p(x)).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn natural_spline_has_zero_end_curvature() {
        let t = SampleTable::from_fn(grid(0.0, 3.0, 12), f64::exp).unwrap();
        let s = Spline::new(&t, SplineKind::NaturalCubic).unwrap();
        assert!(s.c[0].abs() < 1e-12 && s.c[11].abs() < 1e-12);
        // Second derivative continuity at an interior knot from the left piece.
        let h = 3.0 / 11.0;
        let left = 2.0 * s.c[4] + 6.0 * s.e[4] * h;
        assert!((left - 2.0 * s.c[5]).abs() < 1e-10);
    }

    #[test]
    fn linear_spline_is_exact_on_lines() {
        let t = SampleTable::from_fn(grid(0.0, 1.0, 5), |x| 3.0 * x - 1.0).unwrap();
        let s = Spline::new(&t, SplineKind::Linear).unwrap();
        assert!((s.eval(0.37) - 0.11).abs() < 1e-15);
        assert!((s.eval(1.0) - 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn splines_interpolate(ys in proptest::collection::vec(-5.0..5.0f64, 4..30)) {
            let xs: Vec<f64> = (0..ys.len()).map(|i| i as f64 * 0.7 - 1.0).collect();
            let t = SampleTable::new(xs.clone(), ys.clone()).unwrap();
            for kind in [SplineKind::Linear, SplineKind::Cubic, SplineKind::NaturalCubic] {
                let s = Spline::new(&t, kind).unwrap();
                for (&x, &y) in xs.iter().zip(&ys) {
                    prop_assert!((s.eval(x) - y).abs() < 1e-10 * (1.0 + y.abs()));
                }
            }
        }
    }
}
