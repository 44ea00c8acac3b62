//! Error measurement: maximum absolute and relative errors, error extrema,
//! alternation quality and the resulting lower bound on the best error.

use crate::cheb::DEFAULT_NODES;
use crate::error::{Error, Result};
use crate::pade_chebyshev::{build_linear_cross, series_length, target_cheb_coeffs};
use crate::rational::{Parity, RationalApproximant};
use crate::scalar::{max_abs, Real};
use crate::target::TargetFunction;

/// Default number of checkpoint intervals for error measurement.
pub const DEFAULT_CHECKPOINTS: usize = 2000;

/// Error weighting: `f - R` or `(f - R)/f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    Absolute,
    Relative,
}

impl Weight {
    pub fn name(self) -> &'static str {
        match self {
            Weight::Absolute => "absolute",
            Weight::Relative => "relative",
        }
    }
}

impl std::str::FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abs" | "absolute" => Ok(Self::Absolute),
            "rel" | "relative" => Ok(Self::Relative),
            _ => Err(Error::InvalidInput(format!("unknown weight '{s}'"))),
        }
    }
}

/// Local extremum of a signed error curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub x: T,
    pub value: T,
}

/// Longest run of sign-alternating values.
#[derive(Debug, Clone, PartialEq)]
pub struct Alternation<T> {
    /// Whether the run reaches the required length.
    pub alternates: bool,
    pub length: usize,
    pub required: usize,
    /// `min |v| / max |v|` over the run, when it alternates.
    pub q: Option<T>,
    /// Index range of the run in the input.
    pub window: std::ops::Range<usize>,
}

/// Longest alternating window of `values`, ties broken by the larger minimum.
pub fn alternation_quality<T: Real>(values: &[T], required: usize) -> Alternation<T> {
    let mut best = 0..0;
    let mut best_min = T::zero();
    let mut start = 0;
    for end in 1..=values.len() {
        let breaks = end == values.len()
            || values[end] == T::zero()
            || values[end - 1] == T::zero()
            || (values[end] > T::zero()) == (values[end - 1] > T::zero());
        if !breaks {
            continue;
        }
        let w = start..end;
        let min = values[w.clone()].iter().fold(T::infinity(), |m, v| m.min(v.abs()));
        let longer = w.len() > best.len();
        let tie = w.len() == best.len() && min > best_min;
        if values[start] != T::zero() && (longer || tie) {
            best = w;
            best_min = min;
        }
        start = end;
    }
    let length = best.len();
    let alternates = length >= required && length > 0;
    let q = alternates.then(|| best_min / max_abs(&values[best.clone()]));
    Alternation { alternates, length, required, q, window: best }
}

/// Error summary of an approximant over a checkpoint grid.
#[derive(Debug, Clone)]
pub struct ApproxReport<T> {
    /// Maximum of `|f - R|` over the checkpoints and refined extrema.
    pub abs_error: T,
    /// Maximum of `|f - R|/|f|`, skipping points where `f` vanishes.
    pub rel_error: Option<T>,
    pub weight: Weight,
    /// Extrema of the weighted error curve, in increasing `x`.
    pub extrema: Vec<Extremum<T>>,
    pub alternation: Alternation<T>,
    /// Smallest |extremum| over the alternating window, or zero without alternation.
    pub lower_bound: T,
    /// `lower_bound` over the weighted maximum error, when alternation holds.
    pub q: Option<T>,
    pub checkpoints: usize,
}

impl<T: Real> ApproxReport<T> {
    /// Maximum error under the report's weight.
    pub fn weighted_error(&self) -> T {
        match self.weight {
            Weight::Absolute => self.abs_error,
            Weight::Relative => self.rel_error.unwrap_or_else(T::nan),
        }
    }
}

/// Signed absolute error `f - R`.
fn abs_err<T: Real>(f: &TargetFunction<T>, r: &RationalApproximant<T>, x: T) -> Option<T> {
    let v = f.eval(x).ok()? - r.eval(x);
    v.is_finite().then_some(v)
}

/// Signed relative error `1 - R/f`; for odd forms computed from the reduced
/// function so that it stays defined at the origin.
fn rel_err<T: Real>(f: &TargetFunction<T>, r: &RationalApproximant<T>, x: T) -> Option<T> {
    let v = if r.parity() == Parity::Odd && f.domain() == r.domain() {
        let phi = f.eval_reduced_odd(x).ok()?;
        if phi == T::zero() {
            return None;
        }
        T::one() - r.eval_reduced(x) / phi
    } else {
        let fx = f.eval(x).ok()?;
        if fx == T::zero() {
            return None;
        }
        T::one() - r.eval(x) / fx
    };
    v.is_finite().then_some(v)
}

/// Maximizes `sign * e` on `[lo, hi]` by golden-section search.
fn golden_max<T: Real, F: Fn(T) -> Option<T>>(e: &F, sign: T, mut lo: T, mut hi: T) -> Option<(T, T)> {
    let g = T::lit(0.618_033_988_749_894_8);
    let score = |x: T| e(x).map(|v| sign * v);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (score(x1)?, score(x2)?);
    let tol = T::lit(4.0) * T::epsilon() * (T::one() + lo.abs().max(hi.abs()));
    for _ in 0..100 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = score(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = score(x1)?;
        }
    }
    let (x, s) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    Some((x, sign * s))
}

/// Extrema of `e` over a grid: one per sign-consistent run of grid values,
/// refined by golden-section search, with runs whose peak does not exceed
/// `noise` folded into their neighbours.
pub(crate) fn find_extrema<T, F>(e: F, grid: &[T], noise: T) -> Vec<Extremum<T>>
where
    T: Real,
    F: Fn(T) -> Option<T>,
{
    let vals: Vec<Option<T>> = grid.iter().map(|&x| e(x)).collect();
    let last = grid.len() - 1;
    let mut raw: Vec<Extremum<T>> = Vec::new();
    let mut i = 0;
    while i <= last {
        let Some(v) = vals[i].filter(|v| *v != T::zero()) else {
            i += 1;
            continue;
        };
        let positive = v > T::zero();
        let mut peak = i;
        let mut j = i;
        while j <= last {
            match vals[j] {
                Some(w) if w != T::zero() && (w > T::zero()) == positive => {
                    if w.abs() > vals[peak].unwrap().abs() {
                        peak = j;
                    }
                    j += 1;
                }
                _ => break,
            }
        }
        let sign = if positive { T::one() } else { -T::one() };
        let mut best = Extremum { x: grid[peak], value: vals[peak].unwrap() };
        if peak > 0 && peak < last {
            if let Some((x, value)) = golden_max(&e, sign, grid[peak - 1], grid[peak + 1]) {
                if value.abs() > best.value.abs() && (value > T::zero()) == positive {
                    best = Extremum { x, value };
                }
            }
        }
        raw.push(best);
        i = j;
    }
    let mut out: Vec<Extremum<T>> = Vec::with_capacity(raw.len());
    for ex in raw.into_iter().filter(|ex| ex.value.abs() > noise) {
        match out.last_mut() {
            Some(prev) if (prev.value > T::zero()) == (ex.value > T::zero()) => {
                if ex.value.abs() > prev.value.abs() {
                    *prev = ex;
                }
            }
            _ => out.push(ex),
        }
    }
    out
}

fn pole_check<T: Real>(r: &RationalApproximant<T>, grid: &[T]) -> Result<()> {
    let locations: Vec<f64> = grid
        .iter()
        .filter(|&&x| {
            let q = r.denominator().eval(r.working_var(x));
            q == T::zero() || !r.eval(x).is_finite()
        })
        .map(|x| x.as_f64())
        .collect();
    if locations.is_empty() {
        Ok(())
    } else {
        Err(Error::Pole { locations })
    }
}

/// Rounding-noise level below which extrema are ignored.
fn noise_floor<T: Real>(scale: T) -> T {
    T::lit(32.0) * T::epsilon() * scale
}

/// Measures `r` against `f` on `checkpoints + 1` uniform points of `f`'s domain.
pub fn error_report<T: Real>(
    f: &TargetFunction<T>,
    r: &RationalApproximant<T>,
    weight: Weight,
    checkpoints: usize,
) -> Result<ApproxReport<T>> {
    let checkpoints = checkpoints.max(2);
    let grid = f.domain().grid(checkpoints);
    pole_check(r, &grid)?;
    let fvals = grid.iter().map(|&x| f.eval(x)).collect::<Result<Vec<T>>>()?;
    let fscale = max_abs(&fvals);

    let abs_ex = find_extrema(|x| abs_err(f, r, x), &grid, noise_floor(fscale));
    let grid_abs = grid
        .iter()
        .filter_map(|&x| abs_err(f, r, x))
        .fold(T::zero(), |m, v| m.max(v.abs()));
    let abs_error = abs_ex.iter().fold(grid_abs, |m, e| m.max(e.value.abs()));

    let rel_vals: Vec<T> = grid.iter().filter_map(|&x| rel_err(f, r, x)).collect();
    let rel_ex = if weight == Weight::Relative {
        find_extrema(|x| rel_err(f, r, x), &grid, noise_floor(T::one()))
    } else {
        Vec::new()
    };
    let rel_error = (!rel_vals.is_empty()).then(|| {
        rel_ex
            .iter()
            .fold(max_abs(&rel_vals), |m, e| m.max(e.value.abs()))
    });

    let extrema = match weight {
        Weight::Absolute => abs_ex,
        Weight::Relative => rel_ex,
    };
    let required = r.parity().required_alternation(r.m(), r.n());
    let values: Vec<T> = extrema.iter().map(|e| e.value).collect();
    let alternation = alternation_quality(&values, required);
    let weighted = match weight {
        Weight::Absolute => abs_error,
        Weight::Relative => rel_error.unwrap_or_else(T::nan),
    };
    let (lower_bound, q) = if alternation.alternates {
        let lb = values[alternation.window.clone()]
            .iter()
            .fold(T::infinity(), |m, v| m.min(v.abs()));
        (lb, Some(lb / weighted))
    } else {
        (T::zero(), None)
    };
    Ok(ApproxReport {
        abs_error,
        rel_error,
        weight,
        extrema,
        alternation,
        lower_bound,
        q,
        checkpoints,
    })
}

/// Signed errors `(x, f - R, 1 - R/f)` on the checkpoint grid; the relative
/// entry is NaN where `f` vanishes.
pub fn error_curve<T: Real>(
    f: &TargetFunction<T>,
    r: &RationalApproximant<T>,
    checkpoints: usize,
) -> Result<Vec<(T, T, T)>> {
    let grid = f.domain().grid(checkpoints.max(2));
    pole_check(r, &grid)?;
    grid.iter()
        .map(|&x| {
            let a = abs_err(f, r, x).ok_or_else(|| Error::Evaluation {
                x: x.as_f64(),
                reason: "error not finite".into(),
            })?;
            Ok((x, a, rel_err(f, r, x).unwrap_or_else(T::nan)))
        })
        .collect()
}

/// Polynomial partial sum against rational approximant built from the same
/// Chebyshev coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct AccelerationRecord<T> {
    /// Degree of the Chebyshev partial sum.
    pub terms: usize,
    pub poly_error: T,
    pub rational_error: T,
}

/// Compares the partial sum of degree `n' + 2m'` (plain-equivalent degrees)
/// with the cross-scheme approximant from the same coefficients.
pub fn acceleration_compare<T: Real>(
    f: &TargetFunction<T>,
    m: usize,
    n: usize,
    parity: Parity,
) -> Result<AccelerationRecord<T>> {
    let degree = series_length(parity, m, n) - 1;
    let c = target_cheb_coeffs(f, degree, DEFAULT_NODES, None)?;
    let r = build_linear_cross(&c, m, n, parity, f.domain())?.approximant;
    let grid = f.domain().grid(DEFAULT_CHECKPOINTS);
    let mut poly_error = T::zero();
    let mut rational_error = T::zero();
    for &x in &grid {
        let fx = f.eval(x)?;
        let t = f.domain().to_unit(x);
        poly_error = poly_error.max((fx - c.eval(t)).abs());
        rational_error = rational_error.max((fx - r.try_eval(x)?).abs());
    }
    Ok(AccelerationRecord { terms: degree, poly_error, rational_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheb::{Domain, Polynomial};
    use crate::target::Builtin;
    use proptest::prelude::*;

    #[test]
    fn quality_of_growing_sequence() {
        let a = alternation_quality(&[1.0, -2.0, 3.0, -4.0], 4);
        assert!(a.alternates);
        assert_eq!(a.q, Some(0.25));
        assert!(!alternation_quality(&[1.0, -2.0, 3.0, -4.0], 5).alternates);
    }

    #[test]
    fn longest_window_ignores_broken_runs() {
        let a = alternation_quality(&[1.0, 2.0, -1.0, 1.0, -1.0, -3.0], 4);
        assert_eq!(a.window, 1..5);
        assert_eq!(a.q, Some(0.5));
    }

    #[test]
    fn pole_detected() {
        let d = Domain::unit();
        let f = TargetFunction::builtin(Builtin::Exp, d);
        let r = RationalApproximant::new(
            Polynomial::new(vec![1.0]),
            Polynomial::new(vec![0.0, 1.0]),
            Parity::Plain,
            d,
        )
        .unwrap();
        assert!(matches!(error_report(&f, &r, Weight::Absolute, 100), Err(Error::Pole { .. })));
    }

    #[test]
    fn chebyshev_polynomial_error_equioscillates() {
        // f = T_4 approximated by 0: error extrema ±1 at cos(kπ/4).
        let d = Domain::unit();
        let f = TargetFunction::from_fn("t4", |x: f64| crate::cheb::cheb_eval(4, x), d);
        let r = RationalApproximant::new(
            Polynomial::new(vec![0.0, 0.0, 0.0]),
            Polynomial::new(vec![1.0]),
            Parity::Plain,
            d,
        )
        .unwrap();
        let rep = error_report(&f, &r, Weight::Absolute, 2000).unwrap();
        assert_eq!(rep.extrema.len(), 5);
        assert!(rep.alternation.alternates);
        assert!((rep.q.unwrap() - 1.0).abs() < 1e-12);
        for (k, e) in rep.extrema.iter().enumerate() {
            let xk = -(k as f64 * std::f64::consts::PI / 4.0).cos();
            assert!((e.x - xk).abs() < 1e-7);
        }
    }

    #[test]
    fn acceleration_on_polynomial_is_exact() {
        let d = Domain::unit();
        let f = TargetFunction::from_fn("p", |x: f64| 1.0 + 0.5 * x - 0.25 * x * x, d);
        let rec = acceleration_compare(&f, 1, 2, Parity::Plain).unwrap();
        assert!(rec.poly_error < 1e-13 && rec.rational_error < 1e-13);
    }

    proptest! {
        #[test]
        fn q_within_unit_interval(v in proptest::collection::vec(0.01..10.0f64, 1..12), k in 1usize..12) {
            let signed: Vec<f64> = v.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -*x }).collect();
            let a = alternation_quality(&signed, k);
            prop_assert_eq!(a.alternates, signed.len() >= k);
            if let Some(q) = a.q {
                prop_assert!(q > 0.0 && q <= 1.0);
            }
        }
    }
}
