//! Best rational approximation by the Remez exchange algorithm.
//!
//! Each cycle solves the alternation system at the current critical points,
//! with the nonlinear term linearized around a trial deviation that is
//! iterated to a fixed point, then exchanges all points for the extrema of
//! the new error curve.

use crate::analysis::{find_extrema, Extremum, Weight};
use crate::cheb::{Domain, Polynomial};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::rational::{Parity, RationalApproximant};
use crate::scalar::Real;
use crate::target::TargetFunction;

/// Critical points (in the target's domain) and current signed deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct RemezState<T> {
    pub critical_points: Vec<T>,
    pub lambda: T,
    pub iteration: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemezOptions {
    pub parity: Parity,
    /// Stop when `| max|e| - |λ| | ≤ tolerance·|λ|`.
    pub tolerance: f64,
    pub max_cycles: usize,
    pub max_inner: usize,
    /// Relative stabilization threshold of the inner deviation iteration.
    pub inner_tolerance: f64,
    /// Grid intervals used to locate error extrema.
    pub grid: usize,
}

impl Default for RemezOptions {
    fn default() -> Self {
        Self {
            parity: Parity::Plain,
            tolerance: 1e-2,
            max_cycles: 50,
            max_inner: 20,
            inner_tolerance: 1e-3,
            grid: 2000,
        }
    }
}

/// Per-cycle diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleRecord<T> {
    pub lambda: T,
    /// Largest weighted error over the working interval.
    pub max_error: T,
    /// Smallest |error| over the next alternation set.
    pub lower_bound: T,
}

#[derive(Debug, Clone)]
pub struct RemezOutcome<T> {
    pub approximant: RationalApproximant<T>,
    pub state: RemezState<T>,
    pub cycles: usize,
    pub converged: bool,
    pub history: Vec<CycleRecord<T>>,
}

/// Working variable: `t` for plain forms, `t²` otherwise.
struct Work<'a, T: Real> {
    f: &'a TargetFunction<T>,
    parity: Parity,
    weight: Weight,
    domain: Domain<T>,
}

impl<'a, T: Real> Work<'a, T> {
    fn interval(&self) -> (T, T) {
        match self.parity {
            Parity::Plain => (-T::one(), T::one()),
            _ => (T::zero(), T::one()),
        }
    }

    fn to_x(&self, v: T) -> T {
        match self.parity {
            Parity::Plain => self.domain.from_unit(v),
            _ => self.domain.from_unit(v.max(T::zero()).sqrt()),
        }
    }

    fn to_v(&self, x: T) -> T {
        let t = self.domain.to_unit(x);
        match self.parity {
            Parity::Plain => t,
            _ => t * t,
        }
    }

    /// Function value approximated by `P(v)/Q(v)` and the error weight.
    fn target_and_weight(&self, v: T) -> Result<(T, T)> {
        let x = self.to_x(v);
        let g = match self.parity {
            Parity::Odd => self.f.eval_reduced_odd(x)?,
            _ => self.f.eval(x)?,
        };
        let w = match self.weight {
            Weight::Relative => {
                if g == T::zero() {
                    return Err(Error::Evaluation {
                        x: x.as_f64(),
                        reason: "relative weight undefined where the target vanishes".into(),
                    });
                }
                T::one() / g
            }
            Weight::Absolute => match self.parity {
                Parity::Odd => v.max(T::zero()).sqrt(),
                _ => T::one(),
            },
        };
        Ok((g, w))
    }

    fn error(&self, p: &Polynomial<T>, q: &Polynomial<T>, v: T) -> Option<T> {
        let (g, w) = self.target_and_weight(v).ok()?;
        let e = w * (g - p.eval(v) / q.eval(v));
        e.is_finite().then_some(e)
    }

    fn extrema(&self, p: &Polynomial<T>, q: &Polynomial<T>, grid: usize) -> Vec<Extremum<T>> {
        let (lo, hi) = self.interval();
        let d = Domain::new(lo, hi).expect("working interval");
        find_extrema(|v| self.error(p, q, v), &d.grid(grid), T::lit(32.0) * T::epsilon())
    }
}

/// Solves the alternation system at `points` for a fixed linearization `lambda0`.
fn solve_at<T: Real>(
    work: &Work<T>,
    points: &[T],
    m: usize,
    n: usize,
    lambda0: T,
) -> Result<(Polynomial<T>, Polynomial<T>, T)> {
    let size = m + n + 2;
    let mut a = Matrix::zeros(size, size);
    let mut h = vec![T::zero(); size];
    for (k, &v) in points.iter().enumerate() {
        let (g, w) = work.target_and_weight(v)?;
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let mut pw = T::one();
        for i in 0..=n {
            a[(k, i)] = w * pw;
            pw = pw * v;
        }
        let mut pw = v;
        for j in 1..=m {
            a[(k, n + j)] = (sign * lambda0 - w * g) * pw;
            pw = pw * v;
        }
        a[(k, size - 1)] = sign;
        h[k] = w * g;
    }
    let sol = solve(&a, &h).map_err(|e| match e {
        Error::Singular { pivot } => Error::ConstructionFailure {
            detail: format!("singular alternation system (pivot {pivot})"),
            condition: None,
        },
        other => other,
    })?;
    let p = Polynomial::new(sol.x[..=n].to_vec());
    let mut qc = vec![T::one()];
    qc.extend_from_slice(&sol.x[n + 1..n + 1 + m]);
    Ok((p, Polynomial::new(qc), sol.x[size - 1]))
}

/// Chooses `count` consecutive alternating extrema containing the largest one,
/// maximizing the smallest magnitude.
fn select_alternation<T: Real>(ex: &[Extremum<T>], count: usize) -> Result<Vec<T>> {
    if ex.len() < count {
        return Err(Error::InsufficientAlternation { found: ex.len(), required: count });
    }
    let peak = (0..ex.len())
        .max_by(|&i, &j| ex[i].value.abs().partial_cmp(&ex[j].value.abs()).unwrap())
        .unwrap();
    let lo = peak.saturating_sub(count - 1);
    let hi = peak.min(ex.len() - count);
    let start = (lo..=hi)
        .max_by(|&i, &j| {
            let mi = ex[i..i + count].iter().fold(T::infinity(), |m, e| m.min(e.value.abs()));
            let mj = ex[j..j + count].iter().fold(T::infinity(), |m, e| m.min(e.value.abs()));
            mi.partial_cmp(&mj).unwrap()
        })
        .unwrap();
    Ok(ex[start..start + count].iter().map(|e| e.x).collect())
}

/// Chebyshev extrema of the working interval as starting critical points.
pub fn default_initial_state<T: Real>(
    domain: Domain<T>,
    m: usize,
    n: usize,
    parity: Parity,
    weight: Weight,
) -> RemezState<T> {
    let count = m + n + 2;
    let pi = T::PI();
    // Odd forms under absolute weight have a forced zero at the origin.
    let skip_origin = parity == Parity::Odd && weight == Weight::Absolute;
    let (first, intervals) = if skip_origin { (1, count) } else { (0, count - 1) };
    let points = (first..first + count)
        .map(|k| {
            let c = -(T::of_usize(k) * pi / T::of_usize(intervals)).cos();
            match parity {
                Parity::Plain => domain.from_unit(c),
                _ => domain.from_unit(((T::one() + c) / T::lit(2.0)).sqrt()),
            }
        })
        .collect();
    RemezState { critical_points: points, lambda: T::zero(), iteration: 0 }
}

/// Starting state taken from the error extrema of an existing approximant.
pub fn seed_from_approximant<T: Real>(
    r: &RationalApproximant<T>,
    f: &TargetFunction<T>,
    weight: Weight,
) -> Result<RemezState<T>> {
    let work = Work { f, parity: r.parity(), weight, domain: r.domain() };
    let ex = work.extrema(r.numerator(), r.denominator(), RemezOptions::default().grid);
    let count = r.m() + r.n() + 2;
    let vs = select_alternation(&ex, count)?;
    let first = ex.iter().find(|e| e.x == vs[0]).map(|e| e.value).unwrap_or_else(T::zero);
    Ok(RemezState {
        critical_points: vs.iter().map(|&v| work.to_x(v)).collect(),
        lambda: first,
        iteration: 0,
    })
}

/// Runs the exchange algorithm for degrees `(m, n)` of the chosen form.
pub fn remez_solve<T: Real>(
    f: &TargetFunction<T>,
    m: usize,
    n: usize,
    weight: Weight,
    init: Option<RemezState<T>>,
    opts: &RemezOptions,
) -> Result<RemezOutcome<T>> {
    let domain = f.domain();
    if opts.parity != Parity::Plain && !domain.is_symmetric() {
        return Err(Error::InvalidInput(format!(
            "the {} form needs a symmetric domain",
            opts.parity.name()
        )));
    }
    let work = Work { f, parity: opts.parity, weight, domain };
    let count = m + n + 2;
    let state = init.unwrap_or_else(|| default_initial_state(domain, m, n, opts.parity, weight));
    if state.critical_points.len() != count {
        return Err(Error::ShapeMismatch(format!(
            "{} critical points supplied, {count} needed",
            state.critical_points.len()
        )));
    }
    let mut points: Vec<T> = state.critical_points.iter().map(|&x| work.to_v(x)).collect();
    let mut lambda = state.lambda;
    let mut history: Vec<CycleRecord<T>> = Vec::new();
    let mut growth = 0;
    let tol = T::lit(opts.tolerance);
    let inner_tol = T::lit(opts.inner_tolerance);
    let mut last = None;
    for cycle in 1..=opts.max_cycles {
        // Fixed point of λ0 ↦ λ(λ0): one substitution step, then secant
        // steps, which also converge when the map has slope below -1.
        let mut prev: Option<(T, T)> = None;
        let mut lambda0 = lambda;
        let mut solved = solve_at(&work, &points, m, n, lambda0)?;
        for _ in 1..opts.max_inner {
            let l = solved.2;
            let phi = l - lambda0;
            if phi.abs() <= inner_tol * l.abs() {
                break;
            }
            let next = match prev {
                Some((x, p)) if p != phi => lambda0 - phi * (lambda0 - x) / (phi - p),
                _ => l,
            };
            prev = Some((lambda0, phi));
            lambda0 = next;
            solved = solve_at(&work, &points, m, n, lambda0)?;
        }
        let (p, q, l) = solved;
        lambda = l;
        let ex = work.extrema(&p, &q, opts.grid);
        let max_error = ex.iter().fold(T::zero(), |acc, e| acc.max(e.value.abs()));
        let next = select_alternation(&ex, count);
        let lower_bound = match &next {
            Ok(vs) => ex
                .iter()
                .filter(|e| vs.contains(&e.x))
                .fold(T::infinity(), |acc, e| acc.min(e.value.abs())),
            Err(_) => T::zero(),
        };
        if let Some(prev) = history.last() {
            growth = if max_error > prev.max_error { growth + 1 } else { 0 };
        }
        history.push(CycleRecord { lambda, max_error, lower_bound });
        let state_now = RemezState {
            critical_points: points.iter().map(|&v| work.to_x(v)).collect(),
            lambda,
            iteration: cycle,
        };
        let approximant = RationalApproximant::new(p, q, opts.parity, domain)?;
        if (max_error - lambda.abs()).abs() <= tol * lambda.abs() {
            return Ok(RemezOutcome { approximant, state: state_now, cycles: cycle, converged: true, history });
        }
        if growth >= 3 {
            return Err(Error::Divergence {
                cycles: cycle,
                lambda: lambda.as_f64(),
                critical_points: state_now.critical_points.iter().map(|x| x.as_f64()).collect(),
            });
        }
        points = next?;
        last = Some((approximant, state_now));
    }
    let (approximant, state) = last.expect("at least one cycle");
    Ok(RemezOutcome { approximant, state, cycles: opts.max_cycles, converged: false, history })
}
