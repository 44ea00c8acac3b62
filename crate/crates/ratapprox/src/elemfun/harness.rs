//! Accuracy of the reductions against a 192-bit reference evaluation.

use astro_float::{BigFloat, Consts, RoundingMode};

use super::{evaluate, FunctionId, Precision};
use crate::error::{Error, Result};

const BITS: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

/// Maximum and mean absolute and relative errors over a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyRecord {
    pub max_abs: f64,
    pub max_rel: f64,
    pub mean_abs: f64,
    pub mean_rel: f64,
    pub points: usize,
}

/// Stated accuracy of a kernel; `None` where no value is given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NominalAccuracy {
    pub max_abs: Option<f64>,
    pub max_rel: Option<f64>,
    pub mean_abs: Option<f64>,
    pub mean_rel: Option<f64>,
}

pub fn nominal_accuracy(id: FunctionId, precision: Precision) -> Option<NominalAccuracy> {
    let n = |max_abs, max_rel, mean_abs, mean_rel| {
        Some(NominalAccuracy { max_abs, max_rel, mean_abs, mean_rel })
    };
    use FunctionId::*;
    use Precision::*;
    match (id, precision) {
        (Lg, Ordinary) => n(Some(0.23e-8), None, Some(0.14e-8), None),
        (Lg, Enhanced) => n(Some(0.85e-12), None, Some(0.53e-12), None),
        (Exp10, Ordinary) => n(Some(0.23e-7), Some(0.23e-8), Some(0.17e-8), Some(0.6e-9)),
        (Exp10, Enhanced) => n(Some(0.16e-12), Some(0.17e-13), Some(0.85e-14), Some(0.3e-14)),
        (Sin, Ordinary) => n(Some(0.53e-8), Some(0.53e-8), Some(0.21e-8), Some(0.34e-8)),
        (Sin, Enhanced) => n(Some(0.56e-13), Some(0.56e-13), Some(0.2e-13), Some(0.32e-13)),
        (Tan, Ordinary) => n(Some(0.22e-10), Some(0.22e-10), Some(0.63e-11), Some(0.13e-10)),
        (Tan, Enhanced) => n(Some(0.26e-13), Some(0.26e-13), Some(0.67e-14), Some(0.15e-13)),
        (Atan, Ordinary) => n(Some(0.11e-9), Some(0.29e-9), Some(0.37e-10), Some(0.18e-9)),
        (Atan, Enhanced) => n(Some(0.11e-13), Some(0.29e-13), Some(0.36e-14), Some(0.18e-13)),
        (Asin, Ordinary) => n(Some(0.13e-8), Some(0.25e-8), Some(0.41e-9), Some(0.16e-8)),
        (Asin, Enhanced) => n(Some(0.43e-12), Some(0.82e-12), Some(0.13e-12), Some(0.52e-12)),
        _ => None,
    }
}

fn to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    format!("{v}").parse().unwrap_or(f64::NAN)
}

fn reference(id: FunctionId, x: f64, cc: &mut Consts) -> Result<BigFloat> {
    let bx = BigFloat::from_f64(x, BITS);
    let ten = BigFloat::from_f64(10.0, BITS);
    Ok(match id {
        FunctionId::Lg => bx.log10(BITS, RM, cc),
        FunctionId::Ln => bx.ln(BITS, RM, cc),
        FunctionId::Exp10 => ten.pow(&bx, BITS, RM, cc),
        FunctionId::Exp => bx.exp(BITS, RM, cc),
        FunctionId::Sin => bx.sin(BITS, RM, cc),
        FunctionId::Cos => bx.cos(BITS, RM, cc),
        FunctionId::Tan => bx.tan(BITS, RM, cc),
        FunctionId::Atan => bx.atan(BITS, RM, cc),
        FunctionId::Asin => bx.asin(BITS, RM, cc),
        FunctionId::Pow => {
            return Err(Error::InvalidInput("harness takes one-argument functions".into()))
        }
    })
}

/// Errors of `evaluate(id, ·, precision)` on `grid + 1` uniform points of
/// the stated interval. Relative errors skip points where the reference is 0.
pub fn accuracy_harness(id: FunctionId, precision: Precision, grid: usize) -> Result<AccuracyRecord> {
    if grid < 1000 {
        return Err(Error::InvalidInput(format!("grid must be at least 1000, got {grid}")));
    }
    let (a, b) = id.reference_interval();
    let mut cc = Consts::new().map_err(|e| Error::InvalidInput(format!("{e:?}")))?;
    let (mut max_abs, mut max_rel, mut sum_abs, mut sum_rel, mut rel_points) = (0.0f64, 0.0f64, 0.0, 0.0, 0usize);
    for i in 0..=grid {
        let x = a + (b - a) * i as f64 / grid as f64;
        let v = BigFloat::from_f64(evaluate(id, x, precision)?, BITS);
        let r = reference(id, x, &mut cc)?;
        let err = v.sub(&r, BITS, RM).abs();
        let abs = to_f64(&err);
        max_abs = max_abs.max(abs);
        sum_abs += abs;
        if !r.is_zero() {
            let rel = to_f64(&err.div(&r.abs(), BITS, RM));
            max_rel = max_rel.max(rel);
            sum_rel += rel;
            rel_points += 1;
        }
    }
    let points = grid + 1;
    Ok(AccuracyRecord {
        max_abs,
        max_rel,
        mean_abs: sum_abs / points as f64,
        mean_rel: if rel_points > 0 { sum_rel / rel_points as f64 } else { 0.0 },
        points,
    })
}
