//! Machine-readable `key = value` documents with a stable key order.
//!
//! Floats print with 17 significant digits so identical jobs give
//! byte-identical output.

use std::fmt::Write as _;

use crate::analysis::{AccelerationRecord, ApproxReport};
use crate::autocorrection::{ExperimentRecord, Perturbation};
use crate::elemfun::AccuracyRecord;
use crate::rational::{Normalization, RationalApproximant};
use crate::remez::RemezOutcome;
use crate::scalar::Real;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    entries: Vec<(String, String)>,
}

pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn float<T: Real>(&mut self, key: &str, value: T) -> &mut Self {
        self.text(key, fmt_float(value.as_f64()))
    }

    pub fn opt_float<T: Real>(&mut self, key: &str, value: Option<T>) -> &mut Self {
        match value {
            Some(v) => self.float(key, v),
            None => self.text(key, "none"),
        }
    }

    pub fn floats<T: Real>(&mut self, key: &str, values: &[T]) -> &mut Self {
        let joined: Vec<String> = values.iter().map(|v| fmt_float(v.as_f64())).collect();
        self.text(key, joined.join(" "))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    pub fn extend(&mut self, prefix: &str, other: &Document) -> &mut Self {
        for (k, v) in &other.entries {
            self.entries.push((format!("{prefix}{k}"), v.clone()));
        }
        self
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }
}

/// Coefficients in the `b_0 = 1` form and in the leading form
/// (`b_m = 1`, or `a_n = 1` when `m = 0`).
pub fn approximant_document<T: Real>(r: &RationalApproximant<T>) -> Document {
    let mut d = Document::new();
    d.text("parity", r.parity().name())
        .text("m", r.m())
        .text("n", r.n())
        .float("domain.a", r.domain().a())
        .float("domain.b", r.domain().b());
    let forms = [
        ("b0", r.normalized_b0()),
        (if r.m() > 0 { "bm" } else { "an" }, r.normalized_leading()),
    ];
    for (name, form) in forms {
        match form {
            Ok(f) => {
                d.floats(&format!("coeffs.{name}.a"), f.numerator().coeffs())
                    .floats(&format!("coeffs.{name}.b"), f.denominator().coeffs());
            }
            Err(e) => {
                d.text(&format!("coeffs.{name}"), format!("unavailable ({e})"));
            }
        }
    }
    d
}

pub fn report_document<T: Real>(rep: &ApproxReport<T>) -> Document {
    let mut d = Document::new();
    d.text("weight", rep.weight.name())
        .text("checkpoints", rep.checkpoints)
        .float("abs_error", rep.abs_error)
        .opt_float("rel_error", rep.rel_error)
        .text("extrema", rep.extrema.len())
        .text("alternation.length", rep.alternation.length)
        .text("alternation.required", rep.alternation.required)
        .text("alternation.holds", rep.alternation.alternates)
        .float("lower_bound", rep.lower_bound)
        .opt_float("q", rep.q);
    d
}

pub fn remez_document<T: Real>(out: &RemezOutcome<T>) -> Document {
    let mut d = Document::new();
    d.text("remez.converged", out.converged)
        .text("remez.cycles", out.cycles)
        .float("remez.lambda", out.state.lambda)
        .floats("remez.critical_points", &out.state.critical_points);
    d
}

fn perturbation_text(p: &Perturbation) -> String {
    match p {
        Perturbation::QuadratureNodes { first, second } => format!("nodes {first} {second}"),
        Perturbation::ValueNoise(n) => format!("noise {} seed {}", fmt_float(n.epsilon), n.seed),
        Perturbation::NormalizationSwitch(norm) => format!("normalization {}", norm.name()),
        Perturbation::TaylorTruncation { first, second } => format!("taylor {first} {second}"),
    }
}

pub fn experiment_document<T: Real>(rec: &ExperimentRecord<T>) -> Document {
    let mut d = Document::new();
    d.text("method", format!("{:?}", rec.method).to_lowercase())
        .text("perturbation", perturbation_text(&rec.perturbation))
        .float("coeff_rel_error", rec.coeff_rel_error)
        .float("approximant_error_r1", rec.error_first)
        .float("approximant_error_r2", rec.error_second)
        .opt_float("error_approximant_error", rec.error_approximant_error)
        .float("cond_r1", rec.condition_first)
        .float("cond_r2", rec.condition_second)
        .text("degenerate", rec.degenerate)
        .text("excluded_zones", rec.excluded_zones.len());
    for (i, (a, b)) in rec.excluded_zones.iter().enumerate() {
        d.text(&format!("excluded_zone.{i}"), format!("{} {}", fmt_float(a.as_f64()), fmt_float(b.as_f64())));
    }
    d.extend("r1.", &approximant_document(&rec.first));
    d.extend("r2.", &approximant_document(&rec.second));
    d
}

pub fn accuracy_document(rec: &AccuracyRecord) -> Document {
    let mut d = Document::new();
    d.text("points", rec.points)
        .float("max_abs", rec.max_abs)
        .float("max_rel", rec.max_rel)
        .float("mean_abs", rec.mean_abs)
        .float("mean_rel", rec.mean_rel);
    d
}

pub fn acceleration_document<T: Real>(rec: &AccelerationRecord<T>) -> Document {
    let mut d = Document::new();
    d.text("partial_sum_degree", rec.terms)
        .float("poly_error", rec.poly_error)
        .float("rational_error", rec.rational_error);
    d
}

/// Name of the leading normalization used in [`approximant_document`].
pub fn leading_normalization<T: Real>(r: &RationalApproximant<T>) -> Normalization {
    if r.m() > 0 {
        Normalization::Bm
    } else {
        Normalization::An
    }
}
