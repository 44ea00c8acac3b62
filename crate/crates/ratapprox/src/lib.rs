//! Rational approximation of functions of one real variable.
//!
//! Constructions: classical Padé, linear and nonlinear Padé-Chebyshev, and
//! Remez best approximation, plus error analysis, coefficient
//! autocorrection diagnostics, elementary-function kernels and modeling of
//! tabulated data by rational functions.
//!
//! All algorithms are generic over [`Real`] (`f32` or `f64`). The `F64*`
//! aliases name the double-precision instantiations.

pub mod analysis;
pub mod autocorrection;
pub mod cheb;
pub mod elemfun;
pub mod error;
pub mod linalg;
pub mod modeling;
pub mod pade;
pub mod pade_chebyshev;
pub mod rational;
pub mod remez;
pub mod report;
pub mod scalar;
pub mod target;

pub use analysis::{error_report, ApproxReport, Weight};
pub use cheb::{ChebSeries, Domain, Polynomial};
pub use error::{Error, Result};
pub use pade::TaylorSeries;
pub use pade_chebyshev::{BuildOptions, BuildOutcome};
pub use rational::{Normalization, Parity, RationalApproximant};
pub use scalar::Real;
pub use target::{Builtin, TargetFunction};

pub type F64Polynomial = Polynomial<f64>;
pub type F64ChebSeries = ChebSeries<f64>;
pub type F64Domain = Domain<f64>;
pub type F64Approximant = RationalApproximant<f64>;
pub type F64Target = TargetFunction<f64>;
pub type F64Report = ApproxReport<f64>;
pub type F32Approximant = RationalApproximant<f32>;
pub type F32Target = TargetFunction<f32>;
