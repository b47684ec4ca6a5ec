//! Small-ball probabilities `P(V² < r)` for tensor-product Gaussian fields
//! with eigenvalues `λ_ij = π⁻⁴ / (((i+b)² - q)((j+δ)² - τ))`.
//!
//! Three independent routes are provided: closed-form asymptotics
//! ([`asym`]), a saddle point on the exact log-Laplace transform
//! ([`saddle`], [`laplace`]) and Monte Carlo ([`mc`]). The numeric core is
//! generic over `f32`/`f64`; the aliases below fix `f64`.

// `!(x > 0.0)` style guards are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod scalar;
pub mod specfun;
mod axis;
pub mod polyalg;
pub mod field;
mod quad;
pub mod laplace;
pub mod estimate;
pub mod saddle;
pub mod asym;
pub mod mc;
pub mod acceptance;

pub use error::{Error, Result};
pub use estimate::{Method, ProbEstimate};
pub use field::Preset;
pub use num_complex::Complex;

/// Field parameters in double precision.
pub type Field = field::FieldParams<f64>;
pub type Constants = field::AsymptoticConstants<f64>;
pub type Estimate = estimate::ProbEstimate<f64>;
pub type Saddle = saddle::SaddleSolution<f64>;
pub type Expansion = asym::AsymExpansion<f64>;
pub type Laplace = laplace::LaplaceEval<f64>;
pub type McOutcome = mc::McResult<f64>;
