//! Lauricella `F_D` hypergeometric functions of `N` variables.
//!
//! The crate evaluates `F_D` numerically (multivariate series and Euler
//! integral), computes the coefficients of linear relations among shifted
//! `F_D` instances from elementary symmetric polynomials, and checks those
//! relations as numerical residuals.
//!
//! Algebraic code (`symmpoly`, `coeffs`, relation assembly) is generic over
//! [`Scalar`], so it runs on [`ExactRational`] for zero-tolerance checks and
//! on `f64` for ordinary use. Numerical code (`special`, `fdeval`) is generic
//! over [`Real`].

// negated comparisons are deliberate: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod error;
pub mod fdeval;
pub mod rational;
pub mod relations;
pub mod scalar;
pub mod special;
pub mod sweep;
pub mod symmpoly;
pub mod types;

pub use error::{Error, Result};
pub use rational::ExactRational;
pub use scalar::{Real, Scalar};
pub use types::{EvalResult, Effort, FdParams};

/// Parameter block over exact rationals.
pub type FdParamsQ = FdParams<ExactRational>;
/// Parameter block over double precision floats.
pub type FdParamsF64 = FdParams<f64>;
/// Relation with exact rational coefficients.
pub type RelationQ = relations::Relation<ExactRational>;
/// Relation with double precision coefficients.
pub type RelationF64 = relations::Relation<f64>;
/// Double precision evaluation result.
pub type EvalResultF64 = EvalResult<f64>;
