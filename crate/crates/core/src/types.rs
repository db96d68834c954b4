//! Shared domain types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Parameters `(a; b_1..b_N; c | x_1..x_N)` of one `F_D` instance.
#[derive(Debug, Clone, PartialEq)]
pub struct FdParams<S> {
    pub a: S,
    pub c: S,
    pub b: Vec<S>,
    pub x: Vec<S>,
}

impl<S: Scalar> FdParams<S> {
    pub fn new(a: S, c: S, b: Vec<S>, x: Vec<S>) -> Result<Self> {
        if b.len() != x.len() {
            return Err(Error::domain(format!(
                "b has {} entries but x has {}",
                b.len(),
                x.len()
            )));
        }
        Ok(FdParams { a, c, b, x })
    }

    /// Number of variables.
    pub fn n_vars(&self) -> usize {
        self.x.len()
    }

    /// Exponent of `t` in the Euler integrand.
    pub fn beta1(&self) -> S {
        self.a.clone() - S::one()
    }

    /// Exponent of `1 - t` in the Euler integrand.
    pub fn beta2(&self) -> S {
        self.c.clone() - self.a.clone() - S::one()
    }

    /// Exponents of `1 - x_i t` in the Euler integrand.
    pub fn alpha(&self) -> Vec<S> {
        self.b.iter().map(|b| -b.clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FdParams<T> {
        FdParams {
            a: f(&self.a),
            c: f(&self.c),
            b: self.b.iter().map(&f).collect(),
            x: self.x.iter().map(&f).collect(),
        }
    }

    pub fn to_f64(&self) -> FdParams<f64> {
        self.map(Scalar::as_f64)
    }

    pub fn to_real<R: Real>(&self) -> FdParams<R> {
        self.map(|v| R::c(v.as_f64()))
    }
}

/// Work done by an evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Effort {
    /// Series summed over total degrees `0..layers`; `terms` counts the
    /// multi-indices those layers contain.
    Series { layers: usize, terms: u128 },
    /// Tanh-sinh quadrature.
    Quadrature { levels: usize, nodes: usize },
}

impl fmt::Display for Effort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Effort::Series { layers, terms } => write!(f, "{layers} layers ({terms} terms)"),
            Effort::Quadrature { levels, nodes } => write!(f, "{levels} levels ({nodes} nodes)"),
        }
    }
}

/// A computed value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<R> {
    pub value: R,
    pub abs_error_estimate: R,
    pub effort: Effort,
}

impl<R: Real> EvalResult<R> {
    pub fn to_f64(self) -> EvalResult<f64> {
        EvalResult {
            value: self.value.as_f64(),
            abs_error_estimate: self.abs_error_estimate.as_f64(),
            effort: self.effort,
        }
    }
}
