//! Numerical evaluation of `F_D` and of the raw Euler-type integrals.

mod quad;
mod series;

pub use quad::EulerIntegrand;
pub use series::{fd_series, series_layers, SeriesLayers};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::beta;
use crate::types::{EvalResult, FdParams};

/// Truncation control for [`fd_series`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    /// Absolute size below which a degree layer counts as negligible.
    pub tol: f64,
    /// Highest total degree summed before giving up.
    pub max_total_degree: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { tol: 1e-17, max_total_degree: 20_000 }
    }
}

impl SeriesConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || self.max_total_degree < 1 {
            return Err(Error::domain("series config needs tol > 0 and max_total_degree >= 1"));
        }
        Ok(())
    }
}

/// Refinement control for the tanh-sinh quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub target_rel_error: f64,
    /// Maximum number of step halvings.
    pub max_levels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { target_rel_error: 1e-12, max_levels: 12 }
    }
}

impl QuadConfig {
    fn validate(&self) -> Result<()> {
        if !(self.target_rel_error > 0.0) || self.max_levels < 1 {
            return Err(Error::domain("quadrature config needs positive fields"));
        }
        Ok(())
    }
}

/// Which evaluator to use for `F_D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Integral,
    /// Series when every `|x_i| <= AUTO_SERIES_RADIUS`, integral otherwise.
    Auto,
}

pub const AUTO_SERIES_RADIUS: f64 = 0.9;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub series: SeriesConfig,
    pub quad: QuadConfig,
}

/// Evaluates `F_D` with the requested method; returns the method actually
/// used alongside the result.
pub fn fd_eval<R: Real>(params: &FdParams<R>, method: Method, opts: &EvalOptions) -> Result<(EvalResult<R>, Method)> {
    let method = match method {
        Method::Auto => {
            let radius = params.x.iter().fold(R::zero(), |m, x| m.max(x.abs()));
            if radius <= R::c(AUTO_SERIES_RADIUS) {
                Method::Series
            } else {
                Method::Integral
            }
        }
        m => m,
    };
    let result = match method {
        Method::Series => fd_series(params, &opts.series)?,
        _ => fd_integral(params, &opts.quad)?,
    };
    Ok((result, method))
}

fn check_x_below_one<R: Real>(x: &[R]) -> Result<()> {
    match x.iter().find(|x| !(**x < R::one())) {
        Some(x) => Err(Error::domain(format!("Euler integral needs x_i < 1, got {x:?}"))),
        None => Ok(()),
    }
}

/// `F_D` through its Euler integral,
/// `Γ(c) / (Γ(a) Γ(c-a)) ∫_0^1 t^{a-1} (1-t)^{c-a-1} Π (1 - x_i t)^{-b_i} dt`.
/// Valid for `c > a > 0` and any real `x_i < 1`.
pub fn fd_integral<R: Real>(params: &FdParams<R>, cfg: &QuadConfig) -> Result<EvalResult<R>> {
    if !(params.a > R::zero() && params.c > params.a) {
        return Err(Error::domain(format!(
            "Euler integral needs c > a > 0, got a = {:?}, c = {:?}",
            params.a, params.c
        )));
    }
    check_x_below_one(&params.x)?;
    let raw = integral_j(params.beta1(), params.beta2(), &params.alpha(), &params.x, cfg)?;
    let norm = beta(params.a, params.c - params.a)?;
    Ok(EvalResult {
        value: raw.value / norm,
        abs_error_estimate: raw.abs_error_estimate / norm,
        effort: raw.effort,
    })
}

/// Raw integral `∫_0^1 t^{beta1} (1-t)^{beta2} Π (1 - x_i t)^{alpha_i} dt`.
pub fn integral_j<R: Real>(beta1: R, beta2: R, alpha: &[R], x: &[R], cfg: &QuadConfig) -> Result<EvalResult<R>> {
    if alpha.len() != x.len() {
        return Err(Error::domain("alpha and x lengths differ"));
    }
    check_x_below_one(x)?;
    EulerIntegrand {
        beta1,
        beta2,
        factors: x.iter().copied().zip(alpha.iter().copied()).collect(),
    }
    .integrate(cfg)
}

fn base_integrand<R: Real>(params: &FdParams<R>) -> Result<EulerIntegrand<R>> {
    check_x_below_one(&params.x)?;
    Ok(EulerIntegrand {
        beta1: params.beta1(),
        beta2: params.beta2(),
        factors: params.x.iter().copied().zip(params.alpha()).collect(),
    })
}

/// `I_n = ∫_0^1 t^n K(t) dt` with `K` the Euler integrand of `params`.
pub fn integral_in<R: Real>(n: i64, params: &FdParams<R>, cfg: &QuadConfig) -> Result<EvalResult<R>> {
    if n < 0 {
        return Err(Error::domain(format!("I_n needs n >= 0, got {n}")));
    }
    let mut integrand = base_integrand(params)?;
    integrand.beta1 = integrand.beta1 + R::from_int(n);
    integrand.integrate(cfg)
}

/// `I_{n,p} = ∫_0^1 (1 - p t)^n K(t) dt`.
///
/// For `p = 1` the factor merges into `(1-t)^{beta2}` and the integral
/// exists whenever `beta2 + n > -1`. For other `p` with `n < 0`, `p < 1`
/// is required.
pub fn integral_inp<R: Real>(n: i64, p: R, params: &FdParams<R>, cfg: &QuadConfig) -> Result<EvalResult<R>> {
    let mut integrand = base_integrand(params)?;
    let n_r = R::from_int(n);
    if p == R::one() {
        integrand.beta2 = integrand.beta2 + n_r;
        if !(integrand.beta2 > -R::one()) {
            return Err(Error::domain(format!(
                "I_(n,1) with n = {n} is not integrable at t = 1 (needs c + n > a)"
            )));
        }
    } else if n != 0 {
        if n < 0 && !(p < R::one()) {
            return Err(Error::domain(format!("I_(n,p) with n < 0 needs p < 1, got {p:?}")));
        }
        integrand.factors.push((p, n_r));
    }
    integrand.integrate(cfg)
}
