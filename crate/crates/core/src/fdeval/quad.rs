//! Tanh-sinh quadrature of Euler-type integrands on `(0, 1)`.
//!
//! With `t = (1 + tanh(π/2 sinh s)) / 2` both `t` and `1 - t` are formed
//! directly from `s` (no subtraction), and the integrand is accumulated in
//! log space, so endpoint factors `t^{β1}` and `(1-t)^{β2}` keep full
//! relative accuracy even where they under- or overflow.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::{Effort, EvalResult};

use super::QuadConfig;

const MIN_LEVELS: usize = 3;

/// `∫_0^1 t^{beta1} (1-t)^{beta2} Π_i (1 - x_i t)^{alpha_i} dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerIntegrand<R> {
    pub beta1: R,
    pub beta2: R,
    /// `(x_i, alpha_i)` pairs.
    pub factors: Vec<(R, R)>,
}

fn softplus<R: Real>(z: R) -> R {
    z.max(R::zero()) + (-z.abs()).exp().ln_1p()
}

impl<R: Real> EulerIntegrand<R> {
    /// Checks integrability. A factor with `x >= 1` is only accepted when its
    /// exponent is a non-negative integer.
    pub fn validate(&self) -> Result<()> {
        if !(self.beta1 > -R::one()) || !(self.beta2 > -R::one()) {
            return Err(Error::domain(format!(
                "endpoint exponents ({:?}, {:?}) must exceed -1",
                self.beta1, self.beta2
            )));
        }
        for &(x, alpha) in &self.factors {
            let polynomial = alpha >= R::zero() && alpha.is_integer_valued();
            if !x.is_finite() || !alpha.is_finite() {
                return Err(Error::domain("non-finite integrand parameter"));
            }
            if !(x < R::one()) && !polynomial {
                return Err(Error::domain(format!(
                    "factor (1 - {x:?} t)^{alpha:?} vanishes on [0, 1]"
                )));
            }
        }
        Ok(())
    }

    /// Integrand times `dt/ds` at abscissa `s`.
    fn transformed(&self, s: R) -> R {
        let phi = R::FRAC_PI_2() * s.sinh();
        let two_phi = phi + phi;
        let ln_t = -softplus(-two_phi);
        let ln_u = -softplus(two_phi);
        let one_minus_t = ln_u.exp();
        // dt/ds = π cosh(s) t (1 - t)
        let mut log = (self.beta1 + R::one()) * ln_t + (self.beta2 + R::one()) * ln_u;
        let mut negative = false;
        for &(x, alpha) in &self.factors {
            if alpha == R::zero() {
                continue;
            }
            let base = (R::one() - x) + x * one_minus_t;
            if base == R::zero() {
                return R::zero();
            }
            if base < R::zero() {
                // integer exponent, checked by validate
                let odd = (alpha * R::c(0.5)).fract() != R::zero();
                negative ^= odd;
            }
            log = log + alpha * base.abs().ln();
        }
        let value = (log + (R::PI() * s.cosh()).ln()).exp();
        if negative {
            -value
        } else {
            value
        }
    }

    /// Half-width of the `s` interval outside which the transformed
    /// integrand is negligible.
    fn half_width(&self) -> R {
        let gamma = (self.beta1 + R::one()).min(self.beta2 + R::one());
        let s = (R::c(100.0) / (R::PI() * gamma)).ln();
        s.max(R::c(3.0)).min(R::c(8.0))
    }

    /// Integrates by repeated step halving. The error estimate is the
    /// change between the last two levels.
    pub fn integrate(&self, cfg: &QuadConfig) -> Result<EvalResult<R>> {
        cfg.validate()?;
        self.validate()?;
        let target = R::c(cfg.target_rel_error).max(R::epsilon() * R::c(16.0));
        let s_max = self.half_width();
        let mut h = R::one();
        let mut sum = R::zero();
        let mut sum_abs = R::zero();
        let mut nodes = 0usize;

        let k_max = (s_max / h).floor().to_i64_lossy();
        for k in -k_max..=k_max {
            let g = self.transformed(R::from_int(k) * h);
            sum = sum + g;
            sum_abs = sum_abs + g.abs();
            nodes += 1;
        }
        let mut estimate = sum * h;
        let mut diff = R::infinity();
        for level in 1..=cfg.max_levels {
            h = h * R::c(0.5);
            let k_max = (s_max / h).floor().to_i64_lossy();
            let mut k = -k_max | 1;
            while k <= k_max {
                let g = self.transformed(R::from_int(k) * h);
                sum = sum + g;
                sum_abs = sum_abs + g.abs();
                nodes += 1;
                k += 2;
            }
            let next = sum * h;
            diff = (next - estimate).abs();
            estimate = next;
            let scale = sum_abs * h;
            if level >= MIN_LEVELS && (diff <= target * scale || scale == R::zero()) {
                return Ok(EvalResult {
                    value: estimate,
                    abs_error_estimate: diff,
                    effort: Effort::Quadrature { levels: level, nodes },
                });
            }
        }
        Err(Error::NotConverged(
            EvalResult {
                value: estimate,
                abs_error_estimate: diff,
                effort: Effort::Quadrature { levels: cfg.max_levels, nodes },
            }
            .to_f64(),
        ))
    }
}

trait ToI64Lossy {
    fn to_i64_lossy(self) -> i64;
}

impl<R: Real> ToI64Lossy for R {
    fn to_i64_lossy(self) -> i64 {
        num_traits::ToPrimitive::to_i64(&self).unwrap_or(0)
    }
}
