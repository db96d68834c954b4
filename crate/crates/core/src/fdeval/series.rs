//! Truncated multivariate series.
//!
//! Multi-indices are grouped by total degree `m`. The layer sum
//! `h_m = Σ_{|i|=m} Π_j (b_j)_{i_j} x_j^{i_j} / i_j!` is the `s^m`
//! coefficient of `Π_j (1 - x_j s)^{-b_j}` and is built by convolving the
//! per-variable binomial series one degree at a time; the layer value is
//! `(a)_m / (c)_m · h_m`. A parallel convolution of absolute values gives a
//! cancellation-free magnitude for each layer.


use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::types::{Effort, EvalResult, FdParams};

use super::SeriesConfig;

/// Consecutive negligible layers required before stopping.
const QUIET_LAYERS: usize = 3;

/// Iterator over `(layer value, layer magnitude)` for total degrees
/// `0, 1, 2, ..`.
#[derive(Debug, Clone)]
pub struct SeriesLayers<S> {
    a: S,
    c: S,
    b: Vec<S>,
    x: Vec<S>,
    // per-variable binomial coefficients (b_j)_i x_j^i / i!
    univariate: Vec<Vec<S>>,
    univariate_abs: Vec<Vec<S>>,
    // partial products over the first j + 1 variables
    products: Vec<Vec<S>>,
    products_abs: Vec<Vec<S>>,
    poch_ratio: S,
    degree: usize,
}

/// Layer iterator for `params`. Fails when `c` is a non-positive integer.
pub fn series_layers<S: Scalar>(params: &FdParams<S>) -> Result<SeriesLayers<S>> {
    if params.c <= S::zero() && params.c.is_integer_valued() {
        return Err(Error::domain(format!(
            "c = {:?} is a non-positive integer",
            params.c
        )));
    }
    let n = params.n_vars();
    Ok(SeriesLayers {
        a: params.a.clone(),
        c: params.c.clone(),
        b: params.b.clone(),
        x: params.x.clone(),
        univariate: vec![Vec::new(); n],
        univariate_abs: vec![Vec::new(); n],
        products: vec![Vec::new(); n],
        products_abs: vec![Vec::new(); n],
        poch_ratio: S::one(),
        degree: 0,
    })
}

impl<S: Scalar> Iterator for SeriesLayers<S> {
    type Item = (S, S);

    fn next(&mut self) -> Option<(S, S)> {
        let m = self.degree;
        if m > 0 {
            let prev = S::from_int(m as i64 - 1);
            self.poch_ratio = self.poch_ratio.clone() * (self.a.clone() + prev.clone())
                / (self.c.clone() + prev);
        }
        for j in 0..self.x.len() {
            let next = if m == 0 {
                S::one()
            } else {
                let prev = self.univariate[j][m - 1].clone();
                prev * (self.b[j].clone() + S::from_int(m as i64 - 1)) * self.x[j].clone()
                    / S::from_int(m as i64)
            };
            self.univariate_abs[j].push(next.magnitude());
            self.univariate[j].push(next);
        }
        for j in 0..self.x.len() {
            let (value, mag) = if j == 0 {
                (self.univariate[0][m].clone(), self.univariate_abs[0][m].clone())
            } else {
                let mut value = S::zero();
                let mut mag = S::zero();
                for i in 0..=m {
                    let u = &self.univariate[j][i];
                    if u.is_zero() {
                        continue;
                    }
                    value = value + self.products[j - 1][m - i].clone() * u.clone();
                    mag = mag + self.products_abs[j - 1][m - i].clone() * self.univariate_abs[j][i].clone();
                }
                (value, mag)
            };
            self.products[j].push(value);
            self.products_abs[j].push(mag);
        }
        let (h, h_abs) = match self.x.len() {
            0 if m == 0 => (S::one(), S::one()),
            0 => (S::zero(), S::zero()),
            n => (self.products[n - 1][m].clone(), self.products_abs[n - 1][m].clone()),
        };
        self.degree += 1;
        Some((self.poch_ratio.clone() * h, self.poch_ratio.magnitude() * h_abs))
    }
}

/// Number of multi-indices in `N` variables with total degree below
/// `layers`, i.e. `C(layers - 1 + N, N)`.
fn multi_index_count(n_vars: usize, layers: usize) -> u128 {
    if layers == 0 {
        return 0;
    }
    let top = (layers - 1 + n_vars) as u128;
    let mut count: u128 = 1;
    for k in 0..n_vars as u128 {
        count = count.saturating_mul(top - k) / (k + 1);
    }
    count
}

/// Sums the defining series of `F_D` by total-degree layers.
pub fn fd_series<R: Real>(params: &FdParams<R>, cfg: &SeriesConfig) -> Result<EvalResult<R>> {
    cfg.validate()?;
    if let Some(x) = params.x.iter().find(|x| !(x.abs() < R::one())) {
        return Err(Error::domain(format!("series needs |x_i| < 1, got {x:?}")));
    }
    let ratio = params.x.iter().fold(R::zero(), |m, x| m.max(x.abs()));
    let tol = R::c(cfg.tol);
    let layers = series_layers(params)?;

    // Neumaier summation
    let mut sum = R::zero();
    let mut comp = R::zero();
    let mut quiet = 0;
    let mut last_abs = R::zero();
    let mut count = 0;
    for (value, mag) in layers.take(cfg.max_total_degree + 1) {
        count += 1;
        let t = sum + value;
        comp = comp + if sum.abs() >= value.abs() { (sum - t) + value } else { (value - t) + sum };
        sum = t;
        last_abs = mag;
        if !mag.is_finite() {
            return Err(Error::domain("series layer overflowed"));
        }
        let floor = tol.max(R::epsilon() * R::c(1e-3) * (sum + comp).abs());
        if mag < floor {
            quiet += 1;
            if quiet >= QUIET_LAYERS {
                let tail = if ratio > R::zero() { ratio / (R::one() - ratio) } else { R::zero() };
                return Ok(EvalResult {
                    value: sum + comp,
                    abs_error_estimate: mag * tail,
                    effort: Effort::Series {
                        layers: count,
                        terms: multi_index_count(params.n_vars(), count),
                    },
                });
            }
        } else {
            quiet = 0;
        }
    }
    let tail = ratio / (R::one() - ratio);
    Err(Error::NotConverged(
        EvalResult {
            value: sum + comp,
            abs_error_estimate: last_abs * tail.max(R::one()),
            effort: Effort::Series {
                layers: count,
                terms: multi_index_count(params.n_vars(), count),
            },
        }
        .to_f64(),
    ))
}
