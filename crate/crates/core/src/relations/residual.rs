//! Numerical residuals of relations.

use serde::{Deserialize, Serialize};

use crate::coeffs::{coeff_p_special, coeffs_t, coeffs_u, SpecialPoint};
use crate::error::{Error, Result};
use crate::fdeval::{fd_eval, integral_in, integral_inp, EvalOptions, Method, QuadConfig};
use crate::scalar::Scalar;
use crate::special::beta;
use crate::types::FdParams;

use super::{drop_zero_coordinates, ConcreteTerm, Relation};

/// Outcome of evaluating `Σ coeff_k · value_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual: f64,
    /// `Σ |coeff_k · value_k|`.
    pub scale: f64,
    /// `|residual| / scale`; absent when the scale is zero.
    pub relative_residual: Option<f64>,
    /// `F_D` (or raw integral) value per term; absent for zero coefficients,
    /// which are not evaluated.
    pub term_values: Vec<Option<f64>>,
    /// `coeff_k · value_k` including any beta prefactor.
    pub contributions: Vec<f64>,
    pub tol: f64,
    pub pass: bool,
    /// True when every contribution vanished, so no relative residual exists.
    pub degenerate: bool,
}

impl ResidualReport {
    pub fn from_parts(values: Vec<Option<f64>>, contributions: Vec<f64>, tol: f64) -> Self {
        // Neumaier summation
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for &v in &contributions {
            let t = sum + v;
            comp += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
            sum = t;
        }
        let residual = sum + comp;
        let scale: f64 = contributions.iter().map(|v| v.abs()).sum();
        let degenerate = !(scale > 0.0);
        let relative_residual = (!degenerate).then(|| residual.abs() / scale);
        let pass = relative_residual.is_some_and(|r| r <= tol);
        ResidualReport { residual, scale, relative_residual, term_values: values, contributions, tol, pass, degenerate }
    }
}

/// Evaluates materialised terms in double precision.
pub fn residual_of_terms(terms: &[ConcreteTerm<f64>], method: Method, opts: &EvalOptions, tol: f64) -> Result<ResidualReport> {
    let mut values = Vec::with_capacity(terms.len());
    let mut contributions = Vec::with_capacity(terms.len());
    for (index, term) in terms.iter().enumerate() {
        if term.coeff == 0.0 {
            values.push(None);
            contributions.push(0.0);
            continue;
        }
        let wrap = |e: Error| Error::Term { index, source: Box::new(e) };
        let (value, _) = fd_eval(&term.params, method, opts).map_err(wrap)?;
        let prefactor = match term.beta {
            Some((u, v)) => beta(u, v).map_err(wrap)?,
            None => 1.0,
        };
        values.push(Some(value.value));
        contributions.push(term.coeff * prefactor * value.value);
    }
    Ok(ResidualReport::from_parts(values, contributions, tol))
}

/// Evaluates every term of `rel` and sums. `pass` holds when
/// `|residual| <= tol · scale` with a nonzero scale.
pub fn residual<S: Scalar>(rel: &Relation<S>, method: Method, opts: &EvalOptions, tol: f64) -> Result<ResidualReport> {
    let terms: Vec<ConcreteTerm<f64>> = rel.materialize().iter().map(ConcreteTerm::to_f64).collect();
    residual_of_terms(&terms, method, opts, tol)
}

/// Integral-level identities, checked by direct quadrature of each
/// `I_m` / `I_{m,p}` without going through `F_D`.
#[derive(Debug, Clone, PartialEq)]
pub enum IntegralIdentity<S> {
    /// `Σ_{k=0}^{N+1} (n d_{k+1} + e_k) I_{k+n} = 0`, `n >= 0`.
    Calbp { n: i64 },
    /// `Σ_{k=0}^{N+2} (-n p d_k(p) + e_{k-1}(p)) I_{k+n-1,p} = 0`.
    Calpol { n: i64, p: S },
    /// `Σ_{k=0}^{N+1} (-n p d_{k+1}(p) + e_k(p)) I_{k+n,p} = 0` for
    /// `p = 1` or `p = x_i`.
    Calpol0 { n: i64, point: SpecialPoint },
}

pub fn verify_integral_identity<S: Scalar>(
    identity: &IntegralIdentity<S>,
    params: &FdParams<S>,
    cfg: &QuadConfig,
    tol: f64,
) -> Result<ResidualReport> {
    let mut coeffs: Vec<S> = Vec::new();
    let mut values: Vec<Option<f64>> = Vec::new();
    let wrap = |index: usize| move |e: Error| Error::Term { index, source: Box::new(e) };
    match identity {
        IntegralIdentity::Calbp { n } => {
            let n = *n;
            if n < 0 {
                return Err(Error::domain("CALBP needs n >= 0"));
            }
            let pf = params.to_f64();
            let ct = coeffs_t(params);
            let nn = S::from_int(n);
            for k in 0..=params.n_vars() as i64 + 1 {
                let coeff = nn.clone() * ct.d_at(k + 1) + ct.e_at(k);
                values.push(Some(integral_in(k + n, &pf, cfg).map_err(wrap(k as usize))?.value));
                coeffs.push(coeff);
            }
        }
        IntegralIdentity::Calpol { n, p } => {
            let n = *n;
            let reduced = drop_zero_coordinates(params);
            let pf = reduced.to_f64();
            let cu = coeffs_u(p, &reduced)?;
            let nn = S::from_int(n);
            for k in 0..=reduced.n_vars() as i64 + 2 {
                let coeff = -(nn.clone() * p.clone() * cu.d_at(k)) + cu.e_at(k - 1);
                values.push(Some(integral_inp(k + n - 1, p.as_f64(), &pf, cfg).map_err(wrap(k as usize))?.value));
                coeffs.push(coeff);
            }
        }
        IntegralIdentity::Calpol0 { n, point } => {
            let n = *n;
            let cu = coeff_p_special(*point, params)?;
            let pf = params.to_f64();
            let nn = S::from_int(n);
            for k in 0..=params.n_vars() as i64 + 1 {
                let coeff = -(nn.clone() * cu.p.clone() * cu.d_at(k + 1)) + cu.e_at(k);
                values.push(Some(integral_inp(k + n, cu.p.as_f64(), &pf, cfg).map_err(wrap(k as usize))?.value));
                coeffs.push(coeff);
            }
        }
    }
    let contributions = coeffs
        .iter()
        .zip(&values)
        .map(|(c, v)| c.as_f64() * v.unwrap_or(0.0))
        .collect();
    Ok(ResidualReport::from_parts(values, contributions, tol))
}
