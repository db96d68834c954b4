//! Direct polynomial expansion of `P` and `W`.
//!
//! Each linear factor is written as a coefficient vector and the products
//! are multiplied out term by term. No symmetric-polynomial identity is
//! used, so these results serve as the reference for the closed forms in
//! the parent module.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::FdParams;

use super::{CoeffsT, CoeffsU};

/// Dense univariate polynomial, lowest degree first.
type Poly<S> = Vec<S>;

fn mul<S: Scalar>(f: &[S], g: &[S]) -> Poly<S> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero(); f.len() + g.len() - 1];
    for (i, fi) in f.iter().enumerate() {
        for (j, gj) in g.iter().enumerate() {
            out[i + j] = out[i + j].clone() + fi.clone() * gj.clone();
        }
    }
    out
}

fn add_into<S: Scalar>(acc: &mut Poly<S>, f: &[S], weight: &S) {
    if acc.len() < f.len() {
        acc.resize(f.len(), S::zero());
    }
    for (i, fi) in f.iter().enumerate() {
        acc[i] = acc[i].clone() + weight.clone() * fi.clone();
    }
}

fn product_of<S: Scalar>(factors: &[&Poly<S>]) -> Poly<S> {
    factors.iter().fold(vec![S::one()], |acc, f| mul(&acc, f))
}

fn padded<S: Scalar>(mut f: Poly<S>, len: usize) -> Poly<S> {
    f.resize(len.max(f.len()), S::zero());
    f.truncate(len);
    f
}

/// The linear factors `t`, `1 - t`, `1 - x_j t` in some variable.
struct Factors<S> {
    t: Poly<S>,
    one_minus_t: Poly<S>,
    per_x: Vec<Poly<S>>,
}

/// `P` and `W` from the factor list:
///
/// ```text
/// P = t (1-t) Π_j (1 - x_j t)
/// W = (β1+1)(1-t) Π_j (1 - x_j t) - (β2+1) t Π_j (1 - x_j t)
///     - Σ_l (α_l+1) x_l t (1-t) Π_{j≠l} (1 - x_j t)
/// ```
fn expand<S: Scalar>(params: &FdParams<S>, f: &Factors<S>) -> (Poly<S>, Poly<S>) {
    let all: Vec<&Poly<S>> = f.per_x.iter().collect();
    let prod_all = product_of(&all);
    let p = product_of(&[&f.t, &f.one_minus_t, &prod_all]);

    let mut w = Vec::new();
    add_into(&mut w, &mul(&f.one_minus_t, &prod_all), &(params.beta1() + S::one()));
    add_into(&mut w, &mul(&f.t, &prod_all), &-(params.beta2() + S::one()));
    for (l, alpha) in params.alpha().into_iter().enumerate() {
        let others: Vec<&Poly<S>> = f.per_x.iter().enumerate().filter(|(j, _)| *j != l).map(|(_, q)| q).collect();
        let rest = product_of(&others);
        let term = product_of(&[&f.t, &f.one_minus_t, &rest]);
        add_into(&mut w, &term, &-((alpha + S::one()) * params.x[l].clone()));
    }
    (p, w)
}

/// Coefficients of `P(t)` and `W(t)` by direct multiplication.
pub fn expand_oracle_t<S: Scalar>(params: &FdParams<S>) -> CoeffsT<S> {
    let n = params.n_vars();
    let factors = Factors {
        t: vec![S::zero(), S::one()],
        one_minus_t: vec![S::one(), -S::one()],
        per_x: params.x.iter().map(|x| vec![S::one(), -x.clone()]).collect(),
    };
    let (p, w) = expand(params, &factors);
    CoeffsT { d: padded(p, n + 3), e: padded(w, n + 2) }
}

/// Coefficients of `P` and `W` in `u = 1 - p t`, from the substitution
/// `t = (1 - u) / p` into each linear factor.
pub fn expand_oracle_u<S: Scalar>(p: &S, params: &FdParams<S>) -> Result<CoeffsU<S>> {
    if p.is_zero() {
        return Err(Error::domain("p = 0 is not allowed in the u-expansion"));
    }
    if params.x.iter().any(|x| x.is_zero()) {
        return Err(Error::domain("zero coordinate in the u-expansion"));
    }
    let n = params.n_vars();
    let inv = S::one() / p.clone();
    let factors = Factors {
        t: vec![inv.clone(), -inv.clone()],
        one_minus_t: vec![S::one() - inv.clone(), inv.clone()],
        per_x: params
            .x
            .iter()
            .map(|x| vec![S::one() - x.clone() * inv.clone(), x.clone() * inv.clone()])
            .collect(),
    };
    let (d, e) = expand(params, &factors);
    Ok(CoeffsU { p: p.clone(), d: padded(d, n + 3), e: padded(e, n + 2) })
}
