//! Coefficients of the relations among shifted `F_D` instances.
//!
//! With `K(t)` the Euler integrand and `P(t) = t (1-t) Π (1 - x_j t)`,
//!
//! ```text
//! d/dt [t^n P K] = [n t^{n-1} P(t) + t^n W(t)] K(t)
//! d/dt [u^n P K] = [-n p u^{n-1} P(t) + u^n W(t)] K(t),   u = 1 - p t
//! ```
//!
//! `d_k`, `e_k` are the coefficients of `P` and `W` in powers of `t`;
//! `d_k(p)`, `e_k(p)` the coefficients in powers of `u`. This module computes
//! them from elementary symmetric polynomials of the roots, with the
//! specialised forms for `p = 1` and `p = x_i`. [`oracle`] expands the same
//! polynomials by direct multiplication.

pub mod oracle;

pub use oracle::{expand_oracle_t, expand_oracle_u};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symmpoly::{elem_sym_all, sigma_at};
use crate::types::FdParams;

/// Coefficients in powers of `t`: `d` on `0..=N+2`, `e` on `0..=N+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffsT<S> {
    pub d: Vec<S>,
    pub e: Vec<S>,
}

/// Coefficients in powers of `u = 1 - p t`: `d` on `0..=N+2`, `e` on
/// `0..=N+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffsU<S> {
    pub p: S,
    pub d: Vec<S>,
    pub e: Vec<S>,
}

impl<S: Scalar> CoeffsU<S> {
    /// `d_k(p)` with zero outside `0..=N+2`.
    pub fn d_at(&self, k: i64) -> S {
        sigma_at(&self.d, k)
    }

    /// `e_k(p)` with zero outside `0..=N+1`.
    pub fn e_at(&self, k: i64) -> S {
        sigma_at(&self.e, k)
    }
}

impl<S: Scalar> CoeffsT<S> {
    pub fn d_at(&self, k: i64) -> S {
        sigma_at(&self.d, k)
    }

    pub fn e_at(&self, k: i64) -> S {
        sigma_at(&self.e, k)
    }
}

/// Which special value of `p` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialPoint {
    One,
    /// `p = x_i`, zero-based index.
    X(usize),
}

/// Two equivalent ways of writing `w_k(p)` and `z_{k,l}(p)`: with the root
/// `-1` kept in the argument list, or peeled off by the prepend recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SigmaForm {
    #[default]
    Direct,
    Peeled,
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn without<S: Clone>(v: &[S], skip: &[usize]) -> Vec<S> {
    v.iter()
        .enumerate()
        .filter(|(j, _)| !skip.contains(j))
        .map(|(_, y)| y.clone())
        .collect()
}

fn prepend<S: Clone>(head: &[S], tail: &[S]) -> Vec<S> {
    head.iter().chain(tail).cloned().collect()
}

fn product<S: Scalar>(v: &[S]) -> S {
    v.iter().fold(S::one(), |acc, y| acc * y.clone())
}

fn pow<S: Scalar>(base: &S, n: usize) -> S {
    (0..n).fold(S::one(), |acc, _| acc * base.clone())
}

/// `d_k = (-1)^{k-1} [σ_{k-1}(x) + σ_{k-2}(x)]`, `k = 0..=N+2`.
pub fn coeff_d<S: Scalar>(x: &[S]) -> Vec<S> {
    let sx = elem_sym_all(x);
    (0..=x.len() as i64 + 2)
        .map(|k| S::from_int(sign(k - 1)) * (sigma_at(&sx, k - 1) + sigma_at(&sx, k - 2)))
        .collect()
}

/// `e_k = a v_k + (c-a) w_k + Σ_l (1-b_l) x_l z_{k,l}`, `k = 0..=N+1`.
pub fn coeff_e<S: Scalar>(params: &FdParams<S>) -> Vec<S> {
    let x = &params.x;
    let n = x.len() as i64;
    let sx = elem_sym_all(x);
    let loo: Vec<Vec<S>> = (0..x.len()).map(|l| elem_sym_all(&without(x, &[l]))).collect();
    let w1 = params.beta1() + S::one();
    let w2 = params.beta2() + S::one();
    let wl: Vec<S> = params.alpha().into_iter().map(|a| a + S::one()).collect();
    (0..=n + 1)
        .map(|k| {
            let s = S::from_int(sign(k));
            let v = s.clone() * (sigma_at(&sx, k) + sigma_at(&sx, k - 1));
            let w = s.clone() * sigma_at(&sx, k - 1);
            let mut e = w1.clone() * v + w2.clone() * w;
            for l in 0..x.len() {
                let z = s.clone() * (sigma_at(&loo[l], k - 1) + sigma_at(&loo[l], k - 2));
                e = e + wl[l].clone() * x[l].clone() * z;
            }
            e
        })
        .collect()
}

/// Both coefficient vectors in powers of `t`.
pub fn coeffs_t<S: Scalar>(params: &FdParams<S>) -> CoeffsT<S> {
    CoeffsT { d: coeff_d(&params.x), e: coeff_e(params) }
}

fn check_nonzero<S: Scalar>(p: &S, x: &[S]) -> Result<()> {
    if p.is_zero() {
        return Err(Error::domain("p = 0 is not allowed in the u-expansion"));
    }
    if let Some(j) = x.iter().position(|v| v.is_zero()) {
        return Err(Error::domain(format!(
            "x_{} = 0; drop zero coordinates before expanding in u",
            j + 1
        )));
    }
    Ok(())
}

/// `(p - x_j) / x_j` for every `j`.
fn shifted_roots<S: Scalar>(p: &S, x: &[S]) -> Vec<S> {
    x.iter().map(|xj| (p.clone() - xj.clone()) / xj.clone()).collect()
}

/// `d_k(p) = Πx / p^{N+2} [σ_{N+1-k}(p-1, r) - σ_{N+2-k}(p-1, r)]` with
/// `r_j = (p - x_j) / x_j`, `k = 0..=N+2`.
pub fn coeff_d_p<S: Scalar>(p: &S, x: &[S]) -> Result<Vec<S>> {
    check_nonzero(p, x)?;
    let n = x.len() as i64;
    let roots = prepend(&[p.clone() - S::one()], &shifted_roots(p, x));
    let table = elem_sym_all(&roots);
    let pref = product(x) / pow(p, x.len() + 2);
    Ok((0..=n + 2)
        .map(|k| pref.clone() * (sigma_at(&table, n + 1 - k) - sigma_at(&table, n + 2 - k)))
        .collect())
}

/// `e_k(p) = Πx / p^{N+1} [a v_k(p) + (c-a) w_k(p) + Σ_l (1-b_l) z_{k,l}(p)]`
/// with
///
/// ```text
/// v_k(p)     = σ_{N+1-k}(p-1, r)
/// w_k(p)     = σ_{N+1-k}(-1, r)
/// z_{k,l}(p) = σ_{N+1-k}(-1, p-1, r without r_l)
/// ```
///
/// The `z` term carries no extra `x_l`: substituting `t = (1-u)/p` into
/// `-x_l t (1-t) Π_{j≠l}(1 - x_j t)` produces exactly the common prefactor
/// `Πx / p^{N+1}`.
pub fn coeff_e_p<S: Scalar>(p: &S, params: &FdParams<S>) -> Result<Vec<S>> {
    coeff_e_p_with(p, params, SigmaForm::Direct)
}

pub fn coeff_e_p_with<S: Scalar>(p: &S, params: &FdParams<S>, form: SigmaForm) -> Result<Vec<S>> {
    let x = &params.x;
    check_nonzero(p, x)?;
    let n = x.len() as i64;
    let m1 = -S::one();
    let pm1 = p.clone() - S::one();
    let r = shifted_roots(p, x);
    let v_table = elem_sym_all(&prepend(std::slice::from_ref(&pm1), &r));
    let (w_table, z_tables) = match form {
        SigmaForm::Direct => (
            elem_sym_all(&prepend(std::slice::from_ref(&m1), &r)),
            (0..x.len())
                .map(|l| elem_sym_all(&prepend(&[m1.clone(), pm1.clone()], &without(&r, &[l]))))
                .collect::<Vec<_>>(),
        ),
        SigmaForm::Peeled => (
            elem_sym_all(&r),
            (0..x.len())
                .map(|l| elem_sym_all(&prepend(std::slice::from_ref(&pm1), &without(&r, &[l]))))
                .collect(),
        ),
    };
    let pick = |table: &[S], k: i64| match form {
        SigmaForm::Direct => sigma_at(table, n + 1 - k),
        SigmaForm::Peeled => sigma_at(table, n + 1 - k) - sigma_at(table, n - k),
    };
    let pref = product(x) / pow(p, x.len() + 1);
    Ok(assemble_e(params, &pref, n, |k| sigma_at(&v_table, n + 1 - k), |k| pick(&w_table, k), |l, k| {
        pick(&z_tables[l], k)
    }))
}

fn assemble_e<S: Scalar>(
    params: &FdParams<S>,
    pref: &S,
    n: i64,
    v: impl Fn(i64) -> S,
    w: impl Fn(i64) -> S,
    z: impl Fn(usize, i64) -> S,
) -> Vec<S> {
    let w1 = params.beta1() + S::one();
    let w2 = params.beta2() + S::one();
    let wl: Vec<S> = params.alpha().into_iter().map(|a| a + S::one()).collect();
    (0..=n + 1)
        .map(|k| {
            let mut inner = w1.clone() * v(k) + w2.clone() * w(k);
            for (l, weight) in wl.iter().enumerate() {
                inner = inner + weight.clone() * z(l, k);
            }
            pref.clone() * inner
        })
        .collect()
}

/// Both u-expansion vectors for a generic `p`.
pub fn coeffs_u<S: Scalar>(p: &S, params: &FdParams<S>) -> Result<CoeffsU<S>> {
    Ok(CoeffsU {
        p: p.clone(),
        d: coeff_d_p(p, &params.x)?,
        e: coeff_e_p(p, params)?,
    })
}

/// u-expansion at `p = 1` or `p = x_i` through the specialised formulas,
/// in which the vanishing root (`p - 1` or `(x_i - x_i)/x_i`) is dropped.
pub fn coeff_p_special<S: Scalar>(point: SpecialPoint, params: &FdParams<S>) -> Result<CoeffsU<S>> {
    let x = &params.x;
    let n = x.len() as i64;
    match point {
        SpecialPoint::One => {
            check_nonzero(&S::one(), x)?;
            let r: Vec<S> = x.iter().map(|xj| (S::one() - xj.clone()) / xj.clone()).collect();
            let table = elem_sym_all(&r);
            let loo: Vec<Vec<S>> = (0..x.len()).map(|l| elem_sym_all(&without(&r, &[l]))).collect();
            let pref = product(x);
            let d = (0..=n + 2)
                .map(|k| pref.clone() * (sigma_at(&table, n + 1 - k) - sigma_at(&table, n + 2 - k)))
                .collect();
            let e = assemble_e(
                params,
                &pref,
                n,
                |k| sigma_at(&table, n + 1 - k),
                |k| sigma_at(&table, n + 1 - k) - sigma_at(&table, n - k),
                |l, k| sigma_at(&loo[l], n + 1 - k) - sigma_at(&loo[l], n - k),
            );
            Ok(CoeffsU { p: S::one(), d, e })
        }
        SpecialPoint::X(i) => {
            if i >= x.len() {
                return Err(Error::domain(format!("index {} out of range 1..={}", i + 1, x.len())));
            }
            let p = x[i].clone();
            check_nonzero(&p, x)?;
            let pm1 = p.clone() - S::one();
            let r = shifted_roots(&p, x);
            let r_rest = without(&r, &[i]);
            let d_table = elem_sym_all(&prepend(std::slice::from_ref(&pm1), &r_rest));
            let w_all = elem_sym_all(&r);
            let w_rest = elem_sym_all(&r_rest);
            let z_tables: Vec<Vec<S>> = (0..x.len())
                .map(|l| elem_sym_all(&prepend(std::slice::from_ref(&pm1), &without(&r, &[i, l]))))
                .collect();
            let d_pref = product(x) / pow(&p, x.len() + 2);
            let d = (0..=n + 2)
                .map(|k| d_pref.clone() * (sigma_at(&d_table, n + 1 - k) - sigma_at(&d_table, n + 2 - k)))
                .collect();
            let e_pref = product(x) / pow(&p, x.len() + 1);
            let e = assemble_e(
                params,
                &e_pref,
                n,
                |k| sigma_at(&d_table, n + 1 - k),
                |k| sigma_at(&w_all, n + 1 - k) - sigma_at(&w_rest, n - k),
                |l, k| sigma_at(&z_tables[l], n + 1 - k) - sigma_at(&z_tables[l], n - k),
            );
            Ok(CoeffsU { p, d, e })
        }
    }
}

#[cfg(test)]
mod tests;
