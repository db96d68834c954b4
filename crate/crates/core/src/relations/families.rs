//! The four relation families built from the `t`- and `u`-expansions.
//!
//! Integrating `d/dt [t^n P K]` or `d/dt [u^n P K]` over `[0, 1]` gives a
//! vanishing linear combination of the integrals `I_m = ∫ t^m K` or
//! `I_{m,p} = ∫ (1-pt)^m K`, and each of those is a beta function times a
//! shifted `F_D`:
//!
//! ```text
//! I_m      = B(a+m, c-a)   F_D(a+m; b; c+m | x)
//! I_{m,p}  = B(a, c-a)     F_D(a; b, -m; c | x, p)
//! I_{m,1}  = B(a, c+m-a)   F_D(a; b; c+m | x)
//! I_{m,x_i}= B(a, c-a)     F_D(a; .., b_i - m, ..; c | x)
//! ```

use crate::coeffs::{coeff_p_special, coeffs_t, coeffs_u, SpecialPoint};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::FdParams;

use super::{drop_zero_coordinates, AffineForm, Family, FdTerm, Relation, RelationTerm};

fn check_euler<S: Scalar>(params: &FdParams<S>, family: Family) -> Result<()> {
    if !(params.a > S::zero() && params.c > params.a) {
        return Err(Error::domain(format!(
            "family {family} needs c > a > 0, got a = {:?}, c = {:?}",
            params.a, params.c
        )));
    }
    if let Some(x) = params.x.iter().find(|x| !(**x < S::one())) {
        return Err(Error::domain(format!("family {family} needs x_i < 1, got {x:?}")));
    }
    Ok(())
}

const B_OF_A_SHIFT: fn(i64) -> AffineForm = |m| AffineForm { a: 1, c: 0, shift: m };
const C_MINUS_A: fn(i64) -> AffineForm = |m| AffineForm { a: -1, c: 1, shift: m };

/// Family A, `n >= 0`:
/// `Σ_{k=0}^{N+1} (n d_{k+1} + e_k) B(a+k+n, c-a) F_D(a+k+n; b; c+k+n | x) = 0`.
pub fn relation_a<S: Scalar>(n: i64, params: &FdParams<S>) -> Result<Relation<S>> {
    if n < 0 {
        return Err(Error::domain(format!("family A needs n >= 0, got {n}")));
    }
    check_euler(params, Family::A)?;
    let coeffs = coeffs_t(params);
    let nn = S::from_int(n);
    let terms = (0..=params.n_vars() as i64 + 1)
        .map(|k| RelationTerm {
            coeff: nn.clone() * coeffs.d_at(k + 1) + coeffs.e_at(k),
            term: FdTerm::base(params.n_vars())
                .shift_ac(k + n, k + n)
                .with_beta(B_OF_A_SHIFT(k + n), C_MINUS_A(0)),
        })
        .collect();
    Ok(Relation { family: Family::A, n, p: None, i: None, params: params.clone(), terms, extended: false })
}

/// Family B, `n < 0`:
/// `Σ_{k=0}^{N+2} (-n p d_k(p) + e_{k-1}(p)) F_D(a; b, 1-k-n; c | x, p) = 0`.
///
/// `p` must be below 1, nonzero and distinct from every `x_i`; `p = 1` and
/// `p = x_i` are families C and D. Zero coordinates of `x` are dropped
/// first.
pub fn relation_b<S: Scalar>(n: i64, p: &S, params: &FdParams<S>) -> Result<Relation<S>> {
    if n >= 0 {
        return Err(Error::domain(format!(
            "family B is stated for n < 0, got {n}; use relation_b_extended for n >= 0"
        )));
    }
    build_b(n, p, params, false)
}

/// Family B without the sign restriction on `n`. The underlying integral
/// identity still holds for `n >= 0`; instances with `n >= 0` are marked
/// `extended`.
pub fn relation_b_extended<S: Scalar>(n: i64, p: &S, params: &FdParams<S>) -> Result<Relation<S>> {
    build_b(n, p, params, n >= 0)
}

fn build_b<S: Scalar>(n: i64, p: &S, params: &FdParams<S>, extended: bool) -> Result<Relation<S>> {
    let reduced = drop_zero_coordinates(params);
    check_euler(&reduced, Family::B)?;
    if p.is_zero() {
        return Err(Error::domain("family B needs p != 0"));
    }
    if *p == S::one() {
        return Err(Error::domain("family B needs p != 1; use family C for p = 1"));
    }
    if let Some(i) = reduced.x.iter().position(|x| x == p) {
        return Err(Error::domain(format!(
            "family B needs p distinct from x; p equals x_{}, use family D",
            i + 1
        )));
    }
    if !(*p < S::one()) {
        return Err(Error::domain(format!("family B needs p < 1, got {p:?}")));
    }
    let coeffs = coeffs_u(p, &reduced)?;
    let nn = S::from_int(n);
    let terms = (0..=reduced.n_vars() as i64 + 2)
        .map(|k| RelationTerm {
            coeff: -(nn.clone() * p.clone() * coeffs.d_at(k)) + coeffs.e_at(k - 1),
            term: FdTerm::base(reduced.n_vars()).with_extra(p.clone(), S::from_int(1 - k - n)),
        })
        .collect();
    Ok(Relation { family: Family::B, n, p: Some(p.clone()), i: None, params: reduced, terms, extended })
}

/// Family C (`p = 1`), `c + n > a > 0`:
/// `Σ_{k=0}^{N+1} (-n d_{k+1}(1) + e_k(1)) B(a, c+k+n-a) F_D(a; b; c+n+k | x) = 0`.
pub fn relation_c<S: Scalar>(n: i64, params: &FdParams<S>) -> Result<Relation<S>> {
    let reduced = drop_zero_coordinates(params);
    let shifted_c = reduced.c.clone() + S::from_int(n);
    if !(reduced.a > S::zero() && shifted_c > reduced.a) {
        return Err(Error::domain(format!(
            "family C needs c + n > a > 0, got a = {:?}, c = {:?}, n = {n}",
            reduced.a, reduced.c
        )));
    }
    if let Some(x) = reduced.x.iter().find(|x| !(**x < S::one())) {
        return Err(Error::domain(format!("family C needs x_i < 1, got {x:?}")));
    }
    let coeffs = coeff_p_special(SpecialPoint::One, &reduced)?;
    let nn = S::from_int(n);
    let terms = (0..=reduced.n_vars() as i64 + 1)
        .map(|k| RelationTerm {
            coeff: -(nn.clone() * coeffs.d_at(k + 1)) + coeffs.e_at(k),
            term: FdTerm::base(reduced.n_vars())
                .shift_ac(0, n + k)
                .with_beta(B_OF_A_SHIFT(0), C_MINUS_A(n + k)),
        })
        .collect();
    Ok(Relation { family: Family::C, n, p: Some(S::one()), i: None, params: reduced, terms, extended: false })
}

/// Family D (`p = x_i`, one-based `i`), `c > a > 0`:
/// `Σ_{k=0}^{N+1} (-n x_i d_{k+1}(x_i) + e_k(x_i)) F_D(a; .., b_i-n-k, ..; c | x) = 0`.
pub fn relation_d<S: Scalar>(n: i64, i: usize, params: &FdParams<S>) -> Result<Relation<S>> {
    if i == 0 || i > params.n_vars() {
        return Err(Error::domain(format!(
            "family D needs 1 <= i <= N = {}, got {i}",
            params.n_vars()
        )));
    }
    let p = params.x[i - 1].clone();
    if p.is_zero() {
        return Err(Error::domain(format!("family D needs x_{i} != 0")));
    }
    // position of x_i after dropping zero coordinates
    let reduced_i = params.x[..i - 1].iter().filter(|x| !x.is_zero()).count();
    let reduced = drop_zero_coordinates(params);
    check_euler(&reduced, Family::D)?;
    let coeffs = coeff_p_special(SpecialPoint::X(reduced_i), &reduced)?;
    let nn = S::from_int(n);
    let terms = (0..=reduced.n_vars() as i64 + 1)
        .map(|k| RelationTerm {
            coeff: -(nn.clone() * p.clone() * coeffs.d_at(k + 1)) + coeffs.e_at(k),
            term: FdTerm::base(reduced.n_vars()).shift_b(reduced_i, -(n + k)),
        })
        .collect();
    Ok(Relation { family: Family::D, n, p: Some(p), i: Some(reduced_i + 1), params: reduced, terms, extended: false })
}
