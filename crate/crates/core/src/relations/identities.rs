//! Elementary identities: the two Pfaff transformations, three contiguous
//! identities and the relation obtained by differentiating the integrand.

use crate::error::{Error, Result};
use crate::fdeval::{EvalOptions, Method};
use crate::scalar::Scalar;
use crate::types::FdParams;

use super::residual::{residual, residual_of_terms, ResidualReport};
use super::{ConcreteTerm, Family, FdTerm, Relation, RelationTerm};

/// Parameters of the transformed `F_D` and the elementary prefactor
/// `Π base^exponent` it is multiplied by.
#[derive(Debug, Clone, PartialEq)]
pub struct PfaffTransform<S> {
    pub params: FdParams<S>,
    pub prefactor: Vec<(S, S)>,
}

impl<S: Scalar> PfaffTransform<S> {
    pub fn prefactor_f64(&self) -> f64 {
        self.prefactor
            .iter()
            .map(|(base, exp)| base.as_f64().powf(exp.as_f64()))
            .product()
    }
}

fn check_below_one<S: Scalar>(x: &[S]) -> Result<()> {
    match x.iter().find(|x| !(**x < S::one())) {
        Some(x) => Err(Error::domain(format!("Pfaff transformation needs x_i < 1, got {x:?}"))),
        None => Ok(()),
    }
}

/// `F_D(a; b; c | x) = Π (1-x_i)^{-b_i} F_D(c-a; b; c | y)`, `y_i = -x_i / (1-x_i)`.
pub fn pfaff_first_transform<S: Scalar>(params: &FdParams<S>) -> Result<PfaffTransform<S>> {
    check_below_one(&params.x)?;
    let y = params.x.iter().map(|x| -x.clone() / (S::one() - x.clone())).collect();
    Ok(PfaffTransform {
        params: FdParams { a: params.c.clone() - params.a.clone(), c: params.c.clone(), b: params.b.clone(), x: y },
        prefactor: params.x.iter().zip(&params.b).map(|(x, b)| (S::one() - x.clone(), -b.clone())).collect(),
    })
}

/// `F_D(a; b; c | x) = (1-x_i)^{-a} F_D(a; c-Σb, b without b_i; c | y_i, z_{i,j})`
/// with `z_{i,j} = (x_j - x_i) / (1 - x_i)`, one-based `i`.
pub fn pfaff_second_transform<S: Scalar>(params: &FdParams<S>, i: usize) -> Result<PfaffTransform<S>> {
    if i == 0 || i > params.n_vars() {
        return Err(Error::domain(format!("index {i} out of range 1..={}", params.n_vars())));
    }
    check_below_one(&params.x)?;
    let xi = params.x[i - 1].clone();
    let denom = S::one() - xi.clone();
    let sum_b = params.b.iter().fold(S::zero(), |acc, b| acc + b.clone());
    let mut b = vec![params.c.clone() - sum_b];
    let mut x = vec![-xi.clone() / denom.clone()];
    for (j, (bj, xj)) in params.b.iter().zip(&params.x).enumerate() {
        if j != i - 1 {
            b.push(bj.clone());
            x.push((xj.clone() - xi.clone()) / denom.clone());
        }
    }
    Ok(PfaffTransform {
        params: FdParams { a: params.a.clone(), c: params.c.clone(), b, x },
        prefactor: vec![(denom, -params.a.clone())],
    })
}

fn pfaff_residual<S: Scalar>(
    params: &FdParams<S>,
    transform: &PfaffTransform<S>,
    method: Method,
    opts: &EvalOptions,
    tol: f64,
) -> Result<ResidualReport> {
    let terms = [
        ConcreteTerm { coeff: 1.0, params: params.to_f64(), beta: None },
        ConcreteTerm { coeff: -transform.prefactor_f64(), params: transform.params.to_f64(), beta: None },
    ];
    residual_of_terms(&terms, method, opts, tol)
}

/// Residual of the first Pfaff identity.
pub fn pfaff_first<S: Scalar>(params: &FdParams<S>, method: Method, opts: &EvalOptions, tol: f64) -> Result<ResidualReport> {
    let transform = pfaff_first_transform(params)?;
    pfaff_residual(params, &transform, method, opts, tol)
}

/// Residual of the second Pfaff identity for variable `i` (one-based).
pub fn pfaff_second<S: Scalar>(
    params: &FdParams<S>,
    i: usize,
    method: Method,
    opts: &EvalOptions,
    tol: f64,
) -> Result<ResidualReport> {
    let transform = pfaff_second_transform(params, i)?;
    pfaff_residual(params, &transform, method, opts, tol)
}

/// Which three-term contiguous identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Contiguous<S> {
    /// `a F(a+1; c+1) + (c-a) F(a; c+1) = c F`
    First,
    /// `a x_i F(a+1; c+1) + c F(b_i - 1) = c F`, one-based `i`
    Second(usize),
    /// `a p F(a+1; c+1) + c F(a; b, -1; c | x, p) = c F`
    Third(S),
}

/// Contiguous identity as a relation (`c > a > 0`).
pub fn contiguous<S: Scalar>(kind: Contiguous<S>, params: &FdParams<S>) -> Result<Relation<S>> {
    let n = params.n_vars();
    let (a, c) = (params.a.clone(), params.c.clone());
    if !(a > S::zero() && c > a) {
        return Err(Error::domain(format!("contiguous identities need c > a > 0, got a = {a:?}, c = {c:?}")));
    }
    let raised = FdTerm::base(n).shift_ac(1, 1);
    let rhs = RelationTerm { coeff: -c.clone(), term: FdTerm::base(n) };
    let (family, p, i, terms) = match kind {
        Contiguous::First => (
            Family::Contig1,
            None,
            None,
            vec![
                RelationTerm { coeff: a.clone(), term: raised },
                RelationTerm { coeff: c.clone() - a.clone(), term: FdTerm::base(n).shift_ac(0, 1) },
                rhs,
            ],
        ),
        Contiguous::Second(i) => {
            if i == 0 || i > n {
                return Err(Error::domain(format!("index {i} out of range 1..={n}")));
            }
            (
                Family::Contig2,
                None,
                Some(i),
                vec![
                    RelationTerm { coeff: a.clone() * params.x[i - 1].clone(), term: raised },
                    RelationTerm { coeff: c.clone(), term: FdTerm::base(n).shift_b(i - 1, -1) },
                    rhs,
                ],
            )
        }
        Contiguous::Third(p) => {
            if p == S::one() || params.x.contains(&p) {
                return Err(Error::domain(format!("third contiguous identity needs p outside {{1, x_i}}, got {p:?}")));
            }
            (
                Family::Contig3,
                Some(p.clone()),
                None,
                vec![
                    RelationTerm { coeff: a.clone() * p.clone(), term: raised },
                    RelationTerm { coeff: c.clone(), term: FdTerm::base(n).with_extra(p, -S::one()) },
                    rhs,
                ],
            )
        }
    };
    Ok(Relation { family, n: 0, p, i, params: params.clone(), terms, extended: false })
}

/// `(c-1) F(a-1; c-1) - (c-1) F(a; c-1) + Σ_j b_j x_j F(a; b_j+1; c) = 0`,
/// for `c > a > 1` so every instance has an Euler integral.
pub fn diff_relation<S: Scalar>(params: &FdParams<S>) -> Result<Relation<S>> {
    let n = params.n_vars();
    if !(params.a > S::one() && params.c > params.a) {
        return Err(Error::domain(format!(
            "the differential relation needs c > a > 1, got a = {:?}, c = {:?}",
            params.a, params.c
        )));
    }
    let cm1 = params.c.clone() - S::one();
    let mut terms = vec![
        RelationTerm { coeff: cm1.clone(), term: FdTerm::base(n).shift_ac(-1, -1) },
        RelationTerm { coeff: -cm1, term: FdTerm::base(n).shift_ac(0, -1) },
    ];
    for j in 0..n {
        terms.push(RelationTerm {
            coeff: params.b[j].clone() * params.x[j].clone(),
            term: FdTerm::base(n).shift_b(j, 1),
        });
    }
    Ok(Relation { family: Family::Diff, n: 0, p: None, i: None, params: params.clone(), terms, extended: false })
}

/// Residual of a contiguous identity.
pub fn contiguous_residual<S: Scalar>(
    kind: Contiguous<S>,
    params: &FdParams<S>,
    method: Method,
    opts: &EvalOptions,
    tol: f64,
) -> Result<ResidualReport> {
    residual(&contiguous(kind, params)?, method, opts, tol)
}
