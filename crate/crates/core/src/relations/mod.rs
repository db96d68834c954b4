//! Relation instances and their numerical verification.
//!
//! A [`Relation`] is a list of `(coefficient, term)` pairs whose weighted sum
//! of `F_D` values vanishes. Each [`FdTerm`] stores integer shifts of the
//! base parameters plus an optional beta-function prefactor, so the same
//! descriptors apply to exact and floating point parameter blocks.

mod families;
mod identities;
pub mod json;
mod residual;

pub use families::{relation_a, relation_b, relation_b_extended, relation_c, relation_d};
pub use identities::{
    contiguous, contiguous_residual, diff_relation, pfaff_first, pfaff_first_transform, pfaff_second, pfaff_second_transform, Contiguous,
    PfaffTransform,
};
pub use residual::{
    residual, residual_of_terms, verify_integral_identity, IntegralIdentity, ResidualReport,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::FdParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Simultaneous shifts of `a` and `c`.
    A,
    /// One extra variable `p` with an integer parameter.
    B,
    /// Shifts of `c` alone.
    C,
    /// Shifts of a single `b_i`.
    D,
    #[serde(rename = "PFAFF1")]
    Pfaff1,
    #[serde(rename = "PFAFF2")]
    Pfaff2,
    #[serde(rename = "CONTIG1")]
    Contig1,
    #[serde(rename = "CONTIG2")]
    Contig2,
    #[serde(rename = "CONTIG3")]
    Contig3,
    #[serde(rename = "DIFF")]
    Diff,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::Pfaff1,
        Family::Pfaff2,
        Family::Contig1,
        Family::Contig2,
        Family::Contig3,
        Family::Diff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::Pfaff1 => "PFAFF1",
            Family::Pfaff2 => "PFAFF2",
            Family::Contig1 => "CONTIG1",
            Family::Contig2 => "CONTIG2",
            Family::Contig3 => "CONTIG3",
            Family::Diff => "DIFF",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// `a_coef * a + c_coef * c + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineForm {
    pub a: i64,
    pub c: i64,
    pub shift: i64,
}

impl AffineForm {
    pub fn eval<S: Scalar>(&self, a: &S, c: &S) -> S {
        S::from_int(self.a) * a.clone() + S::from_int(self.c) * c.clone() + S::from_int(self.shift)
    }
}

/// `B(u, v)` with `u`, `v` affine in the base `a`, `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaPrefactor {
    pub u: AffineForm,
    pub v: AffineForm,
}

/// Extra variable appended to a term: argument `x` with parameter `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtraArg<S> {
    pub x: S,
    pub b: S,
}

/// One `F_D` instance described relative to a base parameter block.
#[derive(Debug, Clone, PartialEq)]
pub struct FdTerm<S> {
    pub a_shift: i64,
    pub c_shift: i64,
    /// Per-index shift of `b`, same length as the base `b`.
    pub b_shifts: Vec<i64>,
    pub extra: Option<ExtraArg<S>>,
    /// `None` means the constant 1.
    pub beta: Option<BetaPrefactor>,
}

impl<S: Scalar> FdTerm<S> {
    pub fn base(n_vars: usize) -> Self {
        FdTerm { a_shift: 0, c_shift: 0, b_shifts: vec![0; n_vars], extra: None, beta: None }
    }

    pub fn shift_ac(mut self, a_shift: i64, c_shift: i64) -> Self {
        self.a_shift = a_shift;
        self.c_shift = c_shift;
        self
    }

    pub fn shift_b(mut self, index: usize, by: i64) -> Self {
        self.b_shifts[index] = by;
        self
    }

    pub fn with_extra(mut self, x: S, b: S) -> Self {
        self.extra = Some(ExtraArg { x, b });
        self
    }

    pub fn with_beta(mut self, u: AffineForm, v: AffineForm) -> Self {
        self.beta = Some(BetaPrefactor { u, v });
        self
    }

    /// Applies the shifts to `base`.
    pub fn apply(&self, base: &FdParams<S>) -> FdParams<S> {
        let mut b: Vec<S> = base
            .b
            .iter()
            .zip(&self.b_shifts)
            .map(|(b, s)| b.clone() + S::from_int(*s))
            .collect();
        let mut x = base.x.clone();
        if let Some(extra) = &self.extra {
            b.push(extra.b.clone());
            x.push(extra.x.clone());
        }
        FdParams {
            a: base.a.clone() + S::from_int(self.a_shift),
            c: base.c.clone() + S::from_int(self.c_shift),
            b,
            x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationTerm<S> {
    pub coeff: S,
    pub term: FdTerm<S>,
}

/// `Σ coeff_k · B_k · F_D(term_k) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation<S> {
    pub family: Family,
    pub n: i64,
    pub p: Option<S>,
    /// One-based variable index for families that single one out.
    pub i: Option<usize>,
    /// Parameter block the shifts refer to (after zero coordinates have
    /// been dropped where the family requires it).
    pub params: FdParams<S>,
    pub terms: Vec<RelationTerm<S>>,
    /// Set for instances outside the parameter range the identity is stated
    /// for; their residuals are reported but not asserted.
    pub extended: bool,
}

/// A fully materialised term.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteTerm<S> {
    pub coeff: S,
    pub params: FdParams<S>,
    pub beta: Option<(S, S)>,
}

impl<S: Scalar> ConcreteTerm<S> {
    pub fn to_f64(&self) -> ConcreteTerm<f64> {
        ConcreteTerm {
            coeff: self.coeff.as_f64(),
            params: self.params.to_f64(),
            beta: self.beta.as_ref().map(|(u, v)| (u.as_f64(), v.as_f64())),
        }
    }
}

impl<S: Scalar> Relation<S> {
    pub fn materialize(&self) -> Vec<ConcreteTerm<S>> {
        self.terms
            .iter()
            .map(|rt| ConcreteTerm {
                coeff: rt.coeff.clone(),
                params: rt.term.apply(&self.params),
                beta: rt
                    .term
                    .beta
                    .map(|bp| (bp.u.eval(&self.params.a, &self.params.c), bp.v.eval(&self.params.a, &self.params.c))),
            })
            .collect()
    }

    pub fn coefficients(&self) -> Vec<S> {
        self.terms.iter().map(|t| t.coeff.clone()).collect()
    }

    /// Copy with coefficient `index` multiplied by `1 + rel_delta`.
    pub fn perturbed(&self, index: usize, rel_delta: &S) -> Relation<S> {
        let mut out = self.clone();
        let c = &mut out.terms[index].coeff;
        *c = c.clone() * (S::one() + rel_delta.clone());
        out
    }

    pub fn to_f64(&self) -> Relation<f64> {
        Relation {
            family: self.family,
            n: self.n,
            p: self.p.as_ref().map(Scalar::as_f64),
            i: self.i,
            params: self.params.to_f64(),
            terms: self
                .terms
                .iter()
                .map(|rt| RelationTerm {
                    coeff: rt.coeff.as_f64(),
                    term: FdTerm {
                        a_shift: rt.term.a_shift,
                        c_shift: rt.term.c_shift,
                        b_shifts: rt.term.b_shifts.clone(),
                        extra: rt.term.extra.as_ref().map(|e| ExtraArg { x: e.x.as_f64(), b: e.b.as_f64() }),
                        beta: rt.term.beta,
                    },
                })
                .collect(),
            extended: self.extended,
        }
    }
}

/// Removes coordinates with `x_i = 0`; `(1 - 0·t)^{-b_i} = 1` so the value
/// of `F_D` does not change.
pub fn drop_zero_coordinates<S: Scalar>(params: &FdParams<S>) -> FdParams<S> {
    let (b, x) = params
        .b
        .iter()
        .zip(&params.x)
        .filter(|(_, x)| !x.is_zero())
        .map(|(b, x)| (b.clone(), x.clone()))
        .unzip();
    FdParams { a: params.a.clone(), c: params.c.clone(), b, x }
}
