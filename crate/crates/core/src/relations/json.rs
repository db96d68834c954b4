//! JSON relation documents.
//!
//! ```json
//! {
//!   "family": "A", "n": 0, "p": null, "i": null,
//!   "terms": [
//!     {"coeff": {"num": "7", "den": "10"}, "a": .., "c": .., "b": [..], "x": [..],
//!      "beta": {"u": .., "v": ..}}
//!   ]
//! }
//! ```
//!
//! Every scalar is either a JSON number or an exact rational
//! `{"num": "..", "den": ".."}` with decimal-string parts. `beta` is `null`
//! for terms without a beta prefactor. Terms are fully materialised, so a
//! document can be verified without the parameter block it came from.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ExactRational, RationalRepr};
use crate::scalar::Scalar;
use crate::types::FdParams;

use super::{ConcreteTerm, Family, Relation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Rational(RationalRepr),
    Float(f64),
}

impl JsonScalar {
    pub fn to_f64(&self) -> Result<f64> {
        match self {
            JsonScalar::Float(v) => Ok(*v),
            JsonScalar::Rational(r) => Ok(ExactRational::try_from(r)?.as_f64()),
        }
    }
}

/// Scalars that serialise into relation documents.
pub trait ToJsonScalar {
    fn to_json(&self) -> JsonScalar;
}

impl ToJsonScalar for f64 {
    fn to_json(&self) -> JsonScalar {
        JsonScalar::Float(*self)
    }
}

impl ToJsonScalar for f32 {
    fn to_json(&self) -> JsonScalar {
        JsonScalar::Float(*self as f64)
    }
}

impl ToJsonScalar for ExactRational {
    fn to_json(&self) -> JsonScalar {
        JsonScalar::Rational(RationalRepr::from(self))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaDoc {
    pub u: JsonScalar,
    pub v: JsonScalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: JsonScalar,
    pub a: JsonScalar,
    pub c: JsonScalar,
    pub b: Vec<JsonScalar>,
    pub x: Vec<JsonScalar>,
    pub beta: Option<BetaDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub family: Family,
    pub n: i64,
    pub p: Option<JsonScalar>,
    pub i: Option<usize>,
    pub terms: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub extended: bool,
}

impl RelationDoc {
    pub fn from_relation<S: Scalar + ToJsonScalar>(rel: &Relation<S>) -> Self {
        let terms = rel
            .materialize()
            .into_iter()
            .map(|t| TermDoc {
                coeff: t.coeff.to_json(),
                a: t.params.a.to_json(),
                c: t.params.c.to_json(),
                b: t.params.b.iter().map(ToJsonScalar::to_json).collect(),
                x: t.params.x.iter().map(ToJsonScalar::to_json).collect(),
                beta: t.beta.map(|(u, v)| BetaDoc { u: u.to_json(), v: v.to_json() }),
            })
            .collect();
        RelationDoc {
            family: rel.family,
            n: rel.n,
            p: rel.p.as_ref().map(ToJsonScalar::to_json),
            i: rel.i,
            terms,
            extended: rel.extended,
        }
    }

    /// Terms in double precision, ready for `residual_of_terms`.
    pub fn concrete_terms(&self) -> Result<Vec<ConcreteTerm<f64>>> {
        self.terms
            .iter()
            .map(|t| {
                let conv = |v: &[JsonScalar]| v.iter().map(JsonScalar::to_f64).collect::<Result<Vec<_>>>();
                let params = FdParams::new(t.a.to_f64()?, t.c.to_f64()?, conv(&t.b)?, conv(&t.x)?)?;
                let beta = match &t.beta {
                    Some(b) => Some((b.u.to_f64()?, b.v.to_f64()?)),
                    None => None,
                };
                Ok(ConcreteTerm { coeff: t.coeff.to_f64()?, params, beta })
            })
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("relation documents always serialise")
    }
}
