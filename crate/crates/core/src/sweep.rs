//! Randomised verification sweeps over the relation families.
//!
//! Every trial draws its parameters from its own generator: ChaCha8 keyed
//! with the 64-bit sweep seed, on stream `family_index << 32 | trial`. The
//! stream index is the only thing that changes between trials, so trials
//! can run in any order (and in parallel) and still reproduce exactly on any
//! platform. Parameters are sampled as exact rationals with denominator
//! 1000 so relation coefficients are exact before the final rounding.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdeval::{EvalOptions, Method};
use crate::rational::{ratio, ExactRational};
use crate::relations::json::{JsonScalar, ToJsonScalar};
use crate::relations::{
    contiguous, diff_relation, pfaff_first, pfaff_second, relation_a, relation_b, relation_c, relation_d, residual,
    Contiguous, Family, ResidualReport,
};
use crate::scalar::Scalar;
use crate::types::FdParams;

const DENOM: i64 = 1000;
const MAX_REJECTIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Evaluator {
    Series,
    Integral,
    /// Both evaluators; a trial passes only if both pass.
    Both,
    /// Series inside radius 0.9, quadrature otherwise.
    Auto,
}

/// Open interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Range { lo, hi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRanges {
    pub a: Range,
    pub c: Range,
    pub b: Range,
    pub x: Range,
    pub p: Range,
}

impl Default for ParamRanges {
    fn default() -> Self {
        ParamRanges {
            a: Range::new(0.3, 4.0),
            c: Range::new(0.3, 4.0),
            b: Range::new(-2.0, 3.0),
            x: Range::new(-0.8, 0.8),
            p: Range::new(-0.8, 0.8),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub families: Vec<Family>,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub evaluator: Evaluator,
    pub ranges: ParamRanges,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            families: vec![Family::A, Family::B, Family::C, Family::D],
            n_min: 1,
            n_max: 3,
            trials: 50,
            seed: 42,
            tol: 1e-7,
            evaluator: Evaluator::Series,
            ranges: ParamRanges::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::domain("sweep needs at least one trial"));
        }
        if self.families.is_empty() {
            return Err(Error::domain("sweep needs at least one family"));
        }
        if self.n_min < 1 || self.n_max < self.n_min {
            return Err(Error::domain(format!("bad variable-count range {}..={}", self.n_min, self.n_max)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::domain("sweep tolerance must be positive"));
        }
        let r = &self.ranges;
        for (name, range) in [("a", r.a), ("c", r.c), ("b", r.b), ("x", r.x), ("p", r.p)] {
            if !(range.lo < range.hi) || !range.lo.is_finite() || !range.hi.is_finite() {
                return Err(Error::domain(format!("empty range for {name}")));
            }
        }
        if !(r.a.lo >= 0.0) {
            return Err(Error::domain("a must be sampled from positive values"));
        }
        if !(r.x.lo >= -1.0 && r.x.hi <= 1.0 && r.p.hi <= 1.0) {
            return Err(Error::domain("x and p ranges must lie inside [-1, 1]"));
        }
        if !(r.c.hi > r.a.lo) {
            return Err(Error::domain("c range leaves no room for c > a"));
        }
        Ok(())
    }
}

/// A trial that failed, with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub n_vars: usize,
    pub n: i64,
    pub p: Option<JsonScalar>,
    pub i: Option<usize>,
    pub a: JsonScalar,
    pub c: JsonScalar,
    pub b: Vec<JsonScalar>,
    pub x: Vec<JsonScalar>,
    pub rel_residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: Family,
    pub trials: usize,
    pub passes: usize,
    pub worst_rel_residual: Option<f64>,
    pub failures: Vec<TrialFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub per_family: Vec<FamilySummary>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.per_family.iter().all(|f| f.passes == f.trials)
    }
}

/// Random point for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialPoint {
    pub n: i64,
    pub p: Option<ExactRational>,
    pub i: Option<usize>,
    pub params: FdParams<ExactRational>,
}

struct TrialOutcome {
    rel: Option<f64>,
    pass: bool,
    error: Option<String>,
}

/// Generator for `trial` of the family at position `family_index`.
pub fn trial_rng(seed: u64, family_index: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((family_index as u64) << 32) | trial as u64);
    rng
}

fn sample(rng: &mut ChaCha8Rng, r: Range) -> ExactRational {
    let lo = (r.lo * DENOM as f64).floor() as i64 + 1;
    let hi = (r.hi * DENOM as f64).ceil() as i64 - 1;
    let k = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
    ratio(k, DENOM).expect("nonzero denominator")
}

fn sample_where(rng: &mut ChaCha8Rng, r: Range, ok: impl Fn(&ExactRational) -> bool) -> Result<ExactRational> {
    for _ in 0..MAX_REJECTIONS {
        let v = sample(rng, r);
        if ok(&v) {
            return Ok(v);
        }
    }
    Err(Error::domain(format!("could not sample an admissible value from ({}, {})", r.lo, r.hi)))
}

/// Draws an admissible point for `family` with `n_vars` variables.
pub fn sample_point(family: Family, n_vars: usize, ranges: &ParamRanges, rng: &mut ChaCha8Rng) -> Result<TrialPoint> {
    let zero = ExactRational::zero();
    let one = ExactRational::one();
    let n: i64 = match family {
        Family::A => rng.gen_range(0..=3),
        Family::B => -rng.gen_range(1..=3),
        Family::C | Family::D => rng.gen_range(-2..=3),
        _ => 0,
    };
    let a_min = if family == Family::Diff { one.clone() } else { zero.clone() };
    let shift = if family == Family::C { ExactRational::from_int(n) } else { zero.clone() };
    let mut pair = None;
    for _ in 0..MAX_REJECTIONS {
        let a = sample(rng, ranges.a);
        let c = sample(rng, ranges.c);
        if a > a_min && c > zero && c.clone() + &shift > a {
            pair = Some((a, c));
            break;
        }
    }
    let (a, c) = pair.ok_or_else(|| Error::domain("could not sample an admissible (a, c) pair"))?;
    let b = (0..n_vars).map(|_| sample(rng, ranges.b)).collect();
    let mut x: Vec<ExactRational> = Vec::with_capacity(n_vars);
    for _ in 0..n_vars {
        x.push(sample_where(rng, ranges.x, |v| !v.is_zero() && *v < one)?);
    }
    let (p, i) = match family {
        Family::B | Family::Contig3 => {
            let p = sample_where(rng, ranges.p, |p| !p.is_zero() && *p < one && !x.contains(p))?;
            (Some(p), None)
        }
        Family::D | Family::Pfaff2 | Family::Contig2 => (None, Some(rng.gen_range(1..=n_vars))),
        _ => (None, None),
    };
    Ok(TrialPoint { n, p, i, params: FdParams::new(a, c, b, x)? })
}

fn point_report(family: Family, pt: &TrialPoint, method: Method, tol: f64) -> Result<ResidualReport> {
    let opts = EvalOptions::default();
    let params = &pt.params;
    let rel = match family {
        Family::A => relation_a(pt.n, params)?,
        Family::B => relation_b(pt.n, pt.p.as_ref().expect("sampled"), params)?,
        Family::C => relation_c(pt.n, params)?,
        Family::D => relation_d(pt.n, pt.i.expect("sampled"), params)?,
        // transformed arguments leave the unit disc, so these never use the bare series
        Family::Pfaff1 => return pfaff_first(params, auto_unless_integral(method), &opts, tol),
        Family::Pfaff2 => return pfaff_second(params, pt.i.expect("sampled"), auto_unless_integral(method), &opts, tol),
        Family::Contig1 => contiguous(Contiguous::First, params)?,
        Family::Contig2 => contiguous(Contiguous::Second(pt.i.expect("sampled")), params)?,
        Family::Contig3 => contiguous(Contiguous::Third(pt.p.clone().expect("sampled")), params)?,
        Family::Diff => diff_relation(params)?,
    };
    residual(&rel, method, &opts, tol)
}

fn auto_unless_integral(method: Method) -> Method {
    match method {
        Method::Integral => Method::Integral,
        _ => Method::Auto,
    }
}

fn run_trial(family: Family, pt: &TrialPoint, evaluator: Evaluator, tol: f64) -> TrialOutcome {
    let methods: &[Method] = match evaluator {
        Evaluator::Series => &[Method::Series],
        Evaluator::Integral => &[Method::Integral],
        Evaluator::Both => &[Method::Series, Method::Integral],
        Evaluator::Auto => &[Method::Auto],
    };
    let mut out = TrialOutcome { rel: None, pass: true, error: None };
    for &m in methods {
        match point_report(family, pt, m, tol) {
            Ok(rep) => {
                if let Some(r) = rep.relative_residual {
                    out.rel = Some(out.rel.map_or(r, |w: f64| w.max(r)));
                }
                out.pass &= rep.pass;
            }
            Err(e) => {
                out.pass = false;
                out.error = Some(e.to_string());
            }
        }
    }
    out
}

fn failure(trial: usize, pt: &TrialPoint, outcome: TrialOutcome) -> TrialFailure {
    TrialFailure {
        trial,
        n_vars: pt.params.n_vars(),
        n: pt.n,
        p: pt.p.as_ref().map(ToJsonScalar::to_json),
        i: pt.i,
        a: pt.params.a.to_json(),
        c: pt.params.c.to_json(),
        b: pt.params.b.iter().map(ToJsonScalar::to_json).collect(),
        x: pt.params.x.iter().map(ToJsonScalar::to_json).collect(),
        rel_residual: outcome.rel,
        error: outcome.error,
    }
}

/// Runs every trial of every family. The report depends only on `config`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let span = config.n_max - config.n_min + 1;
    let mut per_family = Vec::with_capacity(config.families.len());
    for (fi, &family) in config.families.iter().enumerate() {
        let family_index = Family::ALL.iter().position(|f| *f == family).unwrap_or(fi);
        let results: Vec<(TrialPoint, TrialOutcome)> = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let n_vars = config.n_min + trial % span;
                let mut rng = trial_rng(config.seed, family_index, trial);
                let pt = sample_point(family, n_vars, &config.ranges, &mut rng)?;
                let outcome = run_trial(family, &pt, config.evaluator, config.tol);
                Ok((pt, outcome))
            })
            .collect::<Result<_>>()?;
        let mut summary =
            FamilySummary { family, trials: config.trials, passes: 0, worst_rel_residual: None, failures: Vec::new() };
        for (trial, (pt, outcome)) in results.into_iter().enumerate() {
            if let Some(r) = outcome.rel {
                summary.worst_rel_residual = Some(summary.worst_rel_residual.map_or(r, |w| w.max(r)));
            }
            if outcome.pass {
                summary.passes += 1;
            } else {
                log::debug!("{family} trial {trial} failed: {:?}", outcome.error);
                summary.failures.push(failure(trial, &pt, outcome));
            }
        }
        log::info!("{family}: {}/{} passed", summary.passes, summary.trials);
        per_family.push(summary);
    }
    Ok(SweepReport { config: config.clone(), per_family })
}
