use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lauricella::fdeval::{fd_eval, EvalOptions, Method};
use lauricella::rational::parse_rational;
use lauricella::relations::json::RelationDoc;
use lauricella::relations::{
    contiguous, diff_relation, pfaff_first, pfaff_second, relation_a, relation_b, relation_b_extended, relation_c,
    relation_d, residual, residual_of_terms, Contiguous, Family, Relation, ResidualReport,
};
use lauricella::sweep::{run_sweep, Evaluator, SweepConfig};
use lauricella::{ExactRational, FdParams, FdParamsQ, Scalar};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] lauricella::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Lib(e) => match e {
                lauricella::Error::Domain(_) => "domain",
                lauricella::Error::DivisionByZero => "division_by_zero",
                lauricella::Error::NotConverged(_) => "not_converged",
                lauricella::Error::Term { .. } => "term",
                lauricella::Error::Parse(_) => "parse",
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Lauricella F_D evaluation and relation checks.
#[derive(Debug, Parser)]
#[command(name = "lauricella", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate F_D(a; b; c | x).
    Eval(EvalArgs),
    /// Emit a relation instance as JSON.
    Relation(RelationArgs),
    /// Verify a relation or identity numerically.
    Verify(VerifyArgs),
    /// Run a randomised verification sweep.
    Sweep(SweepArgs),
}

/// Parameter point. Values accept integers, decimals and `p/q` fractions.
#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Comma-separated b_1,..,b_N.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    b: Vec<String>,
    /// Comma-separated x_1,..,x_N.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    x: Vec<String>,
}

impl ParamArgs {
    fn exact(&self) -> CliResult<FdParamsQ> {
        let one = |name: &str, v: &Option<String>| -> CliResult<ExactRational> {
            let v = v.as_deref().ok_or_else(|| usage(format!("--{name} is required")))?;
            Ok(parse_rational(v)?)
        };
        let list = |v: &[String]| -> CliResult<Vec<ExactRational>> {
            v.iter().filter(|s| !s.trim().is_empty()).map(|s| Ok(parse_rational(s)?)).collect()
        };
        let (b, x) = (list(&self.b)?, list(&self.x)?);
        if b.len() != x.len() {
            return Err(usage(format!("--b has {} entries but --x has {}", b.len(), x.len())));
        }
        Ok(FdParams::new(one("a", &self.a)?, one("c", &self.c)?, b, x)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Series,
    Integral,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => Method::Series,
            MethodArg::Integral => Method::Integral,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EvaluatorArg {
    Series,
    Integral,
    Both,
    Auto,
}

impl From<EvaluatorArg> for Evaluator {
    fn from(e: EvaluatorArg) -> Self {
        match e {
            EvaluatorArg::Series => Evaluator::Series,
            EvaluatorArg::Integral => Evaluator::Integral,
            EvaluatorArg::Both => Evaluator::Both,
            EvaluatorArg::Auto => Evaluator::Auto,
        }
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value = "series")]
    method: MethodArg,
    /// Series: negligible layer size. Integral: target relative error.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct RelationSpec {
    /// A, B, C, D, CONTIG1, CONTIG2, CONTIG3 or DIFF.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// One-based variable index.
    #[arg(long)]
    i: Option<usize>,
    /// Allow family B with n >= 0 (reported, not asserted).
    #[arg(long)]
    extended: bool,
}

#[derive(Debug, Args)]
struct RelationArgs {
    #[command(flatten)]
    spec: RelationSpec,
    #[command(flatten)]
    params: ParamArgs,
    /// Emit exact rational coefficients and parameters.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    Pfaff1,
    Pfaff2,
    Contig1,
    Contig2,
    Contig3,
    Diff,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Relation document produced by `relation`.
    #[arg(long, conflicts_with_all = ["identity", "family"])]
    relation_file: Option<PathBuf>,
    #[arg(long, value_enum, conflicts_with = "family")]
    identity: Option<IdentityArg>,
    #[command(flatten)]
    spec: RelationSpec,
    #[command(flatten)]
    params: ParamArgs,
    /// `auto` uses the series inside radius 0.9 and quadrature elsewhere.
    #[arg(long, value_enum, default_value = "auto")]
    evaluator: EvaluatorArg,
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// JSON sweep configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated family names.
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    families: Vec<Family>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    evaluator: Option<EvaluatorArg>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: lauricella::Error| e.to_string())
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn cmd_eval(args: &EvalArgs) -> CliResult<ExitCode> {
    let params = args.params.exact()?.to_f64();
    let mut opts = EvalOptions::default();
    if let Some(tol) = args.tol {
        opts.series.tol = tol;
        opts.quad.target_rel_error = tol;
    }
    let (res, used) = fd_eval(&params, args.method.into(), &opts)?;
    print_json(&json!({
        "value": res.value,
        "abs_error_estimate": res.abs_error_estimate,
        "method": used,
        "effort": res.effort,
    }));
    Ok(ExitCode::SUCCESS)
}

fn build_relation<S: Scalar>(spec: &RelationSpec, params: &FdParams<S>, p: Option<S>) -> CliResult<Relation<S>> {
    let family = spec.family.ok_or_else(|| usage("--family is required"))?;
    let need_n = || spec.n.ok_or_else(|| usage(format!("family {family} needs --n")));
    let need_p = || p.clone().ok_or_else(|| usage(format!("family {family} needs --p")));
    let need_i = || spec.i.ok_or_else(|| usage(format!("family {family} needs --i")));
    let rel = match family {
        Family::A => relation_a(need_n()?, params)?,
        Family::B if spec.extended => relation_b_extended(need_n()?, &need_p()?, params)?,
        Family::B => relation_b(need_n()?, &need_p()?, params)?,
        Family::C => relation_c(need_n()?, params)?,
        Family::D => relation_d(need_n()?, need_i()?, params)?,
        Family::Contig1 => contiguous(Contiguous::First, params)?,
        Family::Contig2 => contiguous(Contiguous::Second(need_i()?), params)?,
        Family::Contig3 => contiguous(Contiguous::Third(need_p()?), params)?,
        Family::Diff => diff_relation(params)?,
        Family::Pfaff1 | Family::Pfaff2 => {
            return Err(usage("Pfaff identities are not linear relations; use `verify --identity`"))
        }
    };
    Ok(rel)
}

fn parse_p(spec: &RelationSpec) -> CliResult<Option<ExactRational>> {
    Ok(spec.p.as_deref().map(parse_rational).transpose()?)
}

fn cmd_relation(args: &RelationArgs) -> CliResult<ExitCode> {
    let params = args.params.exact()?;
    let p = parse_p(&args.spec)?;
    let doc = if args.exact {
        RelationDoc::from_relation(&build_relation(&args.spec, &params, p)?)
    } else {
        let p = p.map(|p| p.as_f64());
        RelationDoc::from_relation(&build_relation(&args.spec, &params.to_f64(), p)?)
    };
    println!("{}", doc.to_json_pretty());
    Ok(ExitCode::SUCCESS)
}

fn methods(e: EvaluatorArg) -> Vec<Method> {
    match e {
        EvaluatorArg::Series => vec![Method::Series],
        EvaluatorArg::Integral => vec![Method::Integral],
        EvaluatorArg::Auto => vec![Method::Auto],
        EvaluatorArg::Both => vec![Method::Series, Method::Integral],
    }
}

fn describe(label: &str, method: Method, rep: &ResidualReport) {
    let rel = rep.relative_residual.map_or("undefined (zero scale)".to_string(), |r| format!("{r:.3e}"));
    eprintln!("{label} [{}]", serde_json::to_value(method).expect("serialisable").as_str().unwrap_or("?"));
    eprintln!("  residual           {:.6e}", rep.residual);
    eprintln!("  scale              {:.6e}", rep.scale);
    eprintln!("  relative residual  {rel}");
    eprintln!("  tolerance          {:.1e}", rep.tol);
    eprintln!("  result             {}", if rep.pass { "PASS" } else { "FAIL" });
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<ExitCode> {
    let opts = EvalOptions::default();
    let mut reports = Vec::new();
    let mut asserted = true;
    for method in methods(args.evaluator) {
        let rep = if let Some(path) = &args.relation_file {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let doc = RelationDoc::from_json(&text)?;
            asserted = !doc.extended;
            residual_of_terms(&doc.concrete_terms()?, method, &opts, args.tol)?
        } else if let Some(identity) = args.identity {
            let params = args.params.exact()?;
            let p = parse_p(&args.spec)?;
            let i = || args.spec.i.ok_or_else(|| usage("this identity needs --i"));
            match identity {
                IdentityArg::Pfaff1 => pfaff_first(&params, method, &opts, args.tol)?,
                IdentityArg::Pfaff2 => pfaff_second(&params, i()?, method, &opts, args.tol)?,
                IdentityArg::Contig1 => residual(&contiguous(Contiguous::First, &params)?, method, &opts, args.tol)?,
                IdentityArg::Contig2 => residual(&contiguous(Contiguous::Second(i()?), &params)?, method, &opts, args.tol)?,
                IdentityArg::Contig3 => {
                    let p = p.ok_or_else(|| usage("contig3 needs --p"))?;
                    residual(&contiguous(Contiguous::Third(p), &params)?, method, &opts, args.tol)?
                }
                IdentityArg::Diff => residual(&diff_relation(&params)?, method, &opts, args.tol)?,
            }
        } else if args.spec.family.is_some() {
            let params = args.params.exact()?;
            let rel = build_relation(&args.spec, &params, parse_p(&args.spec)?)?;
            asserted = !rel.extended;
            residual(&rel, method, &opts, args.tol)?
        } else {
            return Err(usage("give --relation-file, --identity or --family"));
        };
        reports.push((method, rep));
    }
    let label = if asserted { "relation" } else { "relation (extended range, not asserted)" };
    for (method, rep) in &reports {
        describe(label, *method, rep);
    }
    if let [(_, rep)] = reports.as_slice() {
        print_json(rep);
    } else {
        let obj: serde_json::Map<String, serde_json::Value> = reports
            .iter()
            .map(|(m, r)| (serde_json::to_value(m).unwrap().as_str().unwrap().to_string(), serde_json::to_value(r).unwrap()))
            .collect();
        print_json(&obj);
    }
    let pass = reports.iter().all(|(_, r)| r.pass);
    Ok(if pass || !asserted { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<ExitCode> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            serde_json::from_str(&text).map_err(|e| lauricella::Error::Parse(e.to_string()))?
        }
        None => SweepConfig::default(),
    };
    if !args.families.is_empty() {
        cfg.families = args.families.clone();
    }
    cfg.n_min = args.n_min.unwrap_or(cfg.n_min);
    cfg.n_max = args.n_max.unwrap_or(cfg.n_max);
    cfg.trials = args.trials.unwrap_or(cfg.trials);
    cfg.seed = args.seed.unwrap_or(cfg.seed);
    cfg.tol = args.tol.unwrap_or(cfg.tol);
    if let Some(e) = args.evaluator {
        cfg.evaluator = e.into();
    }
    let report = run_sweep(&cfg)?;
    for f in &report.per_family {
        let worst = f.worst_rel_residual.map_or("n/a".to_string(), |w| format!("{w:.3e}"));
        eprintln!("{:<8} {:>4}/{:<4} worst relative residual {worst}", f.family, f.passes, f.trials);
    }
    let text = serde_json::to_string_pretty(&report).expect("serialisable");
    match &args.out {
        Some(path) => {
            fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.clone(), source })?;
            eprintln!("report written to {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LAURICELLA_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Relation(a) => cmd_relation(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            log::debug!("{e:?}");
            let err = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
