//! Command-line front end: compute polynomials by any construction route,
//! export zeros, moment tables, and recurrence-coefficient tables, and run
//! the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parameter/config error,
//! 3 numerical failure.

use angelesco::analysis::{find_roots, full_verify, Tolerances};
use angelesco::constructors::{explicit_series, raising_cascade, rodrigues_polynomial};
use angelesco::error::Error;
use angelesco::measures::{compute_moment_table, moment_table_for};
use angelesco::multi_index::MultiIndex;
use angelesco::oracle::solve_monic;
use angelesco::params::{Family, ModelParams};
use angelesco::poly::PolyW;
use angelesco::precision::PrecisionContext;
use angelesco::recurrence::{default_provider, generate, recurrence_table, recurrence_table_csv};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "angelesco",
    about = "Discrete Angelesco multiple orthogonal polynomials on an r-star",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the monic polynomial at a multi-index by a chosen route.
    Compute(ComputeArgs),
    /// Run the cross-validation suite and emit a verification report.
    Verify(VerifyArgs),
    /// Compute a polynomial and export its w-roots and star fan-out as CSV.
    Zeros(ZerosArgs),
    /// Export a certified mixed-moment table as JSON.
    Moments(MomentsArgs),
    /// Export nearest-neighbor recurrence coefficients as CSV.
    Table(TableArgs),
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Weight family: charlier, meixner1, or meixner2.
    #[arg(long)]
    family: Option<String>,
    /// Star order (defaults to the per-ray parameter list length).
    #[arg(long)]
    r: Option<usize>,
    /// `c` parameter(s): single value for meixner2, comma list for meixner1.
    /// Complex values are written like `0.3+0.2i`.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// `beta` parameter(s): comma list for meixner2, single value for
    /// meixner1.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Charlier `a` parameters (comma list).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Significant decimal digits for all arithmetic.
    #[arg(long, env = "ANGELESCO_DIGITS")]
    digits: Option<u32>,
    /// JSON file with the same fields as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Series,
    Cascade,
    Rodrigues,
    Recurrence,
    Oracle,
}

impl Method {
    fn name(&self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Cascade => "cascade",
            Method::Rodrigues => "rodrigues",
            Method::Recurrence => "recurrence",
            Method::Oracle => "oracle",
        }
    }

    fn parse_name(s: &str) -> Option<Method> {
        match s {
            "series" => Some(Method::Series),
            "cascade" => Some(Method::Cascade),
            "rodrigues" => Some(Method::Rodrigues),
            "recurrence" => Some(Method::Recurrence),
            "oracle" => Some(Method::Oracle),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Multi-index, e.g. `1,1` (one entry per ray).
    #[arg(long)]
    n: Option<String>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Verify every multi-index with |n| <= nmax.
    #[arg(long)]
    nmax: Option<u32>,
    /// Override every equality tolerance with one value (e.g. 1e-20).
    #[arg(long, allow_hyphen_values = true)]
    tolerance: Option<String>,
    /// Seed for the randomized property samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: Option<String>,
    #[arg(long, value_enum, default_value = "recurrence")]
    method: Method,
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    jmax: Option<usize>,
    #[arg(long)]
    mmax: Option<usize>,
    /// Absolute tail tolerance (default 10^-(digits-10)).
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    nmax: Option<u32>,
}

/// Mirror of the flag surface for `--config` files.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    family: Option<String>,
    r: Option<usize>,
    c: Option<String>,
    beta: Option<String>,
    a: Option<String>,
    digits: Option<u32>,
    n: Option<Vec<u32>>,
    method: Option<String>,
    nmax: Option<u32>,
    jmax: Option<usize>,
    mmax: Option<usize>,
    tol: Option<String>,
    tolerance: Option<String>,
    seed: Option<u64>,
    output: Option<PathBuf>,
    format: Option<String>,
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig, Error> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

struct Resolved {
    params: ModelParams,
    output: Option<PathBuf>,
    config: RunConfig,
}

fn resolve_params(args: &ParamArgs) -> Result<Resolved, Error> {
    let config = load_config(&args.config)?;
    let digits = args
        .digits
        .or(config.digits)
        .unwrap_or(PrecisionContext::DEFAULT_DIGITS);
    let ctx = PrecisionContext::new(digits)?;

    let family_str = args
        .family
        .clone()
        .or_else(|| config.family.clone())
        .ok_or_else(|| Error::ParamDomain("missing --family".into()))?;
    let family = Family::parse(&family_str)?;

    let parse_list = |s: &str| -> Result<Vec<rug::Complex>, Error> {
        s.split(',').map(|part| ctx.parse_complex(part)).collect()
    };

    let c_str = args.c.clone().or_else(|| config.c.clone());
    let beta_str = args.beta.clone().or_else(|| config.beta.clone());
    let a_str = args.a.clone().or_else(|| config.a.clone());

    let params = match family {
        Family::Charlier => {
            let a = parse_list(
                a_str
                    .as_deref()
                    .ok_or_else(|| Error::ParamDomain("charlier requires --a".into()))?,
            )?;
            ModelParams::charlier(a, ctx.clone())?
        }
        Family::MeixnerFirst => {
            let c = parse_list(
                c_str
                    .as_deref()
                    .ok_or_else(|| Error::ParamDomain("meixner1 requires --c".into()))?,
            )?;
            let mut beta_list = parse_list(
                beta_str
                    .as_deref()
                    .ok_or_else(|| Error::ParamDomain("meixner1 requires --beta".into()))?,
            )?;
            if beta_list.len() != 1 {
                return Err(Error::ParamDomain(
                    "meixner1 takes a single shared beta".into(),
                ));
            }
            ModelParams::meixner_first(c, beta_list.remove(0), ctx.clone())?
        }
        Family::MeixnerSecond => {
            let beta = parse_list(
                beta_str
                    .as_deref()
                    .ok_or_else(|| Error::ParamDomain("meixner2 requires --beta".into()))?,
            )?;
            let mut c_list = parse_list(
                c_str
                    .as_deref()
                    .ok_or_else(|| Error::ParamDomain("meixner2 requires --c".into()))?,
            )?;
            if c_list.len() != 1 {
                return Err(Error::ParamDomain(
                    "meixner2 takes a single shared c".into(),
                ));
            }
            ModelParams::meixner_second(beta, c_list.remove(0), ctx.clone())?
        }
    };
    if let Some(r) = args.r.or(config.r) {
        if r != params.r() {
            return Err(Error::ParamDomain(format!(
                "--r {} does not match the {}-entry parameter list",
                r,
                params.r()
            )));
        }
    }
    let output = args.output.clone().or_else(|| config.output.clone());
    Ok(Resolved {
        params,
        output,
        config,
    })
}

fn parse_index(
    params: &ModelParams,
    n: &Option<String>,
    config: &RunConfig,
) -> Result<MultiIndex, Error> {
    let comps: Vec<u32> = match (n, &config.n) {
        (Some(s), _) => s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad multi-index entry {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(v)) => v.clone(),
        (None, None) => return Err(Error::ParamDomain("missing --n".into())),
    };
    if comps.len() != params.r() {
        return Err(Error::ParamDomain(format!(
            "multi-index has {} entries but the model has {} rays",
            comps.len(),
            params.r()
        )));
    }
    Ok(MultiIndex::new(comps))
}

fn compute_poly(
    params: &ModelParams,
    n: &MultiIndex,
    method: Method,
) -> Result<(PolyW, Option<serde_json::Value>), Error> {
    let ctx = params.ctx();
    match method {
        Method::Series => Ok((explicit_series(params, n)?, None)),
        Method::Cascade => Ok((raising_cascade(params, n, None)?, None)),
        Method::Rodrigues => Ok((rodrigues_polynomial(params, n)?, None)),
        Method::Recurrence => {
            let moments = moment_table_for(params, n.total())?;
            let provider = default_provider(params, &moments);
            Ok((generate(params, n, None, provider.as_ref())?, None))
        }
        Method::Oracle => {
            let moments = moment_table_for(params, n.total())?;
            let (p, cert) = solve_monic(params, n, &moments)?;
            Ok((p, Some(cert.to_json(ctx))))
        }
    }
}

fn write_out(output: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_compute(args: &ComputeArgs) -> Result<i32, Error> {
    let resolved = resolve_params(&args.params)?;
    let params = &resolved.params;
    let ctx = params.ctx();
    let n = parse_index(params, &args.n, &resolved.config)?;
    let method = args
        .method
        .or_else(|| resolved.config.method.as_deref().and_then(Method::parse_name))
        .unwrap_or(Method::Recurrence);
    let format = match (args.format, resolved.config.format.as_deref()) {
        (Format::Json, Some("csv")) => Format::Csv,
        (f, _) => f,
    };
    let (poly, certificate) = compute_poly(params, &n, method)?;
    let content = match format {
        Format::Json => {
            let coeffs: Vec<serde_json::Value> = poly
                .coeffs()
                .iter()
                .map(|c| {
                    let (re, im) = ctx.format_complex(c);
                    serde_json::json!({ "re": re, "im": im })
                })
                .collect();
            let mut doc = serde_json::json!({
                "family": params.family().name(),
                "r": params.r(),
                "digits": ctx.digits(),
                "params": params.params_json(),
                "n": n.components(),
                "method": method.name(),
                "degree": poly.degree().map(|d| d as i64).unwrap_or(-1),
                "coeffs": coeffs,
            });
            if let Some(cert) = certificate {
                doc["certificate"] = cert;
            }
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut out = String::from("m,re,im\n");
            for (m, c) in poly.coeffs().iter().enumerate() {
                let (re, im) = ctx.format_complex(c);
                out.push_str(&format!("{m},{re},{im}\n"));
            }
            out
        }
    };
    write_out(&resolved.output, &content)?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Error> {
    let resolved = resolve_params(&args.params)?;
    let params = &resolved.params;
    let ctx = params.ctx();
    let nmax = args.nmax.or(resolved.config.nmax).unwrap_or(3);
    let seed = if args.seed != 0 {
        args.seed
    } else {
        resolved.config.seed.unwrap_or(0)
    };
    let tol = match args
        .tolerance
        .clone()
        .or_else(|| resolved.config.tolerance.clone())
    {
        Some(t) => Tolerances::uniform(ctx.parse_float(&t)?),
        None => Tolerances::for_context(ctx),
    };
    let report = full_verify(params, nmax, &tol, seed)?;
    for line in report.summary_lines(ctx) {
        println!("{line}");
    }
    let doc = serde_json::json!({
        "family": params.family().name(),
        "r": params.r(),
        "digits": ctx.digits(),
        "n_max": nmax,
        "seed": seed,
        "report": report.to_json(ctx),
    });
    if resolved.output.is_some() {
        write_out(
            &resolved.output,
            &format!("{}\n", serde_json::to_string_pretty(&doc)?),
        )?;
    }
    if report.all_passed() {
        Ok(0)
    } else {
        eprintln!("failed checks: {}", report.failed_names().join(", "));
        Ok(1)
    }
}

fn cmd_zeros(args: &ZerosArgs) -> Result<i32, Error> {
    let resolved = resolve_params(&args.params)?;
    let params = &resolved.params;
    let n = parse_index(params, &args.n, &resolved.config)?;
    let (poly, _) = compute_poly(params, &n, args.method)?;
    let zeros = find_roots(&poly, params.r(), params.ctx())?;
    write_out(&resolved.output, &zeros.to_csv(params.ctx()))?;
    Ok(0)
}

fn cmd_moments(args: &MomentsArgs) -> Result<i32, Error> {
    let resolved = resolve_params(&args.params)?;
    let params = &resolved.params;
    let ctx = params.ctx();
    let jmax = args.jmax.or(resolved.config.jmax).unwrap_or(3);
    let mmax = args.mmax.or(resolved.config.mmax).unwrap_or(6);
    let tol = match args.tol.clone().or_else(|| resolved.config.tol.clone()) {
        Some(t) => ctx.parse_float(&t)?,
        None => ctx.pow10(-(ctx.digits() as i32) + 10),
    };
    let table = compute_moment_table(params, jmax, mmax, &tol)?;
    let content = format!(
        "{}\n",
        serde_json::to_string_pretty(&table.to_json(params))?
    );
    write_out(&resolved.output, &content)?;
    Ok(0)
}

fn cmd_table(args: &TableArgs) -> Result<i32, Error> {
    let resolved = resolve_params(&args.params)?;
    let params = &resolved.params;
    let nmax = args.nmax.or(resolved.config.nmax).unwrap_or(3);
    let moments = moment_table_for(params, nmax + 1)?;
    let provider = default_provider(params, &moments);
    let rows = recurrence_table(params, nmax, provider.as_ref())?;
    let csv = recurrence_table_csv(&rows, params.r(), params.ctx());
    write_out(&resolved.output, &csv)?;
    Ok(0)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::ParamDomain(_)
        | Error::Parse(_)
        | Error::Precision(_)
        | Error::DuplicateNode(_)
        | Error::MomentRange(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
        Error::Pole(_)
        | Error::Convergence(_)
        | Error::NotNormal(_)
        | Error::DivisionByNearZero(_)
        | Error::MissingNeighbor(_)
        | Error::Monicity(_)
        | Error::NoConvergence(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Compute(args) => cmd_compute(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Zeros(args) => cmd_zeros(args),
        Cmd::Moments(args) => cmd_moments(args),
        Cmd::Table(args) => cmd_table(args),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err) as u8)
        }
    }
}
