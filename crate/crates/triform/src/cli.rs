//! Command-line front end: argument parsing, JSON rendering, and exit codes
//! around the library's evaluation and verification entry points.
//!
//! Output goes to stdout as a single JSON document (or `--output text` for
//! human-readable lines); diagnostics go to stderr. Every result echoes its
//! fully resolved configuration, and identical argv plus seed produce
//! byte-identical JSON. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parse error, 3 domain error (pole, divergence, dimension).

use crate::exact::{snap_f64, QComplex};
use crate::params::{classify_pole, in_zero_set, in_zk, is_irreducible, ParamError, ParamPoint};
use crate::quadrature::{mc_invariance, mc_kernel, QuadratureError};
use crate::trilinear::{
    eval_normalized, find_witness, is_exact_zero, unnormalized_br, MultiIndex, TrilinearError,
};
use crate::bidiff;
use crate::verify::{run_suite, Suite};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;

/// Snapping tolerance applied to every `--float` parameter.
pub const FLOAT_SNAP_TOL: f64 = 1e-9;

/// Environment variable consulted when no `--seed` is given.
pub const SEED_ENV: &str = "TRIFORM_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "triform",
    version,
    about = "Conformally invariant trilinear forms on spheres: classification, evaluation, verification",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit human-readable lines instead of JSON.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Json)]
    output: OutputMode,

    /// Parse numeric parameters as floats and snap them to exact rationals
    /// (tolerance 1e-9); the snapped values are recorded in the output.
    #[arg(long, global = true)]
    float: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a parameter point: pole planes, zero-set membership.
    Classify(ClassifyArgs),
    /// Evaluate the normalized form on one invariant basis function.
    Eval(EvalArgs),
    /// Closed form of the unnormalized kernel integral.
    Brint(BrintArgs),
    /// Search for a basis function on which the form does not vanish.
    Witness(WitnessArgs),
    /// Monte Carlo estimation: kernel integral or paired invariance test.
    Mc(McArgs),
    /// Covariant bi-differential system and its exact nullspace.
    Bidiff(BidiffArgs),
    /// Run a named verification suite and report pass/fail per property.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    n: u32,
    /// Geometric exponents, comma-separated (e.g. "-3,-3,5").
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda")]
    alpha: Option<String>,
    /// Spectral parameters, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Basis multi-index, comma-separated naturals (e.g. "1,0,2").
    #[arg(long)]
    a: String,
}

#[derive(Debug, Args)]
struct BrintArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value_t = 12)]
    max_order: u32,
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "0,0,0")]
    a: String,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Run the paired invariance test at this flow time instead of the
    /// plain kernel estimate.
    #[arg(long, allow_hyphen_values = true)]
    invariance_t: Option<f64>,
}

#[derive(Debug, Args)]
struct BidiffArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, allow_hyphen_values = true)]
    lambda1: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda2: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// One of: specfun, geometry, zeroset, invariance, bidiff, all.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug)]
struct CliError {
    kind: &'static str,
    detail: String,
    code: i32,
}

impl CliError {
    fn usage(detail: String) -> Self {
        CliError { kind: "usage", detail, code: 2 }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError { kind: "dimension", detail: e.to_string(), code: 3 }
    }
}

impl From<TrilinearError> for CliError {
    fn from(e: TrilinearError) -> Self {
        CliError { kind: "pole", detail: e.to_string(), code: 3 }
    }
}

impl From<QuadratureError> for CliError {
    fn from(e: QuadratureError) -> Self {
        let kind = match e {
            QuadratureError::DivergentRegion(_) => "divergence",
            QuadratureError::NotReal => "not-real",
        };
        CliError { kind, detail: e.to_string(), code: 3 }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code, printing output to stdout and diagnostics to stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let brief = e.to_string();
            eprintln!("{brief}");
            println!(
                "{}",
                serde_json::to_string(&json!({"error": {"kind": "usage", "detail": brief}}))
                    .expect("serializable")
            );
            return 2;
        }
    };
    let output = cli.output;
    match dispatch(&cli) {
        Ok((value, code)) => {
            emit(&value, output);
            code
        }
        Err(err) => {
            eprintln!("error: {}", err.detail);
            let value = json!({"error": {"kind": err.kind, "detail": err.detail}});
            emit(&value, output);
            err.code
        }
    }
}

fn emit(value: &Value, output: OutputMode) {
    match output {
        OutputMode::Json => {
            println!("{}", serde_json::to_string(value).expect("serializable"));
        }
        OutputMode::Text => {
            let mut lines = Vec::new();
            flatten("", value, &mut lines);
            for line in lines {
                println!("{line}");
            }
        }
    }
}

fn flatten(path: &str, value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let sub = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&sub, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), v, out);
            }
        }
        other => out.push(format!("{path} = {other}")),
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, i32), CliError> {
    match &cli.command {
        Command::Classify(args) => classify_cmd(args, cli.float),
        Command::Eval(args) => eval_cmd(args, cli.float),
        Command::Brint(args) => brint_cmd(args, cli.float),
        Command::Witness(args) => witness_cmd(args, cli.float),
        Command::Mc(args) => mc_cmd(args, cli.float),
        Command::Bidiff(args) => bidiff_cmd(args, cli.float),
        Command::Verify(args) => verify_cmd(args),
    }
}

fn parse_value(s: &str, float_mode: bool) -> Result<QComplex, CliError> {
    let s = s.trim();
    if float_mode {
        let x: f64 = s
            .parse()
            .map_err(|_| CliError::usage(format!("not a float: {s:?}")))?;
        let snapped = snap_f64(x, FLOAT_SNAP_TOL)
            .ok_or_else(|| CliError::usage(format!("no exact rational within 1e-9 of {x}")))?;
        Ok(QComplex::from_rational(snapped))
    } else {
        s.parse::<QComplex>()
            .map_err(|e| CliError::usage(format!("bad exact value {s:?}: {e}")))
    }
}

fn parse_triple(s: &str, float_mode: bool) -> Result<[QComplex; 3], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "expected three comma-separated values, got {} in {s:?}",
            parts.len()
        )));
    }
    Ok([
        parse_value(parts[0], float_mode)?,
        parse_value(parts[1], float_mode)?,
        parse_value(parts[2], float_mode)?,
    ])
}

fn parse_index(s: &str) -> Result<MultiIndex, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "expected three comma-separated naturals, got {} in {s:?}",
            parts.len()
        )));
    }
    let mut a = [0u32; 3];
    for (slot, part) in a.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("not a natural number: {part:?}")))?;
    }
    Ok(MultiIndex::new(a[0], a[1], a[2]))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(raw) => raw
            .parse()
            .map_err(|_| CliError::usage(format!("{SEED_ENV} is not a 64-bit seed: {raw:?}"))),
        Err(_) => Ok(0),
    }
}

fn point_from_alpha(n: u32, alpha: [QComplex; 3]) -> Result<ParamPoint, CliError> {
    Ok(ParamPoint::from_alpha(n, alpha)?)
}

fn triple_strings(q: &[QComplex; 3]) -> Vec<String> {
    q.iter().map(|x| x.to_string()).collect()
}

fn complex_json(z: crate::specfun::ComplexF) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn point_config(p: &ParamPoint, float_mode: bool) -> Value {
    json!({
        "n": p.n(),
        "alpha": triple_strings(p.alpha()),
        "lambda": triple_strings(p.lambda()),
        "float": float_mode,
    })
}

fn classify_cmd(args: &ClassifyArgs, float_mode: bool) -> Result<(Value, i32), CliError> {
    let p = match (&args.alpha, &args.lambda) {
        (Some(a), None) => point_from_alpha(args.n, parse_triple(a, float_mode)?)?,
        (None, Some(l)) => ParamPoint::from_lambda(args.n, parse_triple(l, float_mode)?)?,
        _ => {
            return Err(CliError::usage(
                "exactly one of --alpha or --lambda is required".to_string(),
            ))
        }
    };
    let pole = classify_pole(&p);
    let in_z = in_zero_set(&p);
    let irreducible: Result<Vec<bool>, ParamError> =
        p.lambda().iter().map(|l| is_irreducible(p.n(), l)).collect();
    let value = json!({
        "command": "classify",
        "config": point_config(&p, float_mode),
        "result": {
            "pole": {
                "is_pole": pole.is_pole(),
                "plane_count": pole.plane_count(),
                "generic": pole.is_generic(),
                "first_kind": pole.first_kind.iter()
                    .map(|(j, k)| json!({"coordinate": j, "index": k}))
                    .collect::<Vec<_>>(),
                "second_kind": pole.second_kind,
            },
            "in_zero_set": in_z,
            "irreducible": irreducible?,
        }
    });
    Ok((value, 0))
}

fn eval_cmd(args: &EvalArgs, float_mode: bool) -> Result<(Value, i32), CliError> {
    let p = point_from_alpha(args.n, parse_triple(&args.alpha, float_mode)?)?;
    let a = parse_index(&args.a)?;
    let exact_zero = is_exact_zero(&p, &a);
    let v = eval_normalized(&p, &a);
    let value = json!({
        "command": "eval",
        "config": {
            "n": p.n(),
            "alpha": triple_strings(p.alpha()),
            "lambda": triple_strings(p.lambda()),
            "a": a.as_array(),
            "float": float_mode,
        },
        "result": {
            "value": complex_json(v),
            "exact_zero": exact_zero,
            "in_zero_set": in_zero_set(&p),
        }
    });
    Ok((value, 0))
}

fn brint_cmd(args: &BrintArgs, float_mode: bool) -> Result<(Value, i32), CliError> {
    let p = point_from_alpha(args.n, parse_triple(&args.alpha, float_mode)?)?;
    let v = unnormalized_br(&p)?;
    let value = json!({
        "command": "brint",
        "config": point_config(&p, float_mode),
        "result": {"value": complex_json(v)}
    });
    Ok((value, 0))
}

fn witness_cmd(args: &WitnessArgs, float_mode: bool) -> Result<(Value, i32), CliError> {
    let p = point_from_alpha(args.n, parse_triple(&args.alpha, float_mode)?)?;
    let found = find_witness(&p, args.max_order);
    let result = match found {
        Some(w) => json!({
            "found": true,
            "index": w.index.as_array(),
            "order": w.index.order(),
            "value": complex_json(w.value),
        }),
        None => json!({"found": false, "in_zero_set": in_zero_set(&p)}),
    };
    let value = json!({
        "command": "witness",
        "config": {
            "n": p.n(),
            "alpha": triple_strings(p.alpha()),
            "lambda": triple_strings(p.lambda()),
            "max_order": args.max_order,
            "float": float_mode,
        },
        "result": result
    });
    Ok((value, 0))
}

fn mc_cmd(args: &McArgs, float_mode: bool) -> Result<(Value, i32), CliError> {
    let p = point_from_alpha(args.n, parse_triple(&args.alpha, float_mode)?)?;
    let a = parse_index(&args.a)?;
    let seed = resolve_seed(args.seed)?;
    let config = json!({
        "n": p.n(),
        "alpha": triple_strings(p.alpha()),
        "lambda": triple_strings(p.lambda()),
        "a": a.as_array(),
        "samples": args.samples,
        "seed": seed,
        "invariance_t": args.invariance_t,
        "float": float_mode,
    });
    let result = match args.invariance_t {
        None => {
            let est = mc_kernel(&p, &a, args.samples, seed)?;
            json!({
                "estimate": est.estimate,
                "std_error": est.std_error,
                "samples": est.samples,
            })
        }
        Some(t) => {
            let inv = mc_invariance(&p, &a, t, args.samples, seed)?;
            json!({
                "lhs": {"estimate": inv.lhs.estimate, "std_error": inv.lhs.std_error},
                "rhs": {"estimate": inv.rhs.estimate, "std_error": inv.rhs.std_error},
                "zscore": inv.zscore,
                "samples": inv.lhs.samples,
            })
        }
    };
    Ok((json!({"command": "mc", "config": config, "result": result}), 0))
}

fn bidiff_cmd(args: &BidiffArgs, float_mode: bool) -> Result<(Value, i32), CliError> {
    let l1 = parse_value(&args.lambda1, float_mode)?;
    let l2 = parse_value(&args.lambda2, float_mode)?;
    let sys = bidiff::build_system(args.n, args.k, &l1, &l2)?;
    let ns = bidiff::nullspace(&sys);
    let verdict = in_zk(args.n, args.k, &l1, &l2)?;
    let value = json!({
        "command": "bidiff",
        "config": {
            "n": args.n,
            "k": args.k,
            "lambda1": l1.to_string(),
            "lambda2": l2.to_string(),
            "float": float_mode,
        },
        "result": {
            "unknowns": sys.unknowns(),
            "equations": sys.rows().len(),
            "nullity": ns.nullity,
            "basis": ns.basis.iter()
                .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "in_plane_zero_set": verdict.in_zk,
            "conditions": verdict.satisfied.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }
    });
    Ok((value, 0))
}

fn verify_cmd(args: &VerifyArgs) -> Result<(Value, i32), CliError> {
    let suite: Suite = args.suite.parse().map_err(CliError::usage)?;
    let seed = resolve_seed(args.seed)?;
    let report = run_suite(suite, seed);
    let code = if report.passed { 0 } else { 1 };
    let value = json!({
        "command": "verify",
        "config": {"suite": report.suite, "seed": report.seed},
        "report": serde_json::to_value(&report).expect("serializable"),
    });
    Ok((value, code))
}
