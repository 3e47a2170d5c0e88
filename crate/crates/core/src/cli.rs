//! Command-line front end for the `octo` binary.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain or convergence failure, 4 a
//! verification sweep exceeded its tolerance.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::elementary::{oct_exp, oct_ln, oct_powf, oct_powi};
use crate::error::Error;
use crate::literal::{parse_octonion, parse_tuple};
use crate::octonion::Octonion;
use crate::quadrature::QuadratureConfig;
use crate::transforms::{
    bilateral_laplace, laplace, oct_gamma_detailed, oct_zeta_detailed, OriginalSpec,
    TransformResult, ZetaMethod,
};
use crate::verify::{
    field_from_octonion_fn_dim, verify_grid, Family, FdConfig, FdScheme, PointSampler,
    ResidualReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

pub const SEED_ENV: &str = "OCTO_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

/// Octonionic functions selectable with `--fn`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OctFn {
    Identity,
    Exp,
    Ln,
    Inverse,
    Pow(i32),
    PowF(f64),
    /// `e1 * x0`, which solves none of the systems.
    Control,
}

impl OctFn {
    pub fn apply(self, x: Octonion) -> crate::Result<Octonion> {
        match self {
            OctFn::Identity => Ok(x),
            OctFn::Exp => oct_exp(x),
            OctFn::Ln => oct_ln(x),
            OctFn::Inverse => x.inverse(),
            OctFn::Pow(n) => oct_powi(x, n),
            OctFn::PowF(a) => oct_powf(x, a),
            OctFn::Control => Ok(Octonion::basis(1).scale(x.re())),
        }
    }

    pub fn name(self) -> String {
        match self {
            OctFn::Identity => "id".into(),
            OctFn::Exp => "exp".into(),
            OctFn::Ln => "ln".into(),
            OctFn::Inverse => "inv".into(),
            OctFn::Pow(n) => format!("pow:{n}"),
            OctFn::PowF(a) => format!("powf:{a}"),
            OctFn::Control => "control".into(),
        }
    }
}

impl FromStr for OctFn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad =
            || format!("unknown function '{s}' (id, exp, ln, inv, pow:<n>, powf:<a>, control)");
        match s.split_once(':') {
            None => match s {
                "id" => Ok(OctFn::Identity),
                "exp" => Ok(OctFn::Exp),
                "ln" => Ok(OctFn::Ln),
                "inv" => Ok(OctFn::Inverse),
                "control" => Ok(OctFn::Control),
                _ => Err(bad()),
            },
            Some(("pow", n)) => n.parse().map(OctFn::Pow).map_err(|_| bad()),
            Some(("powf", a)) => a
                .parse::<f64>()
                .ok()
                .filter(|a| a.is_finite())
                .map(OctFn::PowF)
                .ok_or_else(bad),
            Some(_) => Err(bad()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "octo",
    version,
    about = "Octonionic functions, transforms and Cauchy-Riemann residual checks"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: OutputFormat,
    #[arg(long, default_value_t = 1e-10, global = true)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1e-10, global = true)]
    rel_tol: f64,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Octonion literal, e.g. "1+0.5e1-2e7".
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Positional form "a0,a1,...,a7".
    #[arg(long, allow_hyphen_values = true)]
    x_tuple: Option<String>,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Print the 8x8 basis multiplication table.
    Table,
    /// Evaluate an elementary function.
    Eval {
        #[arg(long = "fn")]
        func: String,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Octonionic Laplace transform of a registered original.
    Laplace {
        #[arg(long)]
        original: String,
        #[arg(long)]
        bilateral: bool,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Octonionic gamma function.
    Gamma {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Octonionic zeta function.
    Zeta {
        #[arg(long, default_value = "series")]
        method: String,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Residual sweep of a function against the chosen equation families.
    Verify {
        #[arg(long = "fn")]
        func: String,
        /// Comma-separated: A, H, sym, div-axial, div-asym.
        #[arg(long, default_value = "A")]
        system: String,
        #[arg(long, default_value_t = 7)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-5)]
        fd_step: f64,
        #[arg(long, default_value = "central")]
        scheme: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Table,
    Eval {
        func: OctFn,
        x: Octonion,
    },
    Laplace {
        original: String,
        x: Octonion,
        bilateral: bool,
    },
    Gamma {
        x: Octonion,
    },
    Zeta {
        x: Octonion,
        method: ZetaMethod,
    },
    Verify {
        func: OctFn,
        systems: Vec<Family>,
        dim: usize,
        points: usize,
        seed: u64,
        fd: FdConfig,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Eval { .. } => "eval",
            Command::Laplace { .. } => "laplace",
            Command::Gamma { .. } => "gamma",
            Command::Zeta { .. } => "zeta",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Validated command line.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub quadrature: QuadratureConfig,
}

/// Usage error carrying the message clap (or validation) produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    /// `--help` and `--version` land here with exit code 0.
    pub exit_code: i32,
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> UsageError {
    UsageError {
        message: format!("error: invalid value for '{flag}': {msg}"),
        exit_code: EXIT_USAGE,
    }
}

fn point(args: &PointArgs) -> Result<Octonion, UsageError> {
    match (&args.x, &args.x_tuple) {
        (Some(lit), None) => parse_octonion(lit).map_err(|e| usage("--x", e)),
        (None, Some(t)) => parse_tuple(t).map_err(|e| usage("--x-tuple", e)),
        (Some(_), Some(_)) => Err(usage("--x", "give either --x or --x-tuple, not both")),
        (None, None) => Err(usage("--x", "an octonion argument is required")),
    }
}

/// Parses `argv` (including the program name); `OCTO_SEED` supplies a default seed.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    parse_args_with_seed(argv, std::env::var(SEED_ENV).ok())
}

pub fn parse_args_with_seed<I, T>(
    argv: I,
    env_seed: Option<String>,
) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| UsageError {
        message: e.to_string(),
        exit_code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
    })?;
    if !(cli.abs_tol > 0.0) {
        return Err(usage("--abs-tol", "must be positive"));
    }
    if !(cli.rel_tol > 0.0) {
        return Err(usage("--rel-tol", "must be positive"));
    }
    let quadrature = QuadratureConfig {
        abs_tol: cli.abs_tol,
        rel_tol: cli.rel_tol,
        ..QuadratureConfig::default()
    };
    let command = match cli.command {
        CliCommand::Table => Command::Table,
        CliCommand::Eval { func, point: p } => Command::Eval {
            func: func.parse().map_err(|e| usage("--fn", e))?,
            x: point(&p)?,
        },
        CliCommand::Laplace {
            original,
            bilateral,
            point: p,
        } => {
            OriginalSpec::by_name(&original).map_err(|e| usage("--original", e))?;
            Command::Laplace {
                original,
                x: point(&p)?,
                bilateral,
            }
        }
        CliCommand::Gamma { point: p } => Command::Gamma { x: point(&p)? },
        CliCommand::Zeta { method, point: p } => Command::Zeta {
            x: point(&p)?,
            method: method.parse().map_err(|e| usage("--method", e))?,
        },
        CliCommand::Verify {
            func,
            system,
            dim,
            points,
            seed,
            fd_step,
            scheme,
        } => {
            let func: OctFn = func.parse().map_err(|e| usage("--fn", e))?;
            let systems = system
                .split(',')
                .map(|s| s.trim().parse::<Family>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| usage("--system", e))?;
            if systems.is_empty() {
                return Err(usage("--system", "no equation family given"));
            }
            if !(1..=7).contains(&dim) {
                return Err(usage("--dim", "octonion fields need 1 <= dim <= 7"));
            }
            if points == 0 {
                return Err(usage("--points", "must be at least 1"));
            }
            if !(fd_step > 0.0 && fd_step.is_finite()) {
                return Err(usage("--fd-step", "must be positive"));
            }
            let scheme = match scheme.as_str() {
                "central" => FdScheme::Central,
                "richardson" => FdScheme::Richardson,
                other => return Err(usage("--scheme", format!("unknown scheme '{other}'"))),
            };
            let seed = match (seed, env_seed) {
                (Some(s), _) => s,
                (None, Some(env)) => env
                    .trim()
                    .parse()
                    .map_err(|_| usage(SEED_ENV, format!("'{env}' is not an unsigned integer")))?,
                (None, None) => 0,
            };
            Command::Verify {
                func,
                systems,
                dim,
                points,
                seed,
                fd: FdConfig {
                    step: fd_step,
                    scheme,
                },
            }
        }
    };
    Ok(RunConfig {
        command,
        format: cli.format,
        quadrature,
    })
}

/// Exit code and the rendered report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_) | Error::UnknownName(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

/// `1`, `e3`, `-e7`, ... for a signed basis element.
pub fn basis_symbol(x: Octonion) -> String {
    let (idx, &c) =
        x.0.iter()
            .enumerate()
            .find(|(_, c)| **c != 0.0)
            .expect("basis products are nonzero");
    let sign = if c < 0.0 { "-" } else { "" };
    if idx == 0 {
        format!("{sign}1")
    } else {
        format!("{sign}e{idx}")
    }
}

fn table_rows() -> Vec<Vec<String>> {
    (0..8)
        .map(|i| {
            (0..8)
                .map(|j| basis_symbol(Octonion::basis(i) * Octonion::basis(j)))
                .collect()
        })
        .collect()
}

struct Report {
    inputs: Map<String, Value>,
    results: Vec<Value>,
    exit_code: i32,
    error: Option<String>,
}

fn transform_json(r: &TransformResult) -> Value {
    json!({
        "value": r.value.0,
        "est_error": r.est_error,
        "evaluations": r.evaluations,
    })
}

fn execute(config: &RunConfig) -> Report {
    let mut inputs = Map::new();
    let mut results = Vec::new();
    let cfg = &config.quadrature;
    let attempt: crate::Result<i32> = (|| match &config.command {
        Command::Table => {
            for (i, row) in table_rows().into_iter().enumerate() {
                let label = if i == 0 {
                    "1".to_string()
                } else {
                    format!("e{i}")
                };
                results.push(json!({ "row": label, "products": row }));
            }
            Ok(EXIT_OK)
        }
        Command::Eval { func, x } => {
            inputs.insert("fn".into(), json!(func.name()));
            inputs.insert("x".into(), json!(x.0));
            let v = func.apply(*x)?;
            results.push(json!({ "value": v.0 }));
            Ok(EXIT_OK)
        }
        Command::Laplace {
            original,
            x,
            bilateral,
        } => {
            inputs.insert("original".into(), json!(original));
            inputs.insert("x".into(), json!(x.0));
            inputs.insert("bilateral".into(), json!(bilateral));
            let orig = OriginalSpec::by_name(original)?;
            let r = if *bilateral {
                bilateral_laplace(&orig, *x, cfg)?
            } else {
                laplace(&orig, *x, cfg)?
            };
            let mut entry = transform_json(&r);
            if let (Some(cf), false) = (&orig.closed_form, *bilateral) {
                if let Ok(v) = cf(*x) {
                    entry["closed_form"] = json!(v.0);
                }
            }
            results.push(entry);
            Ok(EXIT_OK)
        }
        Command::Gamma { x } => {
            inputs.insert("x".into(), json!(x.0));
            results.push(transform_json(&oct_gamma_detailed(*x, cfg)?));
            Ok(EXIT_OK)
        }
        Command::Zeta { x, method } => {
            inputs.insert("x".into(), json!(x.0));
            inputs.insert("method".into(), json!(method));
            results.push(transform_json(&oct_zeta_detailed(*x, cfg, *method)?));
            Ok(EXIT_OK)
        }
        Command::Verify {
            func,
            systems,
            dim,
            points,
            seed,
            fd,
        } => {
            inputs.insert("fn".into(), json!(func.name()));
            inputs.insert(
                "system".into(),
                json!(systems.iter().map(|s| s.label(*dim)).collect::<Vec<_>>()),
            );
            inputs.insert("dim".into(), json!(dim));
            inputs.insert("points".into(), json!(points));
            inputs.insert("seed".into(), json!(seed));
            inputs.insert("fd".into(), json!(fd));
            let f = *func;
            let field = field_from_octonion_fn_dim(move |x| f.apply(x), *dim);
            let sampler = PointSampler::for_families(*dim, systems, *seed);
            let reports = verify_grid(&field, systems, &sampler, *points, fd)?;
            let all_pass = reports.iter().all(|r| r.passed);
            results.extend(
                reports
                    .iter()
                    .map(|r| serde_json::to_value(r).expect("serializable")),
            );
            Ok(if all_pass { EXIT_OK } else { EXIT_TOLERANCE })
        }
    })();
    match attempt {
        Ok(code) => Report {
            inputs,
            results,
            exit_code: code,
            error: None,
        },
        Err(e) => Report {
            inputs,
            results,
            exit_code: error_code(&e),
            error: Some(e.to_string()),
        },
    }
}

fn fmt_coeffs(c: &Value) -> String {
    c.as_array()
        .map(|a| {
            a.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .unwrap_or_default()
}

fn render_plain(config: &RunConfig, report: &Report) -> String {
    let mut out = String::new();
    match &config.command {
        Command::Table => {
            let rows = table_rows();
            let _ = writeln!(
                out,
                "{:>4} {}",
                "*",
                ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"]
                    .map(|s| format!("{s:>4}"))
                    .join("")
            );
            for (i, row) in rows.iter().enumerate() {
                let label = if i == 0 {
                    "1".to_string()
                } else {
                    format!("e{i}")
                };
                let cells: String = row.iter().map(|s| format!("{s:>4}")).collect();
                let _ = writeln!(out, "{label:>4} {cells}");
            }
        }
        Command::Verify { .. } => {
            for r in &report.results {
                let r: ResidualReport = serde_json::from_value(r.clone()).expect("report shape");
                let _ = writeln!(
                    out,
                    "{:<10} {} points={} excluded={} max_abs={:.3e} max_rel={:.3e} tol={:.0e} worst={}",
                    r.equation_family,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.points_tested,
                    r.excluded,
                    r.max_abs_residual,
                    r.max_rel_residual,
                    r.tolerance,
                    r.worst_component,
                );
            }
        }
        _ => {
            for r in &report.results {
                if let Some(v) = r.get("value") {
                    let arr: Vec<f64> = serde_json::from_value(v.clone()).unwrap_or_default();
                    let mut c = [0.0; 8];
                    c.copy_from_slice(&arr);
                    let _ = writeln!(out, "value = {}", Octonion::new(c));
                }
                if let Some(e) = r.get("est_error") {
                    let _ = writeln!(out, "est_error = {e}");
                }
                if let Some(v) = r.get("closed_form") {
                    let _ = writeln!(out, "closed_form = ({})", fmt_coeffs(v));
                }
            }
        }
    }
    if let Some(e) = &report.error {
        let _ = writeln!(out, "error: {e}");
    }
    out
}

fn render_csv(config: &RunConfig, report: &Report) -> String {
    let mut out = String::new();
    match &config.command {
        Command::Table => {
            let _ = writeln!(out, "row,1,e1,e2,e3,e4,e5,e6,e7");
            for (i, row) in table_rows().iter().enumerate() {
                let label = if i == 0 {
                    "1".to_string()
                } else {
                    format!("e{i}")
                };
                let _ = writeln!(out, "{label},{}", row.join(","));
            }
        }
        Command::Verify { .. } => {
            let _ = writeln!(
                out,
                "equation_family,points_tested,excluded,max_abs_residual,max_rel_residual,mean_abs_residual,mean_rel_residual,tolerance,passed"
            );
            for r in &report.results {
                let r: ResidualReport = serde_json::from_value(r.clone()).expect("report shape");
                let _ = writeln!(
                    out,
                    "{},{},{},{:e},{:e},{:e},{:e},{:e},{}",
                    r.equation_family,
                    r.points_tested,
                    r.excluded,
                    r.max_abs_residual,
                    r.max_rel_residual,
                    r.mean_abs_residual,
                    r.mean_rel_residual,
                    r.tolerance,
                    r.passed
                );
            }
        }
        _ => {
            let _ = writeln!(out, "c0,c1,c2,c3,c4,c5,c6,c7,est_error");
            for r in &report.results {
                let est = r
                    .get("est_error")
                    .map(|v| v.to_string())
                    .unwrap_or_default();
                let _ = writeln!(out, "{},{est}", fmt_coeffs(&r["value"]));
            }
        }
    }
    if let Some(e) = &report.error {
        let _ = writeln!(out, "# error: {e}");
    }
    out
}

/// Runs a validated configuration and renders its report.
pub fn run(config: &RunConfig) -> Outcome {
    let report = execute(config);
    let output = match config.format {
        OutputFormat::Json => {
            let mut doc = json!({
                "command": config.command.name(),
                "inputs": Value::Object(report.inputs.clone()),
                "results": report.results,
                "version": env!("CARGO_PKG_VERSION"),
            });
            if let Some(e) = &report.error {
                doc["error"] = json!(e);
            }
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => render_csv(config, &report),
        OutputFormat::Plain => render_plain(config, &report),
    };
    Outcome {
        exit_code: report.exit_code,
        output,
    }
}
