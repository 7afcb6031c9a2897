//! Command-line front end: text and JSON in, exact results out.
//!
//! Exit codes: 0 on success or a passing suite, 1 when a verification suite
//! fails, 2 on usage, parse or input errors.

pub mod expr;
pub mod lower;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use divlie_core::autos::{jacobian, jacobian_det};
use divlie_core::closure::bracket_closure;
use divlie_core::identities::{check_all, check_identity, IdentityOutcome};
use divlie_core::{
    enumerate_basis, Algebra, Automorphism, BasisSpec, Derivation, Polynomial, Theorem, VerifyOptions,
};
use serde_json::{json, Value as Json};

pub use expr::{parse_expr, Expr, ParseError};
pub use lower::{lower, Value};

use lower::{parse_derivation, parse_poly, parse_value, resolve_n};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Lower(String),
    #[error(transparent)]
    Core(#[from] divlie_core::Error),
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "divlie", version, about = "Exact computations with divergence-free and constant-divergence vector fields")]
pub struct Cli {
    /// Number of variables (inferred from the input when omitted).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lie bracket [A, B] of two derivations.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Divergence of a derivation.
    Div {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Zero, constant or nonconstant divergence.
    Classify {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Applies derivation A to polynomial P.
    Apply {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Truncated basis of div0 or divc (requires --n).
    Basis {
        #[arg(long)]
        cutoff: u32,
        #[arg(long, default_value = "div0")]
        algebra: Algebra,
    },
    /// Splits a derivation into weight components.
    Weights {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Applies an automorphism to a polynomial, or conjugates a derivation by it.
    Act {
        #[arg(long)]
        auto: PathBuf,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Jacobian matrix of an automorphism, or its determinant with --det.
    Jacobian {
        #[arg(long)]
        auto: PathBuf,
        #[arg(long)]
        det: bool,
    },
    /// Truncated bracket closure of a generator list.
    Closure {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Runs a verification suite (requires --n).
    Verify {
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        cutoff: u32,
        /// Random trials for the equivariance suite.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Random elements for the simplicity suite.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Checks a family of closed-form bracket identities, or `all` (requires --n).
    Identity {
        #[arg(long)]
        name: String,
        /// Largest exponent size checked.
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
    },
}

/// What a run printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    text: String,
    json: Json,
    passed: bool,
}

impl Output {
    fn ok(text: String, json: Json) -> Self {
        Output { text, json, passed: true }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_cli(&cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run_cli(cli: &Cli) -> Outcome {
    render(cli.format, execute(cli))
}

fn render(format: Format, result: Result<Output, CliError>) -> Outcome {
    match result {
        Ok(out) => {
            let mut stdout = match format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: if out.passed { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn item<T: serde::Serialize + std::fmt::Display>(v: &T) -> Json {
    json!({ "text": v.to_string(), "value": v })
}

fn value_item(v: &Value) -> Json {
    match v {
        Value::Poly(p) => item(p),
        Value::Deriv(d) => item(d),
    }
}

fn lines<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| format!("{x}\n")).collect()
}

fn need_n(cli: &Cli) -> Result<usize, CliError> {
    match cli.n {
        Some(0) => Err(CliError::Usage("--n must be at least 1".into())),
        Some(n) => Ok(n),
        None => Err(CliError::Usage("this command requires --n".into())),
    }
}

/// `n` for text arguments: `--n` if given, else the largest index used.
fn n_for(cli: &Cli, texts: &[&str]) -> Result<usize, CliError> {
    let exprs = texts.iter().map(|t| parse_expr(t)).collect::<Result<Vec<_>, _>>()?;
    if cli.n == Some(0) {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    Ok(resolve_n(cli.n, &exprs.iter().collect::<Vec<_>>()))
}

fn read_json(path: &Path) -> Result<Json, CliError> {
    let input = |message: String| CliError::Input {
        path: path.to_path_buf(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| input(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| input(e.to_string()))
}

/// Reads an automorphism file; a triangular `"f"` may be given as text.
pub fn load_automorphism(path: &Path) -> Result<Automorphism, CliError> {
    let mut raw = read_json(path)?;
    let input = |message: String| CliError::Input {
        path: path.to_path_buf(),
        message,
    };
    let n = raw
        .get("n")
        .and_then(Json::as_u64)
        .ok_or_else(|| input("expected an object with an integer \"n\"".into()))? as usize;
    if let Some(word) = raw.get_mut("word").and_then(Json::as_array_mut) {
        for map in word {
            if let Some(f) = map.get_mut("f") {
                if let Some(text) = f.as_str() {
                    *f = serde_json::to_value(parse_poly(text, n)?).expect("serializable");
                }
            }
        }
    }
    serde_json::from_value(raw).map_err(|e| input(e.to_string()))
}

/// Reads a generator list: JSON derivation objects or text strings.
pub fn load_generators(path: &Path, n: Option<usize>) -> Result<Vec<Derivation>, CliError> {
    let raw = read_json(path)?;
    let input = |message: String| CliError::Input {
        path: path.to_path_buf(),
        message,
    };
    let list = raw
        .as_array()
        .ok_or_else(|| input("expected a JSON list of generators".into()))?;
    let texts: Vec<&str> = list.iter().filter_map(Json::as_str).collect();
    let exprs = texts.iter().map(|t| parse_expr(t)).collect::<Result<Vec<_>, _>>()?;
    let text_n = resolve_n(n, &exprs.iter().collect::<Vec<_>>());
    let mut gens = Vec::with_capacity(list.len());
    for g in list {
        let d = match g.as_str() {
            Some(t) => parse_derivation(t, text_n)?,
            None => serde_json::from_value::<Derivation>(g.clone()).map_err(|e| input(e.to_string()))?,
        };
        gens.push(d);
    }
    if let Some(first) = gens.first() {
        let m = n.unwrap_or(first.nvars());
        if let Some(bad) = gens.iter().find(|d| d.nvars() != m) {
            return Err(divlie_core::Error::DimensionMismatch {
                expected: m,
                found: bad.nvars(),
            }
            .into());
        }
    }
    Ok(gens)
}

fn identity_json(o: &IdentityOutcome) -> Json {
    let mut v = json!({
        "name": o.name,
        "cases": o.cases,
        "status": if o.passed() { "pass" } else { "fail" },
    });
    if let Some(w) = &o.failure {
        v["witness"] = json!(w);
    }
    v
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    Ok(match &cli.command {
        Command::Bracket { a, b } => {
            let n = n_for(cli, &[a, b])?;
            let r = parse_derivation(a, n)?.bracket(&parse_derivation(b, n)?)?;
            Output::ok(r.to_string(), item(&r))
        }
        Command::Div { a } => {
            let n = n_for(cli, &[a])?;
            let r = parse_derivation(a, n)?.divergence();
            Output::ok(r.to_string(), item(&r))
        }
        Command::Classify { a } => {
            let n = n_for(cli, &[a])?;
            let d = parse_derivation(a, n)?;
            let class = d.classify();
            Output::ok(
                class.to_string(),
                json!({ "class": class.tag(), "divergence": item(&d.divergence()) }),
            )
        }
        Command::Apply { a, p } => {
            let n = n_for(cli, &[a, p])?;
            let r = parse_derivation(a, n)?.apply(&parse_poly(p, n)?)?;
            Output::ok(r.to_string(), item(&r))
        }
        Command::Basis { cutoff, algebra } => {
            let n = need_n(cli)?;
            let basis = enumerate_basis(&BasisSpec::new(n, *cutoff, *algebra));
            Output::ok(
                lines(&basis),
                json!({
                    "n": n,
                    "cutoff": cutoff,
                    "algebra": algebra.to_string(),
                    "dim": basis.len(),
                    "elements": basis.iter().map(item).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Weights { a } => {
            let n = n_for(cli, &[a])?;
            let parts = parse_derivation(a, n)?.decompose_weights();
            let text = parts.iter().map(|(w, d)| format!("{w}  {d}\n")).collect();
            let json = parts
                .iter()
                .map(|(w, d)| json!({ "weight": w, "text": d.to_string(), "value": d }))
                .collect::<Vec<_>>();
            Output::ok(text, json!(json))
        }
        Command::Act { auto, a } => {
            let sigma = load_automorphism(auto)?;
            let n = sigma.nvars();
            if cli.n.is_some_and(|m| m != n) {
                return Err(divlie_core::Error::DimensionMismatch {
                    expected: n,
                    found: cli.n.unwrap_or(n),
                }
                .into());
            }
            let r = match parse_value(a, n)? {
                Value::Poly(p) => Value::Poly(sigma.apply(&p)?),
                Value::Deriv(d) => Value::Deriv(divlie_core::autos::conjugate(&sigma, &d)?),
            };
            Output::ok(r.to_string(), value_item(&r))
        }
        Command::Jacobian { auto, det } => {
            let sigma = load_automorphism(auto)?;
            if *det {
                let r = jacobian_det(&sigma);
                Output::ok(r.to_string(), item(&r))
            } else {
                let j = jacobian(&sigma);
                let text = j
                    .rows()
                    .iter()
                    .map(|row| format!("[{}]\n", row.iter().map(Polynomial::to_string).collect::<Vec<_>>().join(", ")))
                    .collect();
                let json = j
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(item).collect::<Vec<_>>())
                    .collect::<Vec<_>>();
                Output::ok(text, json!(json))
            }
        }
        Command::Closure { gens, cutoff } => {
            let gens = load_generators(gens, cli.n)?;
            let r = bracket_closure(&gens, *cutoff)?;
            let rows = r.space.rows();
            let text = format!(
                "dim {} after {} rounds{}\n{}",
                r.dim(),
                r.rounds,
                if r.saturated { "" } else { " (not saturated)" },
                lines(&rows)
            );
            Output::ok(
                text,
                json!({
                    "n": r.space.nvars(),
                    "cutoff": cutoff,
                    "dim": r.dim(),
                    "rounds": r.rounds,
                    "saturated": r.saturated,
                    "elements": rows.iter().map(item).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Verify {
            theorem,
            cutoff,
            trials,
            samples,
        } => {
            let n = need_n(cli)?;
            let opts = VerifyOptions {
                seed: cli.seed,
                trials: *trials,
                samples: *samples,
            };
            let report = divlie_core::verify_theorem(*theorem, n, *cutoff, &opts)?;
            Output {
                text: report.to_text(),
                json: report.to_json(),
                passed: report.passed(),
            }
        }
        Command::Identity { name, cutoff } => {
            let n = need_n(cli)?;
            let outcomes = if name == "all" {
                check_all(n, *cutoff)
            } else {
                vec![check_identity(name, n, *cutoff)?]
            };
            let text = outcomes
                .iter()
                .map(|o| match &o.failure {
                    None => format!("pass  {} ({} cases)\n", o.name, o.cases),
                    Some(w) => format!("FAIL  {}: {}\n", o.name, w),
                })
                .collect();
            Output {
                text,
                json: json!(outcomes.iter().map(identity_json).collect::<Vec<_>>()),
                passed: outcomes.iter().all(IdentityOutcome::passed),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_report_exits_one_and_still_prints() {
        let failed = Output {
            text: "FAIL  something".into(),
            json: json!([{ "check": "something", "status": "fail", "witness": "x1*d1" }]),
            passed: false,
        };
        let out = render(Format::Json, Ok(failed));
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("\"fail\""));
        assert!(out.stderr.is_empty());
    }

    #[test]
    fn errors_exit_two() {
        let out = render(Format::Text, Err(CliError::Usage("no".into())));
        assert_eq!((out.code, out.stdout.as_str()), (2, ""));
    }
}
