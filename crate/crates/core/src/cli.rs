//! The `binomverify` command line.
//!
//! Exit codes: 0 when everything verified, 1 when at least one identity or
//! comparison failed, 2 for usage, parse, evaluation or resource errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::{int, parse_rational, render, Integer, Rational};
use crate::dsl::{self, Env, Identity, Status, VerificationReport};
use crate::identities::{self, IexInstance, ProofTrace, TraceMode, DEFAULT_ENUM_CAP};
use crate::series;

pub const ENUM_CAP_VAR: &str = "BINOMVERIFY_ENUM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Process-level settings taken from the environment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub enum_cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self { enum_cap: DEFAULT_ENUM_CAP }
    }
}

impl Config {
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(ENUM_CAP_VAR) {
            Err(_) => Ok(Self::default()),
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map(|enum_cap| Self { enum_cap })
                .map_err(|_| format!("{ENUM_CAP_VAR} must be a nonnegative integer, got {v:?}")),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "binomverify", version, about = "Exact verification of binomial convolution identities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Numeric,
    Poly,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify identities written in the identity language.
    Verify(VerifyArgs),
    /// Evaluate every line of the derivation at one (n, l).
    Trace(TraceArgs),
    /// Expand (1 + a x)^alpha as a truncated power series.
    Series(SeriesArgs),
    /// Compare the inclusion-exclusion count with brute-force enumeration.
    Oracle(OracleArgs),
}

#[derive(clap::Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["expr", "file"])))]
struct VerifyArgs {
    /// Identity given inline.
    #[arg(long, allow_hyphen_values = true)]
    expr: Option<String>,
    /// File with one identity per line; `#` starts a comment.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Numeric)]
    mode: ModeArg,
    /// Parameter assignment NAME=VALUE, VALUE an integer or p/q. Repeatable.
    #[arg(long = "assign", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    assign: Vec<String>,
    /// Symbol to prove the identity for (poly mode).
    #[arg(long)]
    free: Option<String>,
    /// Integer sweep NAME=LO..HI, inclusive. Repeatable; the first is outermost.
    #[arg(long = "range", value_name = "NAME=LO..HI", allow_hyphen_values = true)]
    range: Vec<String>,
}

#[derive(clap::Args, Debug)]
struct TraceArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    /// Value of l, an integer or p/q.
    #[arg(long, allow_hyphen_values = true)]
    ell: String,
    /// Use the proven value 1 for the inner sums instead of recomputing them.
    #[arg(long)]
    substitute: bool,
}

#[derive(clap::Args, Debug)]
struct SeriesArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_negative_numbers = true)]
    terms: i64,
    /// Print the Cauchy square of the series instead.
    #[arg(long)]
    square: bool,
}

#[derive(clap::Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["p", "all"])))]
struct OracleArgs {
    #[arg(long, allow_negative_numbers = true)]
    ell: i64,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<i64>,
    /// Sweep p = 0..=ell.
    #[arg(long)]
    all: bool,
}

/// A usage-level failure: message for stderr, exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Usage>;

/// Runs one invocation, writing results to `out` and diagnostics to `err`,
/// and returns the exit code.
pub fn run<I, T>(args: I, config: &Config, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a, cli.format, out),
        Command::Trace(a) => cmd_trace(a, cli.format, out),
        Command::Series(a) => cmd_series(a, cli.format, out),
        Command::Oracle(a) => cmd_oracle(a, cli.format, config, out),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit_json(out: &mut dyn Write, command: &str, inputs: Value, reports: Vec<Value>) -> Result<(), Usage> {
    let doc = json!({ "command": command, "inputs": inputs, "reports": reports });
    let text = serde_json::to_string_pretty(&doc)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn parse_assignment(text: &str) -> Result<(String, Rational), Usage> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Usage(format!("assignment {text:?} is not of the form NAME=VALUE")))?;
    let name = name.trim();
    if !is_ident(name) {
        return Err(Usage(format!("invalid variable name {name:?}")));
    }
    Ok((name.to_string(), parse_rational(value)?))
}

fn parse_range(text: &str) -> Result<(String, i64, i64), Usage> {
    let bad = || Usage(format!("range {text:?} is not of the form NAME=LO..HI"));
    let (name, span) = text.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = span.split_once("..").ok_or_else(bad)?;
    let name = name.trim();
    if !is_ident(name) {
        return Err(Usage(format!("invalid variable name {name:?}")));
    }
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Usage(format!("range {text:?} is empty")));
    }
    Ok((name.to_string(), lo, hi))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "sum"
        && s != "C"
}

/// Every assignment from the cartesian product of the sweeps, first sweep
/// outermost, each merged over the fixed assignments.
fn sweep(base: &Env, ranges: &[(String, i64, i64)]) -> Vec<Env> {
    let mut envs = vec![base.clone()];
    for (name, lo, hi) in ranges {
        envs = envs
            .into_iter()
            .flat_map(|env| {
                (*lo..=*hi).map(move |v| {
                    let mut e = env.clone();
                    e.insert(name.clone(), Rational::from_integer(v.into()));
                    e
                })
            })
            .collect();
    }
    envs
}

fn cmd_verify(args: &VerifyArgs, format: Format, out: &mut dyn Write) -> CmdResult {
    let identities: Vec<Identity> = match (&args.expr, &args.file) {
        (Some(text), None) => vec![dsl::parse_identity(text)?],
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
            let parsed = dsl::parse_identity_file(&text)
                .map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            if parsed.is_empty() {
                return Err(Usage(format!("{} contains no identities", path.display())));
            }
            parsed.into_iter().map(|(_, _, id)| id).collect()
        }
        _ => unreachable!("clap enforces exactly one source"),
    };

    let mut base = Env::new();
    for a in &args.assign {
        let (name, value) = parse_assignment(a)?;
        if base.insert(name.clone(), value).is_some() {
            return Err(Usage(format!("variable '{name}' assigned twice")));
        }
    }
    let ranges = args.range.iter().map(|r| parse_range(r)).collect::<Result<Vec<_>, _>>()?;
    for (i, (name, ..)) in ranges.iter().enumerate() {
        if base.contains_key(name) || ranges[..i].iter().any(|(n, ..)| n == name) {
            return Err(Usage(format!("variable '{name}' is both swept and assigned")));
        }
    }
    let free = match (args.mode, &args.free) {
        (ModeArg::Poly, Some(f)) => {
            if base.contains_key(f) || ranges.iter().any(|(n, ..)| n == f) {
                return Err(Usage(format!("free symbol '{f}' must not be assigned or swept")));
            }
            Some(f.as_str())
        }
        (ModeArg::Poly, None) => return Err(Usage("poly mode requires --free".into())),
        (ModeArg::Numeric, Some(_)) => return Err(Usage("--free only applies to --mode poly".into())),
        (ModeArg::Numeric, None) => None,
    };

    let envs = sweep(&base, &ranges);
    let mut reports: Vec<VerificationReport> = Vec::new();
    let mut first = true;
    for identity in &identities {
        for env in &envs {
            let report = match free {
                Some(symbol) => dsl::verify_poly(identity, symbol, env),
                None => dsl::verify_numeric(identity, env),
            };
            if format == Format::Text {
                if !first {
                    writeln!(out)?;
                }
                write!(out, "{}", report.to_text())?;
                first = false;
            }
            reports.push(report);
        }
    }

    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let (verified, failed, errors) = (count(Status::Verified), count(Status::Failed), count(Status::Error));
    match format {
        Format::Text => {
            writeln!(out)?;
            writeln!(
                out,
                "summary: {} reports, {verified} verified, {failed} failed, {errors} errors",
                reports.len()
            )?;
        }
        Format::Json => {
            let inputs = json!({
                "expr": args.expr,
                "file": args.file.as_ref().map(|p| p.display().to_string()),
                "mode": match args.mode { ModeArg::Numeric => "numeric", ModeArg::Poly => "poly" },
                "assign": base.iter().map(|(k, v)| (k.clone(), Value::from(render(v)))).collect::<serde_json::Map<_, _>>(),
                "free": args.free,
                "ranges": ranges.iter().map(|(n, lo, hi)| json!({"name": n, "lo": lo, "hi": hi})).collect::<Vec<_>>(),
            });
            emit_json(out, "verify", inputs, reports.iter().map(VerificationReport::to_json).collect())?;
        }
    }
    if errors > 0 {
        return Err(Usage(format!("{errors} of {} reports ended in an evaluation error", reports.len())));
    }
    Ok(if failed > 0 {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

fn trace_json(t: &ProofTrace) -> Value {
    json!({
        "n": t.n,
        "ell": render(&t.ell),
        "mode": mode_name(t.mode),
        "lines": t.lines.iter().map(|l| json!({"label": l.label, "value": render(&l.value)})).collect::<Vec<_>>(),
        "inner_sums": t.inner_sums.as_ref().map(|v| v.iter().map(render).collect::<Vec<_>>()),
        "valid": t.valid,
    })
}

fn mode_name(mode: TraceMode) -> &'static str {
    match mode {
        TraceMode::Strict => "strict",
        TraceMode::Substituted => "substituted",
    }
}

fn cmd_trace(args: &TraceArgs, format: Format, out: &mut dyn Write) -> CmdResult {
    if args.n < 0 {
        return Err(Usage(format!("--n must be >= 0, got {}", args.n)));
    }
    let ell = parse_rational(&args.ell)?;
    let mode = if args.substitute { TraceMode::Substituted } else { TraceMode::Strict };
    let trace = identities::proof_chain_trace_with(args.n, &ell, mode)?;
    match format {
        Format::Text => {
            writeln!(out, "trace: n={} l={} mode={}", trace.n, render(&trace.ell), mode_name(mode))?;
            for (i, line) in trace.lines.iter().enumerate() {
                writeln!(out, "{}. {}: {}", i + 1, line.label, render(&line.value))?;
            }
            if let Some(inner) = &trace.inner_sums {
                let joined = inner.iter().map(render).collect::<Vec<_>>().join(", ");
                writeln!(out, "inner sums: {joined}")?;
            }
            writeln!(out, "verdict: {}", if trace.valid { "VALID" } else { "INVALID" })?;
        }
        Format::Json => {
            let inputs = json!({"n": args.n, "ell": render(&ell), "mode": mode_name(mode)});
            emit_json(out, "trace", inputs, vec![trace_json(&trace)])?;
        }
    }
    Ok(if trace.valid { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_series(args: &SeriesArgs, format: Format, out: &mut dyn Write) -> CmdResult {
    if args.terms < 1 {
        return Err(Usage(format!("--terms must be >= 1, got {}", args.terms)));
    }
    let alpha = parse_rational(&args.alpha)?;
    let a = parse_rational(&args.a)?;
    let mut s = series::newton_binomial(&alpha, &a, args.terms as usize)?;
    if args.square {
        s = s.square();
    }
    match format {
        Format::Text => {
            for (n, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{n}: {}", render(c))?;
            }
        }
        Format::Json => {
            let inputs = json!({
                "alpha": render(&alpha),
                "a": render(&a),
                "terms": args.terms,
                "square": args.square,
            });
            let report = json!({
                "order": s.order(),
                "coefficients": s.coeffs().iter().map(render).collect::<Vec<_>>(),
            });
            emit_json(out, "series", inputs, vec![report])?;
        }
    }
    Ok(EXIT_OK)
}

struct OracleRow {
    ell: i64,
    p: i64,
    enumerated: Integer,
    formula: Integer,
    expected: Integer,
}

impl OracleRow {
    fn matches(&self) -> bool {
        self.enumerated == self.formula && self.formula == self.expected
    }
}

fn cmd_oracle(args: &OracleArgs, format: Format, config: &Config, out: &mut dyn Write) -> CmdResult {
    let ps: Vec<i64> = match args.p {
        Some(p) => vec![p],
        None => (0..=args.ell.max(0)).collect(),
    };
    let mut rows = Vec::with_capacity(ps.len());
    for p in ps {
        let inst = IexInstance::new(args.ell, p)?;
        rows.push(OracleRow {
            ell: args.ell,
            p,
            enumerated: identities::iex_union_count_enum_capped(&inst, config.enum_cap)?,
            formula: identities::iex_union_count_formula(&inst),
            expected: crate::arith::binom_integer(&int(args.ell), p) - 1,
        });
    }
    let all_match = rows.iter().all(OracleRow::matches);
    match format {
        Format::Text => {
            writeln!(out, "{:>4} {:>4} {:>10} {:>10} {:>10}  match", "ell", "p", "enum", "formula", "C(ell,p)-1")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>4} {:>4} {:>10} {:>10} {:>10}  {}",
                    r.ell,
                    r.p,
                    r.enumerated,
                    r.formula,
                    r.expected,
                    if r.matches() { "yes" } else { "no" }
                )?;
            }
        }
        Format::Json => {
            let inputs = json!({"ell": args.ell, "p": args.p, "all": args.all});
            let reports = rows
                .iter()
                .map(|r| {
                    let mut m = BTreeMap::new();
                    m.insert("ell", json!(r.ell));
                    m.insert("p", json!(r.p));
                    m.insert("enum", json!(r.enumerated.to_string()));
                    m.insert("formula", json!(r.formula.to_string()));
                    m.insert("expected", json!(r.expected.to_string()));
                    m.insert("match", json!(r.matches()));
                    json!(m)
                })
                .collect();
            emit_json(out, "oracle", inputs, reports)?;
        }
    }
    Ok(if all_match { EXIT_OK } else { EXIT_FAILED })
}
