//! Command-line surface. [`run`] is the whole program minus process exit,
//! so it can be driven from tests.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{AlgebraError, RationalFunction, RationalFunctionRepr};
use crate::chebyshev::{r_or_zero, sweep_identities};
use crate::engine::{
    avoid_gf_closed_for, g_increasing_closed, once_gf_closed, verify_relation, Engine, EngineError, RelationId,
    RelationParams,
};
use crate::oracle::{self, ConstraintSpec, CountMode, OracleError};
use crate::pattern::{classify, parse_pattern, Pattern, PatternError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_NOT_132: i32 = 3;
pub const EXIT_RELATION_FAILED: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "perm132", version, about = "Generating functions for 132-avoiding permutations with one more restriction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Avoid the pattern: F(x).
    Avoid,
    /// Contain the pattern exactly once: G(x).
    Once,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Recursion, falling back on nothing.
    Auto,
    Recursion,
    /// Family closed forms only.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the generating function of a pattern.
    Gf {
        pattern: String,
        #[arg(long, value_enum, default_value = "avoid")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print the first coefficients of the generating function.
    Series {
        pattern: String,
        #[arg(long, value_enum, default_value = "avoid")]
        mode: Mode,
        #[arg(long, default_value_t = 12)]
        terms: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// Count by brute force over S_n(132).
    Oracle {
        pattern: String,
        #[arg(long, value_enum, default_value = "avoid")]
        mode: Mode,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Additional patterns to avoid (repeatable).
        #[arg(long)]
        also_avoid: Vec<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: TableFormat,
    },
    /// Check one of the structural relations.
    Verify {
        /// thm21, thm22feq, thm23, thm31, remark31, remark31-refined, thm32feq, thm33 or lemma41.
        relation: String,
        /// Pattern sizes to sweep, `a..b` (inclusive).
        #[arg(long)]
        range: Option<String>,
        /// Check these patterns instead of a sweep (repeatable).
        #[arg(long = "pattern")]
        patterns: Vec<String>,
        #[arg(long, default_value_t = 9)]
        terms: usize,
        /// Largest r in layered sweeps.
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        /// Bivariate truncation `Nx,Ny`.
        #[arg(long)]
        orders: Option<String>,
        /// Largest polynomial index for lemma41.
        #[arg(long, default_value_t = 12)]
        max: usize,
        /// Print every instance, not just failures and the summary.
        #[arg(long)]
        verbose: bool,
    },
    /// Sweep the Chebyshev identities.
    Identities {
        #[arg(long, default_value_t = 12)]
        max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Engine(EngineError),
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Engine(e.into())
    }
}

impl CliError {
    fn into_outcome(self) -> Outcome {
        match self {
            CliError::Usage(msg) => Outcome::fail(EXIT_USAGE, format!("error: {msg}\n")),
            CliError::Engine(e) => {
                let code = match &e {
                    EngineError::NotIn132Class(_) => EXIT_NOT_132,
                    EngineError::UnsupportedPattern { .. } => EXIT_UNSUPPORTED,
                    EngineError::InvalidParams(_) | EngineError::Pattern(_) | EngineError::Oracle(_) => EXIT_USAGE,
                    EngineError::Algebra(_) => EXIT_INTERNAL,
                };
                let kind = match code {
                    EXIT_NOT_132 => "NotIn132Class: ",
                    EXIT_UNSUPPORTED => "UnsupportedPattern: ",
                    _ => "",
                };
                Outcome::fail(code, format!("error: {kind}{e}\n"))
            }
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(&cli.command, Engine::shared())
}

pub fn execute(command: &Command, engine: &Engine) -> Outcome {
    let result = match command {
        Command::Gf { pattern, mode, method, format } => gf(engine, pattern, *mode, *method, *format),
        Command::Series { pattern, mode, terms, method } => series(engine, pattern, *mode, *terms, *method),
        Command::Oracle { pattern, mode, max_n, also_avoid, format } => {
            oracle_cmd(pattern, *mode, *max_n, also_avoid, *format)
        }
        Command::Verify { relation, range, patterns, terms, max_r, orders, max, verbose } => {
            return verify(engine, relation, range.as_deref(), patterns, *terms, *max_r, orders.as_deref(), *max, *verbose)
        }
        Command::Identities { max } => Ok(identities(*max)),
    };
    result.unwrap_or_else(CliError::into_outcome)
}

fn compute(engine: &Engine, pat: &Pattern, mode: Mode, method: Method) -> Result<RationalFunction, CliError> {
    Ok(match (mode, method) {
        (Mode::Avoid, Method::Auto | Method::Recursion) => engine.avoid_gf(pat)?,
        (Mode::Avoid, Method::Closed) => avoid_gf_closed_for(pat)?,
        (Mode::Once, Method::Auto | Method::Recursion) => engine.once_gf(pat)?,
        (Mode::Once, Method::Closed) => {
            crate::engine::require_132_avoider(pat)?;
            once_gf_closed(&classify(pat))?
        }
    })
}

#[derive(Serialize)]
struct GfJson<'a> {
    pattern: String,
    mode: &'a str,
    #[serde(flatten)]
    value: RationalFunctionRepr,
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Avoid => "avoid",
        Mode::Once => "once",
    }
}

/// Names a value that matches `R_k` or `x^k / V_k^2`.
fn known_form(f: &RationalFunction) -> Option<String> {
    let bound = 2 * f.denominator().degree().unwrap_or(0) + 3;
    (1..=bound).find_map(|k| {
        if *f == r_or_zero(k) {
            Some(format!("R_{{{k}}}(x) = V_{{{}}}/V_{{{k}}}", k - 1))
        } else if *f == g_increasing_closed(k as u32) {
            Some(format!("x^{{{k}}}/V_{{{k}}}^{{2}}"))
        } else {
            None
        }
    })
}

fn gf(engine: &Engine, text: &str, mode: Mode, method: Method, format: Format) -> Result<Outcome, CliError> {
    let pat = parse_pattern(text)?;
    let f = compute(engine, &pat, mode, method)?;
    let out = match format {
        Format::Plain => f.render_plain(),
        Format::Latex => match known_form(&f) {
            Some(name) => format!("{} % = {name}", f.render_latex()),
            None => f.render_latex(),
        },
        Format::Json => serde_json::to_string(&GfJson {
            pattern: pat.to_string(),
            mode: mode_name(mode),
            value: RationalFunctionRepr::from(&f),
        })
        .expect("plain data serializes"),
    };
    Ok(Outcome::ok(out + "\n"))
}

fn series(engine: &Engine, text: &str, mode: Mode, terms: usize, method: Method) -> Result<Outcome, CliError> {
    let pat = parse_pattern(text)?;
    let f = compute(engine, &pat, mode, method)?;
    let s = f.series(terms)?;
    let parts: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    Ok(Outcome::ok(parts.join(" ") + "\n"))
}

fn oracle_cmd(text: &str, mode: Mode, max_n: usize, also: &[String], format: TableFormat) -> Result<Outcome, CliError> {
    let pat = parse_pattern(text)?;
    let mut spec = match mode {
        Mode::Avoid => ConstraintSpec::avoiding(pat),
        Mode::Once => ConstraintSpec { avoid: Vec::new(), contain: Some((pat, CountMode::Exactly(1))) },
    };
    for a in also {
        spec = spec.and_avoid(parse_pattern(a)?);
    }
    let table = oracle::series(&spec, max_n)?;
    Ok(Outcome::ok(match format {
        TableFormat::Plain => table.to_string() + "\n",
        TableFormat::Json => table.to_json() + "\n",
        TableFormat::Csv => table.to_csv(),
    }))
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("range `{text}` is not of the form a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_orders(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("orders `{text}` are not of the form Nx,Ny"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    engine: &Engine,
    relation: &str,
    range: Option<&str>,
    patterns: &[String],
    terms: usize,
    max_r: usize,
    orders: Option<&str>,
    max: usize,
    verbose: bool,
) -> Outcome {
    let run = || -> Result<Outcome, CliError> {
        let id: RelationId = relation.parse().map_err(CliError::Usage)?;
        let mut params = RelationParams { terms, max_r, max_index: max, ..RelationParams::default() };
        if let Some(r) = range {
            (params.k_min, params.k_max) = parse_range(r)?;
        }
        if let Some(o) = orders {
            params.orders = parse_orders(o)?;
        }
        params.patterns = patterns.iter().map(|p| parse_pattern(p)).collect::<Result<_, _>>()?;
        let report = verify_relation(engine, id, &params)?;
        let mut out = String::new();
        for i in &report.instances {
            if verbose || !i.holds {
                let status = if i.holds { "ok  " } else { "FAIL" };
                out.push_str(&format!("{status} {}", i.label));
                if let Some(d) = &i.detail {
                    out.push_str(&format!(": {d}"));
                }
                out.push('\n');
            }
        }
        out.push_str(&report.summary());
        out.push('\n');
        let code = if report.all_hold() { EXIT_OK } else { EXIT_RELATION_FAILED };
        Ok(Outcome { code, stdout: out, stderr: String::new() })
    };
    run().unwrap_or_else(CliError::into_outcome)
}

fn identities(max: usize) -> Outcome {
    let sweep = sweep_identities(max);
    let mut out = String::new();
    for (part, n, ok) in &sweep.parts {
        out.push_str(&format!("({part}) {ok}/{n}\n"));
    }
    out.push_str(&format!("{}/{} identities hold over 1..{max}\n", sweep.identities_holding(), sweep.parts.len()));
    let code = if sweep.all_hold() { EXIT_OK } else { EXIT_RELATION_FAILED };
    Outcome { code, stdout: out, stderr: String::new() }
}
