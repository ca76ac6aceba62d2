//! Argument parsing, dispatch and output.
//!
//! Exit codes: 0 on success, 1 on domain errors reported by the library,
//! 2 on usage, parse and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moyal_core::finite_weyl::{self, FiniteOperator, IsomorphismReport};
use moyal_core::metric_pde::{
    derive_metric_operator, gaussian_metric_candidates, residual, swanson_from_ladder, DifferentialOperator,
    SwansonParams,
};
use moyal_core::perturbative_solver::{solve_metric_series, MetricSeries};
use moyal_core::star_log::{positivity_evidence, star_log, PositivityReport};
use moyal_core::{dagger, is_hermitian, star, ExpQuadratic, PhaseSymbol};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::format;
use crate::json as codec;
use crate::parse::{as_hbar_scalar, as_real_constant, parse_expression, ParseError};

#[derive(Parser, Debug)]
#[command(name = "moyal", version, about = "Moyal-product calculus for metric operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Args, Debug)]
struct Io {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// JSON documents filling inputs not given as expressions, in order.
    #[arg(long = "from-json", value_name = "PATH")]
    from_json: Vec<PathBuf>,
}

#[derive(Args, Debug)]
struct SeriesInput {
    #[arg(long)]
    potential: Option<String>,
    #[arg(long)]
    order: Option<u32>,
}

#[derive(Args, Debug)]
struct SwansonArgs {
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moyal product LEFT ⋆ RIGHT.
    Star {
        #[arg(long, allow_hyphen_values = true)]
        left: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        right: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Symbol of the hermitian conjugate.
    Dagger {
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Complex conjugate of the symbol.
    Conj {
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Whether the symbol satisfies the hermiticity criterion.
    IsHermitian {
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Metric operator L of the Hamiltonian EXPR.
    DerivePde {
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Apply L (from --expr, or an operator document) to THETA.
    ApplyPde {
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// H⋆Θ − Θ⋆H† for the Hamiltonian EXPR.
    Residual {
        #[arg(long, allow_hyphen_values = true)]
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Perturbative metric for H = p^2 + g*POTENTIAL.
    SolveMetric {
        #[arg(long, allow_hyphen_values = true)]
        potential: String,
        #[arg(long)]
        order: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Star-logarithm of a metric series.
    LogMetric {
        #[command(flatten)]
        series: SeriesInput,
        #[command(flatten)]
        io: Io,
    },
    /// Hermiticity of each order of the metric's star-logarithm.
    Positivity {
        #[command(flatten)]
        series: SeriesInput,
        #[command(flatten)]
        io: Io,
    },
    /// Swanson Hamiltonian, its conjugate and its metric operator.
    Swanson {
        #[command(flatten)]
        params: SwansonArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact Gaussian metrics exp(r p^2 + s p x + t x^2) of the Swanson model.
    GaussianCandidates {
        #[command(flatten)]
        params: SwansonArgs,
        /// Free parameter s, a Laurent polynomial in hbar.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        s: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Clock and shift matrices and the symbol/matrix isomorphism checks.
    FiniteDemo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("--{flag}: {source}")]
    Parse { flag: String, text: String, source: ParseError },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(#[from] moyal_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn parse_flag(flag: &str, text: &str) -> Result<PhaseSymbol> {
    parse_expression(text).map_err(|source| CliError::Parse {
        flag: flag.to_string(),
        text: text.to_string(),
        source,
    })
}

/// Hands out `--from-json` documents to inputs not given on the command line.
struct JsonQueue {
    files: std::vec::IntoIter<PathBuf>,
}

impl JsonQueue {
    fn new(files: Vec<PathBuf>) -> Self {
        Self { files: files.into_iter() }
    }

    fn next(&mut self, flag: &str) -> Result<Value> {
        let path = self
            .files
            .next()
            .ok_or_else(|| CliError::Usage(format!("missing --{flag} (or a --from-json document for it)")))?;
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn finish(mut self) -> Result<()> {
        match self.files.next() {
            Some(extra) => Err(CliError::Usage(format!("unused --from-json document {}", extra.display()))),
            None => Ok(()),
        }
    }
}

fn json_input(e: codec::JsonError) -> CliError {
    CliError::Input(e.to_string())
}

/// A symbol from an expression, or from a symbol or series document.
fn symbol_input(flag: &str, text: &Option<String>, queue: &mut JsonQueue) -> Result<PhaseSymbol> {
    if let Some(text) = text {
        return parse_flag(flag, text);
    }
    let doc = queue.next(flag)?;
    if doc.get("max_order").is_some() {
        Ok(codec::series_from_json(&doc).map_err(json_input)?.assemble())
    } else {
        codec::symbol_from_json(&doc).map_err(json_input)
    }
}

fn series_input(input: &SeriesInput, queue: &mut JsonQueue) -> Result<MetricSeries> {
    match (&input.potential, input.order) {
        (Some(v), Some(n)) => Ok(solve_metric_series(&parse_flag("potential", v)?, n)?),
        (Some(_), None) => Err(CliError::Usage("--potential requires --order".to_string())),
        (None, _) => {
            let doc = queue.next("potential")?;
            let series = codec::series_from_json(&doc).map_err(json_input)?;
            Ok(match input.order {
                Some(n) if n < series.max_order() => truncate(&series, n),
                _ => series,
            })
        }
    }
}

fn truncate(series: &MetricSeries, n: u32) -> MetricSeries {
    MetricSeries::from_orders(n, series.nonzero_orders().filter(|(k, _)| *k <= n).map(|(k, s)| (k, s.clone())))
        .expect("orders within range")
}

fn rational_flag(flag: &str, text: &str) -> Result<BigRational> {
    as_real_constant(&parse_flag(flag, text)?)
        .ok_or_else(|| CliError::Usage(format!("--{flag} must be a real rational number")))
}

fn swanson_params(args: &SwansonArgs) -> Result<SwansonParams> {
    let all = |vals: [&Option<String>; 3]| vals.iter().all(|v| v.is_some());
    let any = |vals: [&Option<String>; 3]| vals.iter().any(|v| v.is_some());
    let direct = [&args.a, &args.b, &args.c];
    let ladder = [&args.omega, &args.alpha, &args.beta];
    match (any(direct), any(ladder)) {
        (true, false) if all(direct) => Ok(SwansonParams::new(
            rational_flag("a", args.a.as_deref().expect("checked"))?,
            rational_flag("b", args.b.as_deref().expect("checked"))?,
            rational_flag("c", args.c.as_deref().expect("checked"))?,
        )),
        (false, true) if all(ladder) => Ok(swanson_from_ladder(
            &rational_flag("omega", args.omega.as_deref().expect("checked"))?,
            &rational_flag("alpha", args.alpha.as_deref().expect("checked"))?,
            &rational_flag("beta", args.beta.as_deref().expect("checked"))?,
        )),
        _ => Err(CliError::Usage("give either --a, --b, --c or --omega, --alpha, --beta".to_string())),
    }
}

#[allow(clippy::large_enum_variant)]
enum Output {
    Symbol(PhaseSymbol),
    Series(MetricSeries),
    Operator(DifferentialOperator),
    Bool(bool),
    Positivity(PositivityReport),
    Swanson { params: SwansonParams, hamiltonian: PhaseSymbol, dagger: PhaseSymbol, operator: DifferentialOperator },
    Candidates(Vec<ExpQuadratic>),
    Finite { clock: FiniteOperator, shift: FiniteOperator, report: IsomorphismReport, seed: u64 },
}

fn complex_text(z: &Complex64) -> String {
    // adding 0.0 turns −0.0 into 0.0
    format!("{:.6}{:+.6}i", z.re + 0.0, z.im + 0.0)
}

fn matrix_json(m: &FiniteOperator) -> Value {
    Value::Array(m.rows().map(|row| row.iter().map(|z| json!([z.re + 0.0, z.im + 0.0])).collect()).collect())
}

fn matrix_text(m: &FiniteOperator) -> String {
    let rows: Vec<String> =
        m.rows().map(|row| format!("  {}", row.iter().map(complex_text).collect::<Vec<_>>().join("  "))).collect();
    rows.join("\n")
}

fn matrix_latex(m: &FiniteOperator) -> String {
    let rows: Vec<String> = m.rows().map(|row| row.iter().map(complex_text).collect::<Vec<_>>().join(" & ")).collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

impl Output {
    fn render(&self, style: Format) -> String {
        match (self, style) {
            (Output::Symbol(s), Format::Text) => format::symbol_text(s),
            (Output::Symbol(s), Format::Latex) => format::symbol_latex(s),
            (Output::Symbol(s), Format::Json) => pretty(&codec::symbol_to_json(s)),
            (Output::Series(s), Format::Text) => format::series_text(s),
            (Output::Series(s), Format::Latex) => format::series_latex(s),
            (Output::Series(s), Format::Json) => pretty(&codec::series_to_json(s)),
            (Output::Operator(op), Format::Text) => format::operator_text(op),
            (Output::Operator(op), Format::Latex) => format::operator_latex(op),
            (Output::Operator(op), Format::Json) => pretty(&codec::operator_to_json(op)),
            (Output::Bool(b), Format::Json) => pretty(&json!(b)),
            (Output::Bool(b), _) => b.to_string(),
            (Output::Positivity(r), Format::Json) => {
                let orders: Vec<Value> =
                    r.per_order_hermitian.iter().map(|(n, h)| json!({"g": n, "hermitian": h})).collect();
                pretty(&json!({
                    "verdict": r.verdict,
                    "per_order_hermitian": orders,
                    "log": codec::series_to_json(&r.log_series),
                }))
            }
            (Output::Positivity(r), _) => {
                let mut out = format!("verdict: {}", r.verdict);
                for (n, h) in &r.per_order_hermitian {
                    out.push_str(&format!("\ng^{n}: {}", if *h { "hermitian" } else { "not hermitian" }));
                }
                let log = if style == Format::Latex {
                    format::series_latex(&r.log_series)
                } else {
                    format::series_text(&r.log_series)
                };
                format!("{out}\nlog:\n{log}")
            }
            (Output::Swanson { params, hamiltonian, dagger, operator }, Format::Json) => pretty(&json!({
                "a": codec::coeff_to_json(params.a()),
                "b": codec::coeff_to_json(params.b()),
                "c": codec::coeff_to_json(params.c()),
                "hamiltonian": codec::symbol_to_json(hamiltonian),
                "dagger": codec::symbol_to_json(dagger),
                "operator": codec::operator_to_json(operator),
            })),
            (Output::Swanson { params, hamiltonian, dagger, operator }, Format::Text) => format!(
                "a: {}\nb: {}\nc: {}\nH: {}\nH_dagger: {}\nL:\n{}",
                params.a(),
                params.b(),
                params.c(),
                format::symbol_text(hamiltonian),
                format::symbol_text(dagger),
                format::operator_text(operator)
            ),
            (Output::Swanson { hamiltonian, dagger, operator, .. }, Format::Latex) => format!(
                "H = {} \\\\\nH^\\dagger = {} \\\\\nL = {}",
                format::symbol_latex(hamiltonian),
                format::symbol_latex(dagger),
                format::operator_latex(operator)
            ),
            (Output::Candidates(cands), style) => {
                let syms: Vec<PhaseSymbol> = cands.iter().map(|e| PhaseSymbol::exp(e.clone())).collect();
                match style {
                    Format::Json => pretty(&json!({"candidates": syms.iter().map(codec::symbol_to_json).collect::<Vec<_>>()})),
                    Format::Text => syms.iter().map(format::symbol_text).collect::<Vec<_>>().join("\n"),
                    Format::Latex => syms.iter().map(format::symbol_latex).collect::<Vec<_>>().join(" \\\\\n"),
                }
            }
            (Output::Finite { clock, shift, report, seed }, Format::Json) => {
                let checks: Vec<Value> =
                    report.checks().iter().map(|(name, dev)| json!({"name": name, "max_deviation": dev})).collect();
                pretty(&json!({
                    "n": report.dim,
                    "pairs": report.pairs,
                    "seed": seed,
                    "tolerance": finite_weyl::TOLERANCE,
                    "clock": matrix_json(clock),
                    "shift": matrix_json(shift),
                    "checks": checks,
                    "passed": report.passes(finite_weyl::TOLERANCE),
                }))
            }
            (Output::Finite { clock, shift, report, seed }, style) => {
                let (g, h) = if style == Format::Latex {
                    (format!("g = {}", matrix_latex(clock)), format!("h = {}", matrix_latex(shift)))
                } else {
                    (format!("clock g:\n{}", matrix_text(clock)), format!("shift h:\n{}", matrix_text(shift)))
                };
                let mut out = format!("N = {}, phi = 2*pi/{}\n{g}\n{h}\n", report.dim, report.dim);
                out.push_str(&format!(
                    "checks over {} random pairs (seed {seed}), tolerance {:e}:\n",
                    report.pairs,
                    finite_weyl::TOLERANCE
                ));
                for (name, dev) in report.checks() {
                    out.push_str(&format!("  {name}: {dev:.3e}\n"));
                }
                out.push_str(&format!("all within tolerance: {}", report.passes(finite_weyl::TOLERANCE)));
                out
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn execute(command: Command) -> Result<(Output, Format)> {
    Ok(match command {
        Command::Star { left, right, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let a = symbol_input("left", &left, &mut q)?;
            let b = symbol_input("right", &right, &mut q)?;
            q.finish()?;
            (Output::Symbol(star(&a, &b)?), io.format)
        }
        Command::Dagger { expr, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let a = symbol_input("expr", &expr, &mut q)?;
            q.finish()?;
            (Output::Symbol(dagger(&a)?), io.format)
        }
        Command::Conj { expr, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let a = symbol_input("expr", &expr, &mut q)?;
            q.finish()?;
            (Output::Symbol(a.conj()), io.format)
        }
        Command::IsHermitian { expr, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let a = symbol_input("expr", &expr, &mut q)?;
            q.finish()?;
            (Output::Bool(is_hermitian(&a)?), io.format)
        }
        Command::DerivePde { expr, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let h = symbol_input("expr", &expr, &mut q)?;
            q.finish()?;
            (Output::Operator(derive_metric_operator(&h)?), io.format)
        }
        Command::ApplyPde { expr, theta, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let op = match &expr {
                Some(text) => derive_metric_operator(&parse_flag("expr", text)?)?,
                None => codec::operator_from_json(&q.next("expr")?).map_err(json_input)?,
            };
            let f = symbol_input("theta", &theta, &mut q)?;
            q.finish()?;
            (Output::Symbol(op.apply(&f)), io.format)
        }
        Command::Residual { expr, theta, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let h = symbol_input("expr", &expr, &mut q)?;
            let f = symbol_input("theta", &theta, &mut q)?;
            q.finish()?;
            (Output::Symbol(residual(&h, &f)?), io.format)
        }
        Command::SolveMetric { potential, order, format } => {
            let v = parse_flag("potential", &potential)?;
            (Output::Series(solve_metric_series(&v, order)?), format)
        }
        Command::LogMetric { series, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let s = series_input(&series, &mut q)?;
            q.finish()?;
            (Output::Series(star_log(&s)?), io.format)
        }
        Command::Positivity { series, io } => {
            let mut q = JsonQueue::new(io.from_json);
            let s = series_input(&series, &mut q)?;
            q.finish()?;
            (Output::Positivity(positivity_evidence(&s)?), io.format)
        }
        Command::Swanson { params, format } => {
            let params = swanson_params(&params)?;
            let hamiltonian = params.hamiltonian();
            let dagger = dagger(&hamiltonian)?;
            let operator = derive_metric_operator(&hamiltonian)?;
            (Output::Swanson { params, hamiltonian, dagger, operator }, format)
        }
        Command::GaussianCandidates { params, s, format } => {
            let params = swanson_params(&params)?;
            let s = as_hbar_scalar(&parse_flag("s", &s)?)
                .ok_or_else(|| CliError::Usage("--s must be a Laurent polynomial in hbar".to_string()))?;
            (Output::Candidates(gaussian_metric_candidates(&params, &s)?), format)
        }
        Command::FiniteDemo { n, pairs, seed, format } => {
            let clock = finite_weyl::clock(n)?;
            let shift = finite_weyl::shift(n)?;
            let report = finite_weyl::isomorphism_suite(n, pairs, seed)?;
            (Output::Finite { clock, shift, report, seed }, format)
        }
    })
}

fn report_error(e: &CliError, err: &mut dyn Write) {
    let _ = writeln!(err, "error: {e}");
    if let CliError::Parse { text, source, .. } = e {
        let _ = writeln!(err, "  {text}");
        let _ = writeln!(err, "  {}^", " ".repeat(source.offset()));
    }
}

/// Run one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok((output, style)) => {
            let _ = writeln!(out, "{}", output.render(style));
            match output {
                Output::Finite { report, .. } if !report.passes(finite_weyl::TOLERANCE) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            report_error(&e, err);
            e.exit_code()
        }
    }
}
