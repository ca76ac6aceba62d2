//! Text and LaTeX renderings.
//!
//! Text output is canonical (fixed term and factor order) and reparses to
//! the same value. Factors are written coefficient, g, x, p, hbar.

use moyal_core::metric_pde::DifferentialOperator;
use moyal_core::perturbative_solver::MetricSeries;
use moyal_core::{ExpQuadratic, GaussianRational, PhaseSymbol, Polynomial, Powers};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::parse::{parse_expression, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

/// Negative real, or zero real part with negative imaginary part.
fn leads_negative(c: &GaussianRational) -> bool {
    if c.im().is_zero() {
        c.re().is_negative()
    } else {
        c.re().is_zero() && c.im().is_negative()
    }
}

fn factors(powers: &Powers, style: Style) -> Vec<String> {
    let mut out = Vec::new();
    let mut push = |name: &str, e: i64| match (e, style) {
        (0, _) => {}
        (1, _) => out.push(name.to_string()),
        (e, Style::Text) => out.push(format!("{name}^{e}")),
        (e, Style::Latex) => out.push(format!("{name}^{{{e}}}")),
    };
    let hbar = if style == Style::Text { "hbar" } else { "\\hbar" };
    push("g", i64::from(powers.gdeg));
    push("x", i64::from(powers.xdeg));
    push("p", i64::from(powers.pdeg));
    push(hbar, i64::from(powers.hdeg));
    out
}

fn latex_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_coeff(c: &GaussianRational) -> String {
    let imag = |q: &BigRational| if q.is_one() { "i".to_string() } else { format!("{} i", latex_rational(q)) };
    match (c.re().is_zero(), c.im().is_zero()) {
        (_, true) => latex_rational(c.re()),
        (true, false) => {
            if c.im().is_negative() {
                format!("-{}", imag(&-c.im()))
            } else {
                imag(c.im())
            }
        }
        (false, false) => {
            let sign = if c.im().is_negative() { "-" } else { "+" };
            format!("\\left({} {sign} {}\\right)", latex_rational(c.re()), imag(&c.im().abs()))
        }
    }
}

/// One monomial with a non-negative leading sign.
fn monomial(c: &GaussianRational, powers: &Powers, style: Style) -> String {
    let vars = factors(powers, style);
    let coeff = match style {
        Style::Text => c.to_string(),
        Style::Latex => latex_coeff(c),
    };
    if vars.is_empty() {
        return coeff;
    }
    let sep = if style == Style::Text { "*" } else { " " };
    let body = vars.join(sep);
    if c.is_one() {
        body
    } else {
        format!("{coeff}{sep}{body}")
    }
}

fn polynomial(poly: &Polynomial, style: Style) -> String {
    let mut out = String::new();
    for (k, (powers, c)) in poly.terms().enumerate() {
        let negative = leads_negative(c);
        let magnitude = if negative { -c.clone() } else { c.clone() };
        let term = monomial(&magnitude, powers, style);
        match (k, negative) {
            (0, false) => out.push_str(&term),
            (0, true) => out.push_str(&format!("-{term}")),
            (_, false) => out.push_str(&format!(" + {term}")),
            (_, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn exponential_part(e: &ExpQuadratic, poly: &Polynomial, style: Style) -> String {
    let body = polynomial(&poly.clone(), style);
    if e.is_trivial() {
        return body;
    }
    let exponent = render(&e.exponent(), style);
    let unit = poly.len() == 1 && poly.coeff(&Powers::ONE).is_one();
    match (style, unit) {
        (Style::Text, true) => format!("exp({exponent})"),
        (Style::Text, false) => format!("({body})*exp({exponent})"),
        (Style::Latex, true) => format!("e^{{{exponent}}}"),
        (Style::Latex, false) => format!("\\left({body}\\right) e^{{{exponent}}}"),
    }
}

fn render(sym: &PhaseSymbol, style: Style) -> String {
    if sym.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = sym.parts().map(|(e, poly)| exponential_part(e, poly, style)).collect();
    parts.join(" + ")
}

/// Canonical text; parses back to `sym`.
pub fn symbol_text(sym: &PhaseSymbol) -> String {
    render(sym, Style::Text)
}

pub fn symbol_latex(sym: &PhaseSymbol) -> String {
    render(sym, Style::Latex)
}

/// `max_order: N` followed by one `g^n: <symbol>` line per nonzero order.
pub fn series_text(series: &MetricSeries) -> String {
    let mut out = format!("max_order: {}", series.max_order());
    for (n, s) in series.nonzero_orders() {
        out.push_str(&format!("\ng^{n}: {}", symbol_text(s)));
    }
    out
}

pub fn series_latex(series: &MetricSeries) -> String {
    let rows: Vec<String> =
        series.nonzero_orders().map(|(n, s)| format!("g^{{{n}}}\\left({}\\right)", symbol_latex(s))).collect();
    if rows.is_empty() {
        "0".to_string()
    } else {
        rows.join(" + ")
    }
}

/// One `d(m,n): <coefficient>` line per term `c ∂ₓᵐ∂ₚⁿ`.
pub fn operator_text(op: &DifferentialOperator) -> String {
    if op.is_empty() {
        return "0".to_string();
    }
    let lines: Vec<String> = op.terms().map(|((dx, dp), c)| format!("d({dx},{dp}): {}", symbol_text(c))).collect();
    lines.join("\n")
}

pub fn operator_latex(op: &DifferentialOperator) -> String {
    if op.is_empty() {
        return "0".to_string();
    }
    let derivative = |var: &str, k: u32| match k {
        0 => String::new(),
        1 => format!(" \\partial_{var}"),
        k => format!(" \\partial_{var}^{{{k}}}"),
    };
    let terms: Vec<String> = op
        .terms()
        .map(|((dx, dp), c)| format!("\\left({}\\right){}{}", symbol_latex(c), derivative("x", *dx), derivative("p", *dp)))
        .collect();
    terms.join(" + ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Expression { line: usize, source: ParseError },
}

/// Inverse of [`series_text`].
pub fn parse_series_text(text: &str) -> Result<MetricSeries, TextError> {
    let mut lines = text.lines().enumerate();
    let malformed = |line: usize, message: &str| TextError::Malformed { line: line + 1, message: message.to_string() };
    let (_, header) = lines.next().ok_or_else(|| malformed(0, "empty input"))?;
    let max_order: u32 = header
        .strip_prefix("max_order:")
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| malformed(0, "expected 'max_order: N'"))?;
    let mut slices = Vec::new();
    for (k, line) in lines {
        let (head, body) = line.split_once(':').ok_or_else(|| malformed(k, "expected 'g^n: symbol'"))?;
        let n: u32 = head.trim().strip_prefix("g^").and_then(|n| n.parse().ok()).ok_or_else(|| malformed(k, "bad order"))?;
        let sym = parse_expression(body.trim()).map_err(|source| TextError::Expression { line: k + 1, source })?;
        slices.push((n, sym));
    }
    MetricSeries::from_orders(max_order, slices).ok_or_else(|| malformed(0, "order out of range or g-dependent slice"))
}

/// Inverse of [`operator_text`].
pub fn parse_operator_text(text: &str) -> Result<DifferentialOperator, TextError> {
    if text.trim() == "0" {
        return Ok(DifferentialOperator::zero());
    }
    let mut terms = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let malformed = || TextError::Malformed { line: k + 1, message: "expected 'd(m,n): symbol'".to_string() };
        let (head, body) = line.split_once(':').ok_or_else(malformed)?;
        let inner = head.trim().strip_prefix("d(").and_then(|s| s.strip_suffix(')')).ok_or_else(malformed)?;
        let (dx, dp) = inner.split_once(',').ok_or_else(malformed)?;
        let dx: u32 = dx.trim().parse().map_err(|_| malformed())?;
        let dp: u32 = dp.trim().parse().map_err(|_| malformed())?;
        let sym = parse_expression(body.trim()).map_err(|source| TextError::Expression { line: k + 1, source })?;
        terms.push(((dx, dp), sym));
    }
    Ok(DifferentialOperator::from_terms(terms))
}
