//! Lossless JSON encoding.
//!
//! A coefficient is `[reN, reD, imN, imD]` with integers as decimal strings.
//! An ħ-Laurent scalar is a list of `[hdeg, reN, reD, imN, imD]`, where the
//! degree is a JSON integer (a decimal string is also accepted on input).
//! A symbol is
//! `{"terms":[{"exp":{"r":…,"s":…,"t":…},"poly":[{"coeff":…,"x":a,"p":b,"hbar":c,"g":d}]}]}`.

use moyal_core::metric_pde::DifferentialOperator;
use moyal_core::perturbative_solver::MetricSeries;
use moyal_core::{ExpQuadratic, GaussianRational, HbarScalar, PhaseSymbol, Polynomial, Powers};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid JSON document at {path}: {message}")]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

fn err(path: &str, message: impl Into<String>) -> JsonError {
    JsonError { path: path.to_string(), message: message.into() }
}

fn int_string(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn coeff_to_json(c: &GaussianRational) -> Value {
    json!([int_string(c.re().numer()), int_string(c.re().denom()), int_string(c.im().numer()), int_string(c.im().denom())])
}

fn big_int(v: &Value, path: &str) -> Result<BigInt, JsonError> {
    match v {
        Value::String(s) => s.parse().map_err(|_| err(path, format!("'{s}' is not an integer"))),
        Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().expect("checked"))),
        _ => Err(err(path, "expected an integer string")),
    }
}

fn small_int<T: TryFrom<i64>>(v: &Value, path: &str) -> Result<T, JsonError> {
    let n = match v {
        Value::Number(n) => n.as_i64(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    };
    n.and_then(|n| T::try_from(n).ok()).ok_or_else(|| err(path, "expected a small integer"))
}

fn rational(num: &Value, den: &Value, path: &str) -> Result<BigRational, JsonError> {
    let d = big_int(den, path)?;
    if d.is_zero() {
        return Err(err(path, "zero denominator"));
    }
    Ok(BigRational::new(big_int(num, path)?, d))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| err(path, format!("missing field '{key}'")))
}

pub fn coeff_from_json(v: &Value, path: &str) -> Result<GaussianRational, JsonError> {
    let a = array(v, path)?;
    if a.len() != 4 {
        return Err(err(path, "coefficient needs four entries"));
    }
    Ok(GaussianRational::new(rational(&a[0], &a[1], path)?, rational(&a[2], &a[3], path)?))
}

fn scalar_to_json(s: &HbarScalar) -> Value {
    Value::Array(
        s.terms()
            .map(|(k, c)| {
                let Value::Array(mut row) = coeff_to_json(c) else { unreachable!() };
                row.insert(0, json!(k));
                Value::Array(row)
            })
            .collect(),
    )
}

fn scalar_from_json(v: &Value, path: &str) -> Result<HbarScalar, JsonError> {
    let mut terms = Vec::new();
    for (k, row) in array(v, path)?.iter().enumerate() {
        let path = format!("{path}[{k}]");
        let entries = array(row, &path)?;
        if entries.len() != 5 {
            return Err(err(&path, "scalar term needs five entries"));
        }
        let degree: i32 = small_int(&entries[0], &path)?;
        terms.push((degree, coeff_from_json(&Value::Array(entries[1..].to_vec()), &path)?));
    }
    Ok(HbarScalar::from_terms(terms))
}

pub fn exp_to_json(e: &ExpQuadratic) -> Value {
    json!({"r": scalar_to_json(&e.r), "s": scalar_to_json(&e.s), "t": scalar_to_json(&e.t)})
}

fn exp_from_json(v: &Value, path: &str) -> Result<ExpQuadratic, JsonError> {
    Ok(ExpQuadratic::new(
        scalar_from_json(field(v, "r", path)?, &format!("{path}.r"))?,
        scalar_from_json(field(v, "s", path)?, &format!("{path}.s"))?,
        scalar_from_json(field(v, "t", path)?, &format!("{path}.t"))?,
    ))
}

pub fn symbol_to_json(sym: &PhaseSymbol) -> Value {
    let terms: Vec<Value> = sym
        .parts()
        .map(|(e, poly)| {
            let rows: Vec<Value> = poly
                .terms()
                .map(|(k, c)| json!({"coeff": coeff_to_json(c), "x": k.xdeg, "p": k.pdeg, "hbar": k.hdeg, "g": k.gdeg}))
                .collect();
            json!({"exp": exp_to_json(e), "poly": rows})
        })
        .collect();
    json!({ "terms": terms })
}

pub fn symbol_from_json(v: &Value) -> Result<PhaseSymbol, JsonError> {
    let mut out = PhaseSymbol::zero();
    for (k, term) in array(field(v, "terms", "$")?, "$.terms")?.iter().enumerate() {
        let path = format!("$.terms[{k}]");
        let e = exp_from_json(field(term, "exp", &path)?, &format!("{path}.exp"))?;
        let mut poly = Polynomial::zero();
        for (j, row) in array(field(term, "poly", &path)?, &path)?.iter().enumerate() {
            let path = format!("{path}.poly[{j}]");
            let c = coeff_from_json(field(row, "coeff", &path)?, &path)?;
            let powers = Powers::new(
                small_int(field(row, "x", &path)?, &path)?,
                small_int(field(row, "p", &path)?, &path)?,
                small_int(field(row, "hbar", &path)?, &path)?,
                small_int(field(row, "g", &path)?, &path)?,
            );
            poly.add_term(powers, &c);
        }
        out += &PhaseSymbol::from_part(e, poly);
    }
    Ok(out)
}

pub fn series_to_json(series: &MetricSeries) -> Value {
    let orders: Vec<Value> =
        series.nonzero_orders().map(|(n, s)| json!({"g": n, "symbol": symbol_to_json(s)})).collect();
    json!({"max_order": series.max_order(), "orders": orders})
}

pub fn series_from_json(v: &Value) -> Result<MetricSeries, JsonError> {
    let max_order: u32 = small_int(field(v, "max_order", "$")?, "$.max_order")?;
    let mut slices = Vec::new();
    for (k, row) in array(field(v, "orders", "$")?, "$.orders")?.iter().enumerate() {
        let path = format!("$.orders[{k}]");
        let n: u32 = small_int(field(row, "g", &path)?, &path)?;
        slices.push((n, symbol_from_json(field(row, "symbol", &path)?)?));
    }
    MetricSeries::from_orders(max_order, slices).ok_or_else(|| err("$.orders", "order out of range or g-dependent slice"))
}

pub fn operator_to_json(op: &DifferentialOperator) -> Value {
    let terms: Vec<Value> =
        op.terms().map(|((dx, dp), c)| json!({"dx": dx, "dp": dp, "coeff": symbol_to_json(c)})).collect();
    json!({ "terms": terms })
}

pub fn operator_from_json(v: &Value) -> Result<DifferentialOperator, JsonError> {
    let mut terms = Vec::new();
    for (k, row) in array(field(v, "terms", "$")?, "$.terms")?.iter().enumerate() {
        let path = format!("$.terms[{k}]");
        let dx: u32 = small_int(field(row, "dx", &path)?, &path)?;
        let dp: u32 = small_int(field(row, "dp", &path)?, &path)?;
        terms.push(((dx, dp), symbol_from_json(field(row, "coeff", &path)?)?));
    }
    Ok(DifferentialOperator::from_terms(terms))
}
