//! Star-logarithm and star-exponential of graded metric series.
//!
//! With `Θ = 1 + A`, `A = Σ_{n≥1} gⁿ Θₙ`, the logarithm is
//! `Σ_{m≥1} (−1)^{m+1} A^{⋆m} / m`, truncated by g-grade. Positivity of Θ
//! is evidenced by the hermiticity of every g-slice of `log Θ`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::perturbative_solver::MetricSeries;
use crate::phase_space_algebra::{is_hermitian, star, ExpQuadratic, GaussianRational, PhaseSymbol};

/// Per-order hermiticity of `log Θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub per_order_hermitian: BTreeMap<u32, bool>,
    pub log_series: MetricSeries,
    pub verdict: bool,
}

/// Graded star product, truncated at the smaller of the two `max_order`s.
pub fn star_series(a: &MetricSeries, b: &MetricSeries) -> Result<MetricSeries> {
    let n_max = a.max_order().min(b.max_order());
    let mut out = MetricSeries::zero(n_max);
    for (i, ai) in a.nonzero_orders() {
        for (j, bj) in b.nonzero_orders() {
            if i + j > n_max {
                continue;
            }
            let term = &out.order(i + j) + &star(ai, bj)?;
            out.set(i + j, term);
        }
    }
    Ok(out)
}

fn scaled(series: &MetricSeries, c: &GaussianRational) -> MetricSeries {
    let mut out = MetricSeries::zero(series.max_order());
    for (n, s) in series.nonzero_orders() {
        out.set(n, s.scale(c));
    }
    out
}

fn accumulate(acc: &mut MetricSeries, term: &MetricSeries) {
    for (n, s) in term.nonzero_orders() {
        let merged = &acc.order(n) + s;
        acc.set(n, merged);
    }
}

/// `log⋆(Θ)` through `max_order`. Requires `orders[0] = 1`.
pub fn star_log(series: &MetricSeries) -> Result<MetricSeries> {
    if series.order(0) != PhaseSymbol::one() {
        return Err(Error::NotUnitLeading);
    }
    let n_max = series.max_order();
    let mut a = series.clone();
    a.set(0, PhaseSymbol::zero());

    let mut out = MetricSeries::zero(n_max);
    let mut power = a.clone();
    for m in 1..=n_max {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        accumulate(&mut out, &scaled(&power, &GaussianRational::ratio(sign, i64::from(m))));
        if m < n_max {
            power = star_series(&power, &a)?;
        }
    }
    Ok(out)
}

/// `exp⋆(η) = Σ η^{⋆m}/m!` through `max_order`. Requires `orders[0] = 0`.
pub fn star_exp(series: &MetricSeries) -> Result<MetricSeries> {
    if !series.order(0).is_zero() {
        return Err(Error::NonzeroLeading);
    }
    let n_max = series.max_order();
    let mut out = MetricSeries::unit(n_max);
    let mut power = series.clone();
    let mut factorial = GaussianRational::one();
    for m in 1..=n_max {
        factorial = &factorial * &GaussianRational::from_integer(i64::from(m));
        accumulate(&mut out, &scaled(&power, &factorial.inv().expect("nonzero")));
        if m < n_max {
            power = star_series(&power, series)?;
        }
    }
    Ok(out)
}

/// Hermiticity of each g-slice `1..=max_order` of `star_log(series)`.
pub fn positivity_evidence(series: &MetricSeries) -> Result<PositivityReport> {
    let log_series = star_log(series)?;
    let mut per_order_hermitian = BTreeMap::new();
    for n in 1..=series.max_order() {
        per_order_hermitian.insert(n, is_hermitian(&log_series.order(n))?);
    }
    let verdict = per_order_hermitian.values().all(|&h| h);
    Ok(PositivityReport { per_order_hermitian, log_series, verdict })
}

/// Logarithm of a Gaussian metric `exp(E)` whose exponent depends on p only
/// or on x only. Star powers of such an exponent are ordinary powers, so the
/// star-logarithm is just `E`. `None` for mixed exponents.
pub fn commutative_log(e: &ExpQuadratic) -> Option<PhaseSymbol> {
    (e.is_x_free() || e.is_p_free()).then(|| e.exponent())
}
