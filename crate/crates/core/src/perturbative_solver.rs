//! Order-by-order solution of the metric equation for `H = p² + g·V(x)`.
//!
//! Splitting `L = L₀ + g L₁` with the kinetic part `L₀ = −2iħp∂ₓ + ħ²∂ₓ²`,
//! the gⁿ coefficient of `L[Σ gⁿ Θₙ] = 0` reads `L₀Θₙ = −L₁Θₙ₋₁`. Each step
//! is solved by the unique polynomial in x with vanishing x-constant term;
//! both homogeneous solutions of `L₀` (functions of p alone and the
//! `e^{2ipx/ħ}` branch) are dropped at every order `n ≥ 1`, and `Θ₀ = 1`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::metric_pde::derive_metric_operator;
use crate::phase_space_algebra::{GaussianRational, PhaseSymbol, Powers};

/// A truncated power series in g with g-free phase-space symbol coefficients.
///
/// Used both for metrics (`orders[0] = 1`) and for their logarithms
/// (`orders[0] = 0`). Zero orders are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSeries {
    orders: BTreeMap<u32, PhaseSymbol>,
    max_order: u32,
}

impl MetricSeries {
    pub fn zero(max_order: u32) -> Self {
        Self { orders: BTreeMap::new(), max_order }
    }

    pub fn unit(max_order: u32) -> Self {
        let mut s = Self::zero(max_order);
        s.set(0, PhaseSymbol::one());
        s
    }

    /// Build from `(order, slice)` pairs; slices must be g-free and orders
    /// must not exceed `max_order`.
    pub fn from_orders<I: IntoIterator<Item = (u32, PhaseSymbol)>>(max_order: u32, orders: I) -> Option<Self> {
        let mut s = Self::zero(max_order);
        for (n, sym) in orders {
            if n > max_order || sym.max_gdeg().is_some_and(|d| d > 0) {
                return None;
            }
            let merged = &s.order(n) + &sym;
            s.set(n, merged);
        }
        Some(s)
    }

    /// Re-slice a symbol by g-degree, keeping orders `0..=max_order`.
    pub fn from_symbol(sym: &PhaseSymbol, max_order: u32) -> Self {
        let mut s = Self::zero(max_order);
        for n in 0..=max_order {
            s.set(n, sym.g_slice(n));
        }
        s
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// The gⁿ coefficient (zero if absent or beyond `max_order`).
    pub fn order(&self, n: u32) -> PhaseSymbol {
        self.orders.get(&n).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, n: u32, sym: PhaseSymbol) {
        assert!(n <= self.max_order, "order {n} beyond truncation {}", self.max_order);
        if sym.is_zero() {
            self.orders.remove(&n);
        } else {
            self.orders.insert(n, sym);
        }
    }

    /// Nonzero orders in ascending order.
    pub fn nonzero_orders(&self) -> impl Iterator<Item = (u32, &PhaseSymbol)> {
        self.orders.iter().map(|(n, s)| (*n, s))
    }

    /// `Σₙ gⁿ·orders[n]`.
    pub fn assemble(&self) -> PhaseSymbol {
        let mut out = PhaseSymbol::zero();
        for (n, sym) in &self.orders {
            out += &sym.mul_monomial(&GaussianRational::one(), Powers::new(0, 0, 0, *n));
        }
        out
    }
}

pub fn assemble(series: &MetricSeries) -> PhaseSymbol {
    series.assemble()
}

/// Solve `−2iħp Θ′ + ħ² Θ″ = R` for the polynomial Θ with no x⁰ term.
///
/// With `R = Σ Rⱼ xʲ` of degree J, `Θ = Σ_{j=1}^{J+1} cⱼ xʲ` where, for j
/// descending from J to 0,
/// `c_{j+1} = (ħ²(j+2)(j+1) c_{j+2} − Rⱼ) / (2iħp(j+1))`, `c_{J+2} = 0`.
pub fn solve_kinetic_ode(source: &PhaseSymbol) -> Result<PhaseSymbol> {
    if !source.is_polynomial() {
        return Err(Error::ExponentialSource);
    }
    let Some(top) = source.max_xdeg() else {
        return Ok(PhaseSymbol::zero());
    };
    let by_xdeg = split_by_xdeg(source, top);

    let hbar2 = Powers::new(0, 0, 2, 0);
    let inv_hp = Powers::new(0, -1, -1, 0);
    let two_i = GaussianRational::from_parts(0, 1, 2, 1);
    let mut coeffs: Vec<PhaseSymbol> = vec![PhaseSymbol::zero(); top as usize + 3];
    for j in (0..=top as usize).rev() {
        let jj = j as i64;
        let lifted = coeffs[j + 2].mul_monomial(&GaussianRational::from_integer((jj + 2) * (jj + 1)), hbar2);
        let numer = &lifted - &by_xdeg[j];
        let denom = &two_i * &GaussianRational::from_integer(jj + 1);
        coeffs[j + 1] = numer.mul_monomial(&denom.inv().expect("nonzero"), inv_hp);
    }
    let mut out = PhaseSymbol::zero();
    for (j, c) in coeffs.iter().enumerate().skip(1) {
        out += &c.mul_monomial(&GaussianRational::one(), Powers::new(j as u32, 0, 0, 0));
    }
    Ok(out)
}

/// `[R₀, R₁, …, R_top]`, each `Rⱼ` the x-free coefficient of xʲ.
fn split_by_xdeg(sym: &PhaseSymbol, top: u32) -> Vec<PhaseSymbol> {
    let mut out = vec![PhaseSymbol::zero(); top as usize + 1];
    for (_, m) in sym.monomials() {
        let j = m.powers.xdeg as usize;
        out[j] += &PhaseSymbol::monomial(m.coeff, Powers { xdeg: 0, ..m.powers });
    }
    out
}

/// Perturbative metric for `H = p² + g·V` through order `max_order`.
///
/// `V` must depend on x only (ħ powers and complex coefficients allowed).
pub fn solve_metric_series(potential: &PhaseSymbol, max_order: u32) -> Result<MetricSeries> {
    let x_only = potential.is_polynomial()
        && potential.monomials().all(|(_, m)| m.powers.pdeg == 0 && m.powers.gdeg == 0);
    if !x_only {
        return Err(Error::UnsupportedKinetic);
    }
    let kinetic = PhaseSymbol::monomial(GaussianRational::one(), Powers::new(0, 2, 0, 0));
    let h = &kinetic + &potential.mul_monomial(&GaussianRational::one(), Powers::new(0, 0, 0, 1));
    let l1 = derive_metric_operator(&h)?.g_slice(1);

    let mut series = MetricSeries::unit(max_order);
    let mut prev = PhaseSymbol::one();
    for n in 1..=max_order {
        let source = -l1.apply(&prev);
        let next = solve_kinetic_ode(&source)?;
        series.set(n, next.clone());
        prev = next;
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric_pde::residual;
    use crate::phase_space_algebra::is_hermitian;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    fn i() -> GaussianRational {
        GaussianRational::i()
    }

    fn mono(c: GaussianRational, x: u32, p: i32, h: i32, g: u32) -> PhaseSymbol {
        PhaseSymbol::monomial(c, Powers::new(x, p, h, g))
    }

    fn first_order_cubic() -> PhaseSymbol {
        PhaseSymbol::from_monomials([
            crate::Monomial::new(q(3, 4) * i(), 1, -4, 2, 0),
            crate::Monomial::new(q(-3, 4), 2, -3, 1, 0),
            crate::Monomial::new(q(-1, 2) * i(), 3, -2, 0, 0),
            crate::Monomial::new(q(1, 4), 4, -1, -1, 0),
        ])
    }

    #[test]
    fn kinetic_ode_examples() {
        let r = mono(q(-2, 1) * i(), 3, 0, 0, 0);
        assert_eq!(solve_kinetic_ode(&r).unwrap(), first_order_cubic());
        assert!(solve_kinetic_ode(&PhaseSymbol::zero()).unwrap().is_zero());
        // R = 1: c₁ = −1/(2iħp) = i/(2ħp)
        assert_eq!(solve_kinetic_ode(&PhaseSymbol::one()).unwrap(), mono(q(1, 2) * i(), 1, -1, -1, 0));
    }

    #[test]
    fn kinetic_ode_solution_satisfies_equation() {
        let r = PhaseSymbol::from_monomials([
            crate::Monomial::new(q(5, 3), 0, 2, -1, 0),
            crate::Monomial::new(q(-7, 2) * i(), 2, -3, 0, 0),
            crate::Monomial::new(q(1, 1), 5, 1, 2, 0),
        ]);
        let theta = solve_kinetic_ode(&r).unwrap();
        let l0 = derive_metric_operator(&mono(q(1, 1), 0, 2, 0, 0)).unwrap();
        assert_eq!(l0.apply(&theta), r);
        assert_eq!(theta.max_xdeg(), Some(6));
        assert!(theta.monomials().all(|(_, m)| m.powers.xdeg > 0));
    }

    #[test]
    fn first_order_cubic_metric() {
        let s = solve_metric_series(&mono(i(), 3, 0, 0, 0), 1).unwrap();
        assert_eq!(s.order(0), PhaseSymbol::one());
        assert_eq!(s.order(1), first_order_cubic());
    }

    #[test]
    fn hermitian_potential_gives_trivial_series() {
        let s = solve_metric_series(&PhaseSymbol::zero(), 4).unwrap();
        assert_eq!(s, MetricSeries::unit(4));
        // a real potential is hermitian too: L₁[1] = V − V* = 0
        let s = solve_metric_series(&mono(q(3, 1), 4, 0, 0, 0), 3).unwrap();
        assert_eq!(s, MetricSeries::unit(3));
    }

    #[test]
    fn rejects_non_potential_input() {
        assert_eq!(solve_metric_series(&PhaseSymbol::p(), 2), Err(Error::UnsupportedKinetic));
        assert_eq!(solve_metric_series(&PhaseSymbol::g(), 2), Err(Error::UnsupportedKinetic));
    }

    #[test]
    fn linear_potential_series() {
        let v = mono(i(), 1, 0, 0, 0);
        let s = solve_metric_series(&v, 4).unwrap();
        let h = &mono(q(1, 1), 0, 2, 0, 0) + &mono(i(), 1, 0, 0, 1);
        let res = residual(&h, &s.assemble()).unwrap();
        assert!(res.min_gdeg().is_none_or(|d| d > 4));
        assert!(is_hermitian(&s.assemble()).unwrap());
    }

    #[test]
    fn assemble_round_trip() {
        assert_eq!(MetricSeries::unit(0).assemble(), PhaseSymbol::one());
        let s = MetricSeries::from_orders(1, [(0, PhaseSymbol::one()), (1, first_order_cubic())]).unwrap();
        let sym = s.assemble();
        let expected = &PhaseSymbol::one() + &first_order_cubic().mul_monomial(&q(1, 1), Powers::new(0, 0, 0, 1));
        assert_eq!(sym, expected);
        assert_eq!(MetricSeries::from_symbol(&sym, 1), s);
        assert!(MetricSeries::from_orders(1, [(2, PhaseSymbol::one())]).is_none());
        assert!(MetricSeries::from_orders(1, [(1, PhaseSymbol::g())]).is_none());
    }
}
