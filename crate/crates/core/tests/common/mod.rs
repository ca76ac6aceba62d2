//! Shared builders and random generators for the integration tests.

#![allow(dead_code)]

use moyal_core::{GaussianRational, HbarScalar, Monomial, PhaseSymbol, Powers};
use rand::Rng;

pub fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

/// `i·n/d`.
pub fn iq(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_parts(0, 1, n, d)
}

pub fn mono(c: GaussianRational, x: u32, p: i32, h: i32, g: u32) -> PhaseSymbol {
    PhaseSymbol::monomial(c, Powers::new(x, p, h, g))
}

/// Sum of `c · x^x p^p ħ^h` rows.
pub fn poly(rows: &[(GaussianRational, u32, i32, i32)]) -> PhaseSymbol {
    PhaseSymbol::from_monomials(rows.iter().map(|(c, x, p, h)| Monomial::new(c.clone(), *x, *p, *h, 0)))
}

pub fn hbar_term(c: GaussianRational, k: i32) -> HbarScalar {
    HbarScalar::term(c, k)
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> GaussianRational {
    let re = rng.gen_range(-5..=5);
    let im = rng.gen_range(-5..=5);
    GaussianRational::from_parts(re, rng.gen_range(1..=4), im, rng.gen_range(1..=4))
}

/// A random polynomial symbol with up to `terms` monomials, x-degree at most
/// `max_x` and |p-degree| at most `max_p`.
pub fn random_polynomial<R: Rng>(rng: &mut R, terms: usize, max_x: u32, max_p: i32) -> PhaseSymbol {
    let n = rng.gen_range(1..=terms);
    PhaseSymbol::from_monomials((0..n).map(|_| {
        Monomial::new(
            random_coeff(rng),
            rng.gen_range(0..=max_x),
            rng.gen_range(-max_p..=max_p),
            rng.gen_range(-2..=2),
            rng.gen_range(0..=1),
        )
    }))
}

/// Like [`random_polynomial`] but with non-negative p powers only.
pub fn random_hamiltonian<R: Rng>(rng: &mut R, terms: usize, max_x: u32, max_p: i32) -> PhaseSymbol {
    let n = rng.gen_range(1..=terms);
    PhaseSymbol::from_monomials((0..n).map(|_| {
        Monomial::new(
            random_coeff(rng),
            rng.gen_range(0..=max_x),
            rng.gen_range(0..=max_p),
            rng.gen_range(0..=1),
            rng.gen_range(0..=1),
        )
    }))
}

pub mod strategies {
    use moyal_core::{GaussianRational, Monomial, PhaseSymbol};
    use proptest::prelude::*;

    pub fn coeff() -> impl Strategy<Value = GaussianRational> {
        (-6i64..=6, 1i64..=5, -6i64..=6, 1i64..=5).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
    }

    /// Polynomial symbols with x-degree ≤ `max_x`, |p-degree| ≤ `max_p`,
    /// ħ-degree in −2..=2 and g-degree ≤ 1.
    pub fn polynomial(max_terms: usize, max_x: u32, max_p: i32) -> impl Strategy<Value = PhaseSymbol> {
        prop::collection::vec((coeff(), 0..=max_x, -max_p..=max_p, -2i32..=2, 0u32..=1), 1..=max_terms).prop_map(
            |rows| PhaseSymbol::from_monomials(rows.into_iter().map(|(c, x, p, h, g)| Monomial::new(c, x, p, h, g))),
        )
    }

    /// Hamiltonian-like symbols: non-negative powers of p and ħ.
    pub fn hamiltonian(max_terms: usize, max_x: u32, max_p: i32) -> impl Strategy<Value = PhaseSymbol> {
        prop::collection::vec((coeff(), 0..=max_x, 0..=max_p, 0i32..=1, 0u32..=1), 1..=max_terms).prop_map(|rows| {
            PhaseSymbol::from_monomials(rows.into_iter().map(|(c, x, p, h, g)| Monomial::new(c, x, p, h, g)))
        })
    }
}
