//! The standard-ordered Moyal product and the hermitian-conjugation calculus.
//!
//! Symbols are taken with respect to the operator basis `e^{itp̂} e^{isx̂}`
//! (momenta to the left). In that ordering the operator product becomes
//!
//! ```text
//! A ⋆ B = Σₖ (iħ)ᵏ/k! (∂ₓᵏ A)(∂ₚᵏ B)
//! ```
//!
//! and hermitian conjugation becomes `A† = e^{iħ∂ₓ∂ₚ} A*`. Both series are
//! summed exactly; requests whose series would not terminate are rejected.

use num_traits::One;

use super::number::GaussianRational;
use super::symbol::{ExpQuadratic, PhaseSymbol, Polynomial, Powers, Var};
use crate::error::{Error, Result};

/// Sign of the exponent in `e^{±iħ∂ₓ∂ₚ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistSign {
    Plus,
    Minus,
}

impl TwistSign {
    fn unit(self) -> GaussianRational {
        match self {
            TwistSign::Plus => GaussianRational::i(),
            TwistSign::Minus => -GaussianRational::i(),
        }
    }
}

fn min_pdeg(poly: &Polynomial) -> i32 {
    poly.terms().map(|(k, _)| k.pdeg).min().unwrap_or(0)
}

/// Repeated ∂ₚ of `poly·e^E` eventually vanishes.
fn p_derivatives_vanish(e: &ExpQuadratic, poly: &Polynomial) -> bool {
    e.is_p_free() && min_pdeg(poly) >= 0
}

fn star_terminates(ea: &ExpQuadratic, eb: &ExpQuadratic, pb: &Polynomial) -> bool {
    ea.is_x_free() || p_derivatives_vanish(eb, pb)
}

/// `(unit·ħ)^k / k!` split into a coefficient and a power of ħ.
fn series_weight(unit: &GaussianRational, k: u32) -> (GaussianRational, Powers) {
    let mut c = GaussianRational::one();
    for j in 1..=k {
        c = &(&c * unit) / &GaussianRational::from_integer(i64::from(j));
    }
    (c, Powers::new(0, 0, k as i32, 0))
}

/// Moyal product `A ⋆ B` with the one-sided exponent `e^{iħ ∂ₓ^← ∂ₚ^→}`.
///
/// Terminates when, for each pair of exponential parts, the left factor has
/// no x in its exponent (its x-degree bounds the series) or the right factor
/// has no p in its exponent and no negative powers of p.
pub fn star(a: &PhaseSymbol, b: &PhaseSymbol) -> Result<PhaseSymbol> {
    for (ea, _) in a.parts() {
        for (eb, pb) in b.parts() {
            if !star_terminates(ea, eb, pb) {
                return Err(Error::NonTerminatingStar);
            }
        }
    }
    let i = GaussianRational::i();
    let mut out = PhaseSymbol::zero();
    for (ea, pa) in a.parts() {
        let left0 = PhaseSymbol::from_part(ea.clone(), pa.clone());
        for (eb, pb) in b.parts() {
            let mut left = left0.clone();
            let mut right = PhaseSymbol::from_part(eb.clone(), pb.clone());
            let mut k = 0;
            while !left.is_zero() && !right.is_zero() {
                let (c, h) = series_weight(&i, k);
                out += &(&left * &right).mul_monomial(&c, h);
                left = left.diff(Var::X, 1);
                right = right.diff(Var::P, 1);
                k += 1;
            }
        }
    }
    Ok(out)
}

/// `e^{±iħ∂ₓ∂ₚ} A`, summed exactly.
///
/// Each exponential part must either be free of x in its exponent (then ∂ₓ
/// exhausts its polynomial prefactor), or free of p in its exponent with no
/// negative powers of p (then ∂ₚ does).
pub fn exp_twist(a: &PhaseSymbol, sign: TwistSign) -> Result<PhaseSymbol> {
    if a.parts().any(|(e, poly)| !(e.is_x_free() || p_derivatives_vanish(e, poly))) {
        return Err(Error::NonTerminatingTwist);
    }
    let unit = sign.unit();
    let mut out = PhaseSymbol::zero();
    let mut term = a.clone();
    let mut k = 0;
    while !term.is_zero() {
        let (c, h) = series_weight(&unit, k);
        out += &term.mul_monomial(&c, h);
        term = term.diff(Var::X, 1).diff(Var::P, 1);
        k += 1;
    }
    Ok(out)
}

/// Symbol of the hermitian conjugate operator: `e^{iħ∂ₓ∂ₚ} A*`.
pub fn dagger(a: &PhaseSymbol) -> Result<PhaseSymbol> {
    exp_twist(&a.conj(), TwistSign::Plus)
}

/// `A* == e^{−iħ∂ₓ∂ₚ} A`, exactly.
pub fn is_hermitian(a: &PhaseSymbol) -> Result<bool> {
    Ok(a.conj() == exp_twist(a, TwistSign::Minus)?)
}

/// `A ⋆ A ⋆ … ⋆ A` (`n` factors); `n = 0` gives 1.
pub fn star_pow(a: &PhaseSymbol, n: u32) -> Result<PhaseSymbol> {
    let mut acc = PhaseSymbol::one();
    for _ in 0..n {
        acc = star(&acc, a)?;
    }
    Ok(acc)
}
