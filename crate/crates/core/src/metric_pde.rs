//! The metric equation `H ⋆ Θ = Θ ⋆ H†` as a linear differential operator.
//!
//! For a polynomial Hamiltonian both star products truncate, giving
//!
//! ```text
//! L = Σₖ (iħ)ᵏ/k! [ (∂ₓᵏ H) ∂ₚᵏ − (∂ₚᵏ H†) ∂ₓᵏ ],   L[Θ] = H⋆Θ − Θ⋆H†.
//! ```
//!
//! Also holds the Swanson model `a p² + b x² + i c p x` and its closed-form
//! Gaussian metrics `exp(r p² + s p x + t x²)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::phase_space_algebra::{
    dagger, ExpQuadratic, GaussianRational, HbarScalar, PhaseSymbol, Powers, Var,
};

/// `Σ c_{m,n}(x,p) ∂ₓᵐ ∂ₚⁿ` with phase-space symbol coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DifferentialOperator {
    terms: BTreeMap<(u32, u32), PhaseSymbol>,
}

impl DifferentialOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Adds `coeff · ∂ₓ^dx ∂ₚ^dp`, merging with an existing term.
    pub fn add_term(&mut self, dx: u32, dp: u32, coeff: &PhaseSymbol) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((dx, dp)).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(dx, dp));
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), PhaseSymbol)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for ((dx, dp), c) in terms {
            out.add_term(dx, dp, &c);
        }
        out
    }

    /// `((∂ₓ order, ∂ₚ order), coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &PhaseSymbol)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dx: u32, dp: u32) -> PhaseSymbol {
        self.terms.get(&(dx, dp)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_dx(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_dp(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Conjugate every coefficient.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.conj())))
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.scale(c))))
    }

    /// Coefficient-wise gⁿ slice.
    pub fn g_slice(&self, n: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.g_slice(n))))
    }

    /// `L[F] = Σ c_{m,n} ∂ₓᵐ ∂ₚⁿ F`.
    pub fn apply(&self, f: &PhaseSymbol) -> PhaseSymbol {
        let mut out = PhaseSymbol::zero();
        for ((dx, dp), c) in &self.terms {
            let d = f.diff(Var::X, *dx).diff(Var::P, *dp);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }
}

/// Derive `L` with `L[Θ] = H⋆Θ − Θ⋆dagger(H)`.
///
/// `H` must be polynomial: no exponential factors and no negative powers of
/// p (otherwise `∂ₚᵏ H†` never vanishes and `L` has infinite order).
pub fn derive_metric_operator(h: &PhaseSymbol) -> Result<DifferentialOperator> {
    if !h.is_polynomial() || h.min_pdeg().is_some_and(|d| d < 0) {
        return Err(Error::NonPolynomialHamiltonian);
    }
    let hd = dagger(h).map_err(|_| Error::NonPolynomialHamiltonian)?;
    let i = GaussianRational::i();
    let mut op = DifferentialOperator::zero();
    let mut dh = h.clone();
    let mut dhd = hd;
    let mut weight = GaussianRational::one();
    let mut k = 0u32;
    while !dh.is_zero() || !dhd.is_zero() {
        let hk = Powers::new(0, 0, k as i32, 0);
        op.add_term(0, k, &dh.mul_monomial(&weight, hk));
        op.add_term(k, 0, &dhd.mul_monomial(&-&weight, hk));
        k += 1;
        weight = &(&weight * &i) / &GaussianRational::from_integer(i64::from(k));
        dh = dh.diff(Var::X, 1);
        dhd = dhd.diff(Var::P, 1);
    }
    Ok(op)
}

pub fn apply_operator(op: &DifferentialOperator, f: &PhaseSymbol) -> PhaseSymbol {
    op.apply(f)
}

/// `L_H[Θ]`; zero iff Θ solves the metric equation for `H`.
pub fn residual(h: &PhaseSymbol, theta: &PhaseSymbol) -> Result<PhaseSymbol> {
    Ok(derive_metric_operator(h)?.apply(theta))
}

/// Real parameters of `H = a p² + b x² + i c p x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwansonParams {
    a: GaussianRational,
    b: GaussianRational,
    c: GaussianRational,
}

impl SwansonParams {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn from_ratios(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        let q = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        Self::new(q(a), q(b), q(c))
    }

    pub fn a(&self) -> &GaussianRational {
        &self.a
    }

    pub fn b(&self) -> &GaussianRational {
        &self.b
    }

    pub fn c(&self) -> &GaussianRational {
        &self.c
    }

    /// `a p² + b x² + i c p x`.
    pub fn hamiltonian(&self) -> PhaseSymbol {
        let ic = &self.c * &GaussianRational::i();
        let mut h = PhaseSymbol::monomial(self.a.clone(), Powers::new(0, 2, 0, 0));
        h += &PhaseSymbol::monomial(self.b.clone(), Powers::new(2, 0, 0, 0));
        h += &PhaseSymbol::monomial(ic, Powers::new(1, 1, 0, 0));
        h
    }
}

/// `H = ħω a†a + ħα aa + ħβ a†a†` rewritten as `a p² + b x² + i c p x`.
pub fn swanson_from_ladder(omega: &BigRational, alpha: &BigRational, beta: &BigRational) -> SwansonParams {
    let two = BigRational::from_integer(BigInt::from(2));
    SwansonParams::new(
        (omega - alpha - beta) / &two,
        (omega + alpha + beta) / &two,
        alpha - beta,
    )
}

/// The two exact Gaussian metrics `exp(r p² + s p x + t x²)` for a chosen `s`:
///
/// ```text
/// r = (−c ± √D) / (4bħ),  t = (c ± √D) / (4aħ),  D = c² − 4abħs(2i − ħs)
/// ```
///
/// The `+√D` branch comes first. `√D` must exist as a Laurent polynomial in
/// ħ over Q(i); no approximation is attempted.
pub fn gaussian_metric_candidates(params: &SwansonParams, s: &HbarScalar) -> Result<Vec<ExpQuadratic>> {
    if params.a.is_zero() {
        return Err(Error::ZeroParameter("a"));
    }
    if params.b.is_zero() {
        return Err(Error::ZeroParameter("b"));
    }
    let hs = s.shift(1);
    let two_i = HbarScalar::constant(GaussianRational::from_parts(0, 1, 2, 1));
    let four_ab = &GaussianRational::from_integer(4) * &(&params.a * &params.b);
    let c2 = HbarScalar::constant(&params.c * &params.c);
    let disc = &c2 - &(&hs * &(&two_i - &hs)).scale(&four_ab);
    let root = disc.sqrt().ok_or(Error::IrrationalDiscriminant)?;

    let c = HbarScalar::constant(params.c.clone());
    let four_b = &GaussianRational::from_integer(4) * &params.b;
    let four_a = &GaussianRational::from_integer(4) * &params.a;
    let branch = |sq: &HbarScalar| {
        let r = (&-&c + sq).div_term(&four_b, 1);
        let t = (&c + sq).div_term(&four_a, 1);
        ExpQuadratic::new(r, s.clone(), t)
    };
    Ok(vec![branch(&root), branch(&-&root)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    fn i() -> GaussianRational {
        GaussianRational::i()
    }

    fn mono(c: GaussianRational, x: u32, p: i32, h: i32, g: u32) -> PhaseSymbol {
        PhaseSymbol::monomial(c, Powers::new(x, p, h, g))
    }

    fn cubic() -> PhaseSymbol {
        &mono(q(1, 1), 0, 2, 0, 0) + &mono(i(), 3, 0, 0, 1)
    }

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn free_particle_operator() {
        let l = derive_metric_operator(&mono(q(1, 1), 0, 2, 0, 0)).unwrap();
        let expected = DifferentialOperator::from_terms([
            ((1, 0), mono(q(-2, 1) * i(), 0, 1, 1, 0)),
            ((2, 0), mono(q(1, 1), 0, 0, 2, 0)),
        ]);
        assert_eq!(l, expected);
    }

    #[test]
    fn cubic_operator_on_constants_and_zero() {
        let l = derive_metric_operator(&cubic()).unwrap();
        assert_eq!(l.apply(&PhaseSymbol::one()), mono(q(2, 1) * i(), 3, 0, 0, 1));
        assert!(l.apply(&PhaseSymbol::zero()).is_zero());
        assert_eq!(l.len(), 6);
    }

    #[test]
    fn rejects_non_polynomial_hamiltonians() {
        let e = PhaseSymbol::exp(ExpQuadratic::new(HbarScalar::one(), HbarScalar::zero(), HbarScalar::zero()));
        assert_eq!(derive_metric_operator(&e), Err(Error::NonPolynomialHamiltonian));
        assert_eq!(
            derive_metric_operator(&mono(q(1, 1), 1, -1, 0, 0)),
            Err(Error::NonPolynomialHamiltonian)
        );
    }

    #[test]
    fn ladder_parameters() {
        let p = swanson_from_ladder(&br(1, 1), &br(0, 1), &br(0, 1));
        assert_eq!(p, SwansonParams::from_ratios((1, 2), (1, 2), (0, 1)));
        let p = swanson_from_ladder(&br(2, 1), &br(1, 1), &br(0, 1));
        assert_eq!(p, SwansonParams::from_ratios((1, 2), (3, 2), (1, 1)));
        let p = swanson_from_ladder(&br(2, 1), &br(0, 1), &br(1, 1));
        assert_eq!(p, SwansonParams::from_ratios((1, 2), (3, 2), (-1, 1)));
    }

    #[test]
    fn gaussian_candidates_at_zero_s() {
        let params = SwansonParams::from_ratios((1, 2), (3, 2), (1, 1));
        let cands = gaussian_metric_candidates(&params, &HbarScalar::zero()).unwrap();
        // (0, c/(2aħ)) = (0, ħ⁻¹) and (−c/(2bħ), 0) = (−ħ⁻¹/3, 0)
        assert_eq!(cands[0], ExpQuadratic::new(HbarScalar::zero(), HbarScalar::zero(), HbarScalar::term(q(1, 1), -1)));
        assert_eq!(cands[1], ExpQuadratic::new(HbarScalar::term(q(-1, 3), -1), HbarScalar::zero(), HbarScalar::zero()));
        let h = params.hamiltonian();
        for e in cands {
            assert!(residual(&h, &PhaseSymbol::exp(e)).unwrap().is_zero());
        }
    }

    #[test]
    fn gaussian_candidates_hermitian_limit() {
        let params = SwansonParams::from_ratios((1, 2), (1, 2), (0, 1));
        let cands = gaussian_metric_candidates(&params, &HbarScalar::zero()).unwrap();
        assert!(cands.iter().all(ExpQuadratic::is_trivial));
    }

    #[test]
    fn gaussian_candidate_errors() {
        let params = SwansonParams::from_ratios((0, 1), (3, 2), (1, 1));
        assert_eq!(gaussian_metric_candidates(&params, &HbarScalar::zero()), Err(Error::ZeroParameter("a")));
        let params = SwansonParams::from_ratios((1, 2), (0, 1), (1, 1));
        assert_eq!(gaussian_metric_candidates(&params, &HbarScalar::zero()), Err(Error::ZeroParameter("b")));
        // s = 1: D = 1 − 3ħ(2i − ħ) is not a square
        let params = SwansonParams::from_ratios((1, 2), (3, 2), (1, 1));
        assert_eq!(
            gaussian_metric_candidates(&params, &HbarScalar::one()),
            Err(Error::IrrationalDiscriminant)
        );
    }
}
