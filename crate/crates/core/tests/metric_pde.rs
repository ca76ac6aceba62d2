//! The metric operator against direct evaluation of `H⋆F − F⋆H†`.

mod common;

use common::{hbar_term, iq, mono, q, strategies};
use moyal_core::metric_pde::{
    derive_metric_operator, gaussian_metric_candidates, residual, swanson_from_ladder, SwansonParams,
};
use moyal_core::star_log::commutative_log;
use moyal_core::{dagger, exp_twist, is_hermitian, star, Error, ExpQuadratic, HbarScalar, PhaseSymbol, TwistSign};
use num_rational::BigRational;
use proptest::prelude::*;

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn swanson_ladder_parameters() {
    // ω = 2, α = 1/2, β = −1/2: a = 1, b = 1, c = 1
    let p = swanson_from_ladder(&rational(2, 1), &rational(1, 2), &rational(-1, 2));
    assert_eq!(p, SwansonParams::from_ratios((1, 1), (1, 1), (1, 1)));
}

#[test]
fn gaussian_family_at_imaginary_s() {
    // s = i/ħ: the discriminant is c² + 4ab, a square for (1/2, 3/2, 1)
    let params = SwansonParams::from_ratios((1, 2), (3, 2), (1, 1));
    let h = params.hamiltonian();
    let cands = gaussian_metric_candidates(&params, &hbar_term(iq(1, 1), -1)).unwrap();
    assert_eq!(cands.len(), 2);
    for e in &cands {
        assert!(residual(&h, &PhaseSymbol::exp(e.clone())).unwrap().is_zero());
    }
    // r = (−1 ± 2)/(6ħ), t = (1 ± 2)/(2ħ)
    assert_eq!(cands[0].r, hbar_term(q(1, 6), -1));
    assert_eq!(cands[0].t, hbar_term(q(3, 2), -1));
    assert_eq!(cands[1].r, hbar_term(q(-1, 2), -1));
    assert_eq!(cands[1].t, hbar_term(q(-1, 2), -1));
}

#[test]
fn irrational_discriminant_is_reported() {
    let params = SwansonParams::from_ratios((1, 1), (1, 1), (1, 1));
    // s = i/ħ: c² + 4ab = 5
    assert_eq!(gaussian_metric_candidates(&params, &hbar_term(iq(1, 1), -1)), Err(Error::IrrationalDiscriminant));
}

#[test]
fn s_zero_logs_are_hermitian() {
    let params = SwansonParams::from_ratios((1, 2), (3, 2), (1, 1));
    for e in gaussian_metric_candidates(&params, &HbarScalar::zero()).unwrap() {
        let log = commutative_log(&e).unwrap();
        assert!(is_hermitian(&log).unwrap());
        assert!(is_hermitian(&PhaseSymbol::exp(e)).unwrap());
    }
}

#[test]
fn kernel_branch_and_its_partner() {
    let h = &mono(q(1, 1), 0, 2, 0, 0) + &mono(iq(1, 1), 3, 0, 0, 1);
    let op = derive_metric_operator(&h).unwrap();
    let kernel = PhaseSymbol::exp(ExpQuadratic::new(HbarScalar::zero(), hbar_term(iq(2, 1), -1), HbarScalar::zero()));
    assert!(op.apply(&kernel).is_zero());
    // e^{−2ixp/ħ} solves the conjugate equation
    assert!(op.conj().apply(&kernel.conj()).is_zero());
}

fn ratio_strategy() -> impl Strategy<Value = (i64, i64)> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn operator_matches_star_products(h in strategies::hamiltonian(3, 3, 3), f in strategies::polynomial(3, 3, 3)) {
        let op = derive_metric_operator(&h).unwrap();
        let direct = &star(&h, &f).unwrap() - &star(&f, &dagger(&h).unwrap()).unwrap();
        prop_assert_eq!(op.apply(&f), direct);
    }

    /// `e^{iħ∂ₓ∂ₚ} L* e^{−iħ∂ₓ∂ₚ} = −L`.
    #[test]
    fn conjugation_identity(h in strategies::hamiltonian(3, 3, 3), f in strategies::polynomial(3, 3, 3)) {
        let op = derive_metric_operator(&h).unwrap();
        let inner = exp_twist(&f, TwistSign::Minus).unwrap();
        let lhs = exp_twist(&op.conj().apply(&inner), TwistSign::Plus).unwrap();
        prop_assert_eq!(lhs, -op.apply(&f));
    }

    #[test]
    fn s_zero_candidates_solve_the_equation(a in ratio_strategy(), b in ratio_strategy(), c in ratio_strategy()) {
        let params = SwansonParams::from_ratios(a, b, c);
        let h = params.hamiltonian();
        let cands = gaussian_metric_candidates(&params, &HbarScalar::zero()).unwrap();
        prop_assert_eq!(cands.len(), 2);
        for e in cands {
            prop_assert!(residual(&h, &PhaseSymbol::exp(e)).unwrap().is_zero());
        }
    }

    #[test]
    fn s_two_i_candidates_solve_the_equation(a in ratio_strategy(), b in ratio_strategy(), c in ratio_strategy()) {
        let params = SwansonParams::from_ratios(a, b, c);
        let h = params.hamiltonian();
        for e in gaussian_metric_candidates(&params, &hbar_term(iq(2, 1), -1)).unwrap() {
            prop_assert!(residual(&h, &PhaseSymbol::exp(e)).unwrap().is_zero());
        }
    }
}
