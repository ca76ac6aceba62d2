//! Clock/shift symbol calculus against dense matrix algebra.

use moyal_core::finite_weyl::{
    clock, discrete_dagger, discrete_star, from_symbol, isomorphism_suite, satisfies_hermiticity_criterion, shift,
    to_symbol, weyl_basis, DiscreteSymbol, FiniteOperator, TOLERANCE,
};
use moyal_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn suite_for_acceptance_dimensions() {
    for n in [2, 3, 5, 8] {
        let report = isomorphism_suite(n, 100, n as u64).unwrap();
        for (name, dev) in report.checks() {
            assert!(dev <= TOLERANCE, "N={n}: {name} deviates by {dev:e}");
        }
    }
}

#[test]
fn dimension_limits() {
    assert!(clock(256).is_ok());
    assert_eq!(clock(0), Err(Error::BadDimension(0)));
    assert_eq!(isomorphism_suite(257, 1, 0), Err(Error::BadDimension(257)));
    let a = FiniteOperator::identity(2);
    let b = FiniteOperator::identity(3);
    assert_eq!(a.mul(&b), Err(Error::DimensionMismatch(2, 3)));
}

#[test]
fn shift_orientation() {
    // One-based h_{n,m} = δ_{n−1,m} + δ_{n,1}δ_{m,N}: the cyclic permutation
    // for which gh = e^{iφ}hg. Its transpose gives gh = e^{−iφ}hg instead.
    let n = 4;
    let h = shift(n).unwrap();
    for row in 1..=n {
        for col in 1..=n {
            let expected = if row == col + 1 || (row == 1 && col == n) { 1.0 } else { 0.0 };
            assert_eq!(h.get(row - 1, col - 1), Complex64::new(expected, 0.0), "({row},{col})");
        }
    }
    let g = clock(n).unwrap();
    let ht = h.adjoint();
    let phase = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / n as f64);
    let reversed = ht.mul(&g).unwrap().scale(phase);
    assert!(g.mul(&ht).unwrap().max_abs_diff(&reversed).unwrap() < TOLERANCE);
}

#[test]
fn weyl_basis_is_clock_times_shift() {
    let n = 5;
    let g = clock(n).unwrap();
    let h = shift(n).unwrap();
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let product = g.pow(a).mul(&h.pow(b)).unwrap();
            let basis = weyl_basis(n, i64::from(a), i64::from(b)).unwrap();
            assert!(product.max_abs_diff(&basis).unwrap() < TOLERANCE);
        }
    }
}

fn symbol(n: usize) -> impl Strategy<Value = DiscreteSymbol> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        to_symbol(&FiniteOperator::random(n, &mut rng)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn discrete_star_is_associative(a in symbol(4), b in symbol(4), c in symbol(4)) {
        let left = discrete_star(&discrete_star(&a, &b).unwrap(), &c).unwrap();
        let right = discrete_star(&a, &discrete_star(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() < TOLERANCE);
    }

    #[test]
    fn discrete_dagger_is_an_involution(a in symbol(5)) {
        prop_assert!(discrete_dagger(&discrete_dagger(&a)).max_abs_diff(&a).unwrap() < TOLERANCE);
    }

    #[test]
    fn discrete_dagger_matches_conjugate_transpose(a in symbol(3)) {
        let via_matrix = to_symbol(&from_symbol(&a).unwrap().adjoint()).unwrap();
        prop_assert!(discrete_dagger(&a).max_abs_diff(&via_matrix).unwrap() < TOLERANCE);
    }

    /// The criterion holds exactly for hermitian matrices, in both directions.
    #[test]
    fn hermiticity_criterion_equivalence(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let herm = FiniteOperator::random_hermitian(n, &mut rng);
        prop_assert!(satisfies_hermiticity_criterion(&to_symbol(&herm).unwrap(), TOLERANCE));
        let other = FiniteOperator::random(n, &mut rng);
        let is_herm = other.max_abs_diff(&other.adjoint()).unwrap() < TOLERANCE;
        prop_assert_eq!(satisfies_hermiticity_criterion(&to_symbol(&other).unwrap(), TOLERANCE), is_herm);
        // anti-hermitian part breaks it
        let skew = herm.scale(Complex64::new(0.0, 1.0));
        prop_assert!(!satisfies_hermiticity_criterion(&to_symbol(&skew).unwrap(), TOLERANCE));
    }
}
