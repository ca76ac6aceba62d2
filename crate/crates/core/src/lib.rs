//! Exact Moyal-product calculus for metric operators of non-hermitian
//! Hamiltonians.
//!
//! The metric equation `H ⋆ Θ = Θ ⋆ H†` is turned into a linear differential
//! operator on phase-space symbols ([`metric_pde`]), solved order by order in
//! the coupling ([`perturbative_solver`]) and checked for positivity through
//! the hermiticity of its star-logarithm ([`star_log`]). [`finite_weyl`] is
//! the clock/shift version of the same calculus on `C^N`, checked numerically
//! against matrix algebra.

pub mod error;
pub mod finite_weyl;
pub mod metric_pde;
pub mod perturbative_solver;
pub mod phase_space_algebra;
pub mod star_log;

pub use error::{Error, Result};
pub use phase_space_algebra::{
    dagger, exp_twist, is_hermitian, star, star_pow, ExpQuadratic, GaussianRational, HbarScalar,
    Monomial, PhaseSymbol, Polynomial, Powers, TwistSign, Var,
};
