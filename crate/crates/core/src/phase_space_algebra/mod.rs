//! Exact arithmetic, differentiation, star product and hermiticity calculus
//! for phase-space symbols.

pub mod laurent;
pub mod number;
pub mod star;
pub mod symbol;

pub use laurent::HbarScalar;
pub use number::GaussianRational;
pub use star::{dagger, exp_twist, is_hermitian, star, star_pow, TwistSign};
pub use symbol::{ExpQuadratic, Monomial, PhaseSymbol, Polynomial, Powers, Var};
