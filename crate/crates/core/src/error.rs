use thiserror::Error;

/// Domain errors raised by the symbol calculus, the metric solvers, and the
/// finite-dimensional Weyl algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-terminating star series")]
    NonTerminatingStar,
    #[error("non-terminating twist series")]
    NonTerminatingTwist,
    #[error("hamiltonian must be polynomial (no exponential factors, no negative powers of p)")]
    NonPolynomialHamiltonian,
    #[error("discriminant has no square root in the coefficient field")]
    IrrationalDiscriminant,
    #[error("swanson parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),
    #[error("potential must depend on x only (no p, g or exponential factors)")]
    UnsupportedKinetic,
    #[error("source term of the kinetic equation must be polynomial in x")]
    ExponentialSource,
    #[error("metric series must have leading order 1")]
    NotUnitLeading,
    #[error("logarithm series must have vanishing leading order")]
    NonzeroLeading,
    #[error("dimension {0} out of range (2..=256)")]
    BadDimension(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
