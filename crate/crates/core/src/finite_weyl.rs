//! Clock/shift realization of the Weyl algebra on C^N and its discrete
//! symbol calculus.
//!
//! With `φ = 2π/N`, the clock `g = diag(1, e^{iφ}, …, e^{i(N−1)φ})` and the
//! cyclic shift `h` satisfy `gh = e^{iφ} hg` and `g^N = h^N = 1`. The
//! operators `U(n,m) = gⁿhᵐ`, `0 ≤ n,m < N`, form a trace-orthogonal basis,
//! so every operator has coefficients `a_{n,m} = tr(U(n,m)† A)/N`.
//!
//! Storage is zero-indexed: row/column `i` here is `i + 1` in one-indexed
//! matrix notation. The shift is `h[i][(i−1) mod N] = 1`, i.e. it maps basis
//! vector `eᵢ` to `e_{i+1}`; this is the orientation for which
//! `gh = e^{iφ} hg` holds with the clock above.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIMENSION: usize = 256;

/// Absolute entrywise tolerance for all comparisons in this module.
pub const TOLERANCE: f64 = 1e-9;

fn check_dimension(n: usize) -> Result<()> {
    if (2..=MAX_DIMENSION).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadDimension(n))
    }
}

/// `e^{iφk}` with `φ = 2π/N`, reducing `k` mod N first.
fn root_of_unity(n: usize, k: i64) -> Complex64 {
    let k = k.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * k / n as f64)
}

fn wrap(n: usize, k: i64) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// Dense N×N complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteOperator {
    n: usize,
    entries: Vec<Complex64>,
}

impl FiniteOperator {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    /// Entries drawn uniformly from the square `[−1, 1] × [−1, 1]i`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        Self::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> Self {
        let a = Self::random(n, rng);
        let ad = a.adjoint();
        a.add(&ad).expect("same dimension")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.n)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, entries })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Clock matrix `g = diag(e^{2πi k/N})`, `k = 0..N−1`.
pub fn clock(n: usize) -> Result<FiniteOperator> {
    check_dimension(n)?;
    Ok(FiniteOperator::from_fn(n, |i, j| if i == j { root_of_unity(n, i as i64) } else { Complex64::new(0.0, 0.0) }))
}

/// Cyclic shift `h` with `h[i][(i−1) mod N] = 1`.
pub fn shift(n: usize) -> Result<FiniteOperator> {
    check_dimension(n)?;
    Ok(FiniteOperator::from_fn(n, |i, j| {
        if j == wrap(n, i as i64 - 1) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `U(n,m) = gⁿhᵐ`, built entrywise: `(gⁿhᵐ)[i][j] = e^{iφ n i} δ_{j, i−m}`.
pub fn weyl_basis(dim: usize, n: i64, m: i64) -> Result<FiniteOperator> {
    check_dimension(dim)?;
    Ok(FiniteOperator::from_fn(dim, |i, j| {
        if j == wrap(dim, i as i64 - m) {
            root_of_unity(dim, n * i as i64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Coefficients `a_{n,m}` on the `Z_N × Z_N` torus.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteSymbol {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl DiscreteSymbol {
    pub fn zeros(n: usize) -> Self {
        Self { n, coeffs: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut s = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                s.coeffs[a * n + b] = f(a, b);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `a_{n,m}` with both indices taken mod N.
    pub fn get(&self, n: i64, m: i64) -> Complex64 {
        self.coeffs[wrap(self.n, n) * self.n + wrap(self.n, m)]
    }

    pub fn set(&mut self, n: i64, m: i64, v: Complex64) {
        let idx = wrap(self.n, n) * self.n + wrap(self.n, m);
        self.coeffs[idx] = v;
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `Σ |a_{n,m}|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// `a_{n,m} = tr(U(n,m)† A) / N`.
pub fn to_symbol(a: &FiniteOperator) -> Result<DiscreteSymbol> {
    let dim = a.dim();
    check_dimension(dim)?;
    let mut s = DiscreteSymbol::zeros(dim);
    // tr(U† A) = Σᵢ conj(U[i][i−m]) A[i][i−m] since U has one entry per row
    for n in 0..dim as i64 {
        for m in 0..dim as i64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..dim {
                let j = wrap(dim, i as i64 - m);
                acc += root_of_unity(dim, n * i as i64).conj() * a.get(i, j);
            }
            s.set(n, m, acc / dim as f64);
        }
    }
    Ok(s)
}

/// `A = Σ a_{n,m} gⁿhᵐ`.
pub fn from_symbol(s: &DiscreteSymbol) -> Result<FiniteOperator> {
    let dim = s.dim();
    check_dimension(dim)?;
    let mut out = FiniteOperator::zeros(dim);
    for n in 0..dim as i64 {
        for m in 0..dim as i64 {
            let c = s.get(n, m);
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..dim {
                let j = wrap(dim, i as i64 - m);
                out.entries[i * dim + j] += c * root_of_unity(dim, n * i as i64);
            }
        }
    }
    Ok(out)
}

/// Symbol of the operator product:
/// `(S₁⋆S₂)_{q,r} = Σ a_{n,m} b_{n′,m′} e^{−i m n′ φ}` over `n+n′ ≡ q`,
/// `m+m′ ≡ r` (mod N).
pub fn discrete_star(s1: &DiscreteSymbol, s2: &DiscreteSymbol) -> Result<DiscreteSymbol> {
    if s1.n != s2.n {
        return Err(Error::DimensionMismatch(s1.n, s2.n));
    }
    let dim = s1.n as i64;
    let mut out = DiscreteSymbol::zeros(s1.n);
    for n in 0..dim {
        for m in 0..dim {
            let a = s1.get(n, m);
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for n2 in 0..dim {
                let phase = root_of_unity(s1.n, -m * n2);
                for m2 in 0..dim {
                    let b = s2.get(n2, m2);
                    let idx = wrap(s1.n, n + n2) * s1.n + wrap(s1.n, m + m2);
                    out.coeffs[idx] += a * b * phase;
                }
            }
        }
    }
    Ok(out)
}

/// Symbol of the adjoint: `a†_{n,m} = a*_{−n,−m} e^{−imnφ}`.
pub fn discrete_dagger(s: &DiscreteSymbol) -> DiscreteSymbol {
    let dim = s.n as i64;
    let mut out = DiscreteSymbol::zeros(s.n);
    for n in 0..dim {
        for m in 0..dim {
            out.set(n, m, s.get(-n, -m).conj() * root_of_unity(s.n, -m * n));
        }
    }
    out
}

/// Hermiticity criterion on the function level: the symbol of `A*` equals
/// the symbol of `e^{−iφ∂_α∂_β} A`. On the mode `e^{inα}e^{imβ}` the
/// twist acts as multiplication by `e^{iφnm}`, while conjugation sends the
/// mode `(n, m)` to `(−n, −m)`.
pub fn satisfies_hermiticity_criterion(s: &DiscreteSymbol, tol: f64) -> bool {
    let dim = s.n as i64;
    (0..dim).all(|n| {
        (0..dim).all(|m| {
            let conj_side = s.get(-n, -m).conj();
            let twist_side = s.get(n, m) * root_of_unity(s.n, n * m);
            (conj_side - twist_side).norm() <= tol
        })
    })
}

/// `A(α_k, β_l) = Σ a_{n,m} e^{in·2πk/N} e^{im·2πl/N}`.
pub fn evaluate(s: &DiscreteSymbol, k: i64, l: i64) -> Complex64 {
    let dim = s.n as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..dim {
        for m in 0..dim {
            acc += s.get(n, m) * root_of_unity(s.n, n * k + m * l);
        }
    }
    acc
}

/// Largest deviations observed by [`isomorphism_suite`].
#[derive(Clone, Debug, PartialEq)]
pub struct IsomorphismReport {
    pub dim: usize,
    pub pairs: usize,
    pub round_trip: f64,
    pub star_vs_product: f64,
    pub dagger_vs_adjoint: f64,
    pub trace_orthogonality: f64,
    pub commutation: f64,
    pub clock_power: f64,
    pub shift_power: f64,
    pub trace_gh: f64,
}

impl IsomorphismReport {
    /// `(check name, max deviation)` in a fixed order.
    pub fn checks(&self) -> [(&'static str, f64); 8] {
        [
            ("round trip from_symbol(to_symbol(A)) = A", self.round_trip),
            ("to_symbol(AB) = to_symbol(A) * to_symbol(B)", self.star_vs_product),
            ("discrete_dagger = symbol of adjoint", self.dagger_vs_adjoint),
            ("tr(U(n',m')^dag U(n,m)) = N delta", self.trace_orthogonality),
            ("gh = e^{i phi} hg", self.commutation),
            ("g^N = 1", self.clock_power),
            ("h^N = 1", self.shift_power),
            ("tr(gh) = 0", self.trace_gh),
        ]
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks().iter().map(|c| c.1).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

/// Checks the symbol calculus against matrix algebra on `pairs` random
/// operator pairs drawn from a seeded generator.
pub fn isomorphism_suite(dim: usize, pairs: usize, seed: u64) -> Result<IsomorphismReport> {
    let g = clock(dim)?;
    let h = shift(dim)?;
    let phase = root_of_unity(dim, 1);
    let id = FiniteOperator::identity(dim);

    let commutation = g.mul(&h)?.max_abs_diff(&h.mul(&g)?.scale(phase))?;
    let clock_power = g.pow(dim as u32).max_abs_diff(&id)?;
    let shift_power = h.pow(dim as u32).max_abs_diff(&id)?;
    let trace_gh = g.mul(&h)?.trace().norm();

    let mut basis = Vec::with_capacity(dim * dim);
    for n in 0..dim as i64 {
        for m in 0..dim as i64 {
            basis.push(weyl_basis(dim, n, m)?);
        }
    }
    let mut trace_orthogonality: f64 = 0.0;
    for (a, ua) in basis.iter().enumerate() {
        for (b, ub) in basis.iter().enumerate() {
            let expected = if a == b { dim as f64 } else { 0.0 };
            let dev = (ua.adjoint().mul(ub)?.trace() - Complex64::new(expected, 0.0)).norm();
            trace_orthogonality = trace_orthogonality.max(dev);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut round_trip, mut star_vs_product, mut dagger_vs_adjoint): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..pairs {
        let a = FiniteOperator::random(dim, &mut rng);
        let b = FiniteOperator::random(dim, &mut rng);
        let sa = to_symbol(&a)?;
        let sb = to_symbol(&b)?;
        round_trip = round_trip.max(from_symbol(&sa)?.max_abs_diff(&a)?);
        star_vs_product = star_vs_product.max(discrete_star(&sa, &sb)?.max_abs_diff(&to_symbol(&a.mul(&b)?)?)?);
        dagger_vs_adjoint = dagger_vs_adjoint.max(discrete_dagger(&sa).max_abs_diff(&to_symbol(&a.adjoint())?)?);
    }

    Ok(IsomorphismReport {
        dim,
        pairs,
        round_trip,
        star_vs_product,
        dagger_vs_adjoint,
        trace_orthogonality,
        commutation,
        clock_power,
        shift_power,
        trace_gh,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_dimensional_generators() {
        let g = clock(2).unwrap();
        let h = shift(2).unwrap();
        let expected_g = FiniteOperator::from_fn(2, |i, j| match (i, j) {
            (0, 0) => c(1.0, 0.0),
            (1, 1) => c(-1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let expected_h = FiniteOperator::from_fn(2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(g.max_abs_diff(&expected_g).unwrap() < 1e-15);
        assert!(h.max_abs_diff(&expected_h).unwrap() < 1e-15);
    }

    #[test]
    fn three_dimensional_clock() {
        let g = clock(3).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((g.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((g.get(1, 1) - w).norm() < 1e-15);
        assert!((g.get(2, 2) - w * w).norm() < 1e-15);
    }

    #[test]
    fn commutation_relation() {
        for n in [2, 3, 4, 7, 16] {
            let g = clock(n).unwrap();
            let h = shift(n).unwrap();
            let lhs = g.mul(&h).unwrap();
            let rhs = h.mul(&g).unwrap().scale(root_of_unity(n, 1));
            assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12, "N = {n}");
        }
    }

    #[test]
    fn bad_dimensions() {
        assert_eq!(clock(1), Err(Error::BadDimension(1)));
        assert_eq!(shift(257), Err(Error::BadDimension(257)));
        let a = DiscreteSymbol::zeros(2);
        let b = DiscreteSymbol::zeros(3);
        assert_eq!(discrete_star(&a, &b), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn basis_symbols() {
        let n = 4;
        let id = to_symbol(&FiniteOperator::identity(n)).unwrap();
        let mut expected = DiscreteSymbol::zeros(n);
        expected.set(0, 0, c(1.0, 0.0));
        assert!(id.max_abs_diff(&expected).unwrap() < TOLERANCE);

        let g = to_symbol(&clock(n).unwrap()).unwrap();
        let mut expected = DiscreteSymbol::zeros(n);
        expected.set(1, 0, c(1.0, 0.0));
        assert!(g.max_abs_diff(&expected).unwrap() < TOLERANCE);

        let mut only_h = DiscreteSymbol::zeros(n);
        only_h.set(0, 1, c(1.0, 0.0));
        assert!(from_symbol(&only_h).unwrap().max_abs_diff(&shift(n).unwrap()).unwrap() < TOLERANCE);
        assert_eq!(from_symbol(&DiscreteSymbol::zeros(n)).unwrap(), FiniteOperator::zeros(n));
    }

    #[test]
    fn basis_products() {
        let n = 5;
        let sg = to_symbol(&clock(n).unwrap()).unwrap();
        let sh = to_symbol(&shift(n).unwrap()).unwrap();
        let gh = to_symbol(&weyl_basis(n, 1, 1).unwrap()).unwrap();
        assert!(discrete_star(&sg, &sh).unwrap().max_abs_diff(&gh).unwrap() < TOLERANCE);
        let expected = gh.scale(root_of_unity(n, -1));
        assert!(discrete_star(&sh, &sg).unwrap().max_abs_diff(&expected).unwrap() < TOLERANCE);
    }

    #[test]
    fn dagger_of_clock() {
        let n = 6;
        let sg = to_symbol(&clock(n).unwrap()).unwrap();
        let mut expected = DiscreteSymbol::zeros(n);
        expected.set(n as i64 - 1, 0, c(1.0, 0.0));
        assert!(discrete_dagger(&sg).max_abs_diff(&expected).unwrap() < TOLERANCE);
    }

    #[test]
    fn hermitian_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = FiniteOperator::random_hermitian(4, &mut rng);
        let s = to_symbol(&a).unwrap();
        assert!(discrete_dagger(&s).max_abs_diff(&s).unwrap() < TOLERANCE);
        assert!(satisfies_hermiticity_criterion(&s, TOLERANCE));
        let back = from_symbol(&s).unwrap();
        assert!(back.max_abs_diff(&back.adjoint()).unwrap() < TOLERANCE);

        let b = FiniteOperator::random(4, &mut rng);
        assert!(!satisfies_hermiticity_criterion(&to_symbol(&b).unwrap(), TOLERANCE));
    }

    #[test]
    fn evaluation_on_the_grid() {
        let n = 5;
        let id = to_symbol(&FiniteOperator::identity(n)).unwrap();
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                assert!((evaluate(&id, k, l) - c(1.0, 0.0)).norm() < TOLERANCE);
            }
        }
        let g = to_symbol(&clock(n).unwrap()).unwrap();
        assert!((evaluate(&g, 1, 0) - root_of_unity(n, 1)).norm() < TOLERANCE);
    }

    #[test]
    fn parseval() {
        let n = 6;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = to_symbol(&FiniteOperator::random(n, &mut rng)).unwrap();
        let mut total = 0.0;
        for k in 0..n as i64 {
            for l in 0..n as i64 {
                total += evaluate(&s, k, l).norm_sqr();
            }
        }
        assert!((total / (n * n) as f64 - s.norm_sqr()).abs() < TOLERANCE);
    }

    #[test]
    fn small_suite_passes() {
        let report = isomorphism_suite(3, 10, 1).unwrap();
        assert!(report.passes(TOLERANCE), "{report:?}");
    }
}
