//! Phase-space symbols: finite sums of `x^a p^b ħ^c g^d` monomials, each
//! group optionally weighted by an exponential-quadratic factor.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::HbarScalar;
use super::number::GaussianRational;

/// Exponents of one monomial. The derived ordering is lexicographic on
/// `(gdeg, xdeg, pdeg, hdeg)`, which is the canonical term order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Powers {
    pub gdeg: u32,
    pub xdeg: u32,
    pub pdeg: i32,
    pub hdeg: i32,
}

impl Powers {
    pub const ONE: Powers = Powers { gdeg: 0, xdeg: 0, pdeg: 0, hdeg: 0 };

    pub fn new(xdeg: u32, pdeg: i32, hdeg: i32, gdeg: u32) -> Self {
        Self { gdeg, xdeg, pdeg, hdeg }
    }

    fn times(self, other: Powers) -> Powers {
        Powers {
            gdeg: self.gdeg + other.gdeg,
            xdeg: self.xdeg + other.xdeg,
            pdeg: self.pdeg + other.pdeg,
            hdeg: self.hdeg + other.hdeg,
        }
    }
}

/// `coeff · x^xdeg p^pdeg ħ^hdeg g^gdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: GaussianRational,
    pub powers: Powers,
}

impl Monomial {
    pub fn new(coeff: GaussianRational, xdeg: u32, pdeg: i32, hdeg: i32, gdeg: u32) -> Self {
        Self { coeff, powers: Powers::new(xdeg, pdeg, hdeg, gdeg) }
    }
}

/// Which phase-space coordinate a derivative acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    P,
}

/// Canonical polynomial part: a map from exponents to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeMap<Powers, GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: GaussianRational, powers: Powers) -> Self {
        let mut out = Self::zero();
        out.add_term(powers, &coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Powers, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, powers: &Powers) -> GaussianRational {
        self.terms.get(powers).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, powers: Powers, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(powers).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&powers);
        }
    }

    fn add_assign(&mut self, other: &Polynomial) {
        for (k, c) in &other.terms {
            self.add_term(*k, c);
        }
    }

    fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ka, a) in &self.terms {
            for (kb, b) in &other.terms {
                out.add_term(ka.times(*kb), &(a * b));
            }
        }
        out
    }

    fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    fn mul_powers(&self, powers: Powers) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.times(powers), v.clone())).collect() }
    }

    fn conj(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect() }
    }

    fn diff(&self, var: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (k, c) in &self.terms {
            match var {
                Var::X if k.xdeg > 0 => {
                    let f = GaussianRational::from_integer(i64::from(k.xdeg));
                    out.add_term(Powers { xdeg: k.xdeg - 1, ..*k }, &(c * &f));
                }
                Var::P if k.pdeg != 0 => {
                    let f = GaussianRational::from_integer(i64::from(k.pdeg));
                    out.add_term(Powers { pdeg: k.pdeg - 1, ..*k }, &(c * &f));
                }
                _ => {}
            }
        }
        out
    }

    /// `scalar · x^xdeg p^pdeg` as a polynomial.
    fn from_scalar(scalar: &HbarScalar, xdeg: u32, pdeg: i32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (h, c) in scalar.terms() {
            out.add_term(Powers::new(xdeg, pdeg, h, 0), c);
        }
        out
    }
}

/// The factor `exp(r·p² + s·p·x + t·x²)`; all-zero is the trivial factor 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpQuadratic {
    pub r: HbarScalar,
    pub s: HbarScalar,
    pub t: HbarScalar,
}

impl ExpQuadratic {
    pub fn new(r: HbarScalar, s: HbarScalar, t: HbarScalar) -> Self {
        Self { r, s, t }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    /// Independent of x: `s = t = 0`.
    pub fn is_x_free(&self) -> bool {
        self.s.is_zero() && self.t.is_zero()
    }

    /// Independent of p: `r = s = 0`.
    pub fn is_p_free(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { r: self.r.conj(), s: self.s.conj(), t: self.t.conj() }
    }

    /// The exponent `r p² + s p x + t x²` as a polynomial symbol.
    pub fn exponent(&self) -> PhaseSymbol {
        let mut poly = Polynomial::from_scalar(&self.r, 0, 2);
        poly.add_assign(&Polynomial::from_scalar(&self.s, 1, 1));
        poly.add_assign(&Polynomial::from_scalar(&self.t, 2, 0));
        PhaseSymbol::from_part(ExpQuadratic::trivial(), poly)
    }

    fn combine(&self, other: &ExpQuadratic) -> ExpQuadratic {
        ExpQuadratic { r: &self.r + &other.r, s: &self.s + &other.s, t: &self.t + &other.t }
    }

    pub fn scale(&self, c: &GaussianRational) -> ExpQuadratic {
        ExpQuadratic { r: self.r.scale(c), s: self.s.scale(c), t: self.t.scale(c) }
    }

    /// ∂ₓ of the exponent: `s p + 2 t x`.
    fn dx_factor(&self) -> Polynomial {
        let two = GaussianRational::from_integer(2);
        let mut out = Polynomial::from_scalar(&self.s, 0, 1);
        out.add_assign(&Polynomial::from_scalar(&self.t.scale(&two), 1, 0));
        out
    }

    /// ∂ₚ of the exponent: `2 r p + s x`.
    fn dp_factor(&self) -> Polynomial {
        let two = GaussianRational::from_integer(2);
        let mut out = Polynomial::from_scalar(&self.r.scale(&two), 0, 1);
        out.add_assign(&Polynomial::from_scalar(&self.s, 1, 0));
        out
    }
}

/// A function A(x, p) in canonical form: each distinct exponential factor
/// maps to its nonzero polynomial prefactor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PhaseSymbol {
    parts: BTreeMap<ExpQuadratic, Polynomial>,
}

impl PhaseSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, Powers::ONE)
    }

    pub fn monomial(c: GaussianRational, powers: Powers) -> Self {
        Self::from_part(ExpQuadratic::trivial(), Polynomial::monomial(c, powers))
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        Self::monomial(m.coeff.clone(), m.powers)
    }

    pub fn x() -> Self {
        Self::monomial(GaussianRational::one(), Powers::new(1, 0, 0, 0))
    }

    pub fn p() -> Self {
        Self::monomial(GaussianRational::one(), Powers::new(0, 1, 0, 0))
    }

    pub fn hbar() -> Self {
        Self::monomial(GaussianRational::one(), Powers::new(0, 0, 1, 0))
    }

    pub fn g() -> Self {
        Self::monomial(GaussianRational::one(), Powers::new(0, 0, 0, 1))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    /// `exp(e) · 1`.
    pub fn exp(e: ExpQuadratic) -> Self {
        Self::from_part(e, Polynomial::monomial(GaussianRational::one(), Powers::ONE))
    }

    pub fn from_part(e: ExpQuadratic, poly: Polynomial) -> Self {
        let mut out = Self::zero();
        out.add_part(e, poly);
        out
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let mut poly = Polynomial::zero();
        for m in monomials {
            poly.add_term(m.powers, &m.coeff);
        }
        Self::from_part(ExpQuadratic::trivial(), poly)
    }

    fn add_part(&mut self, e: ExpQuadratic, poly: Polynomial) {
        if poly.is_zero() {
            return;
        }
        match self.parts.get_mut(&e) {
            Some(existing) => {
                existing.add_assign(&poly);
                if existing.is_zero() {
                    self.parts.remove(&e);
                }
            }
            None => {
                self.parts.insert(e, poly);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&ExpQuadratic, &Polynomial)> {
        self.parts.iter()
    }

    /// True iff there are no nontrivial exponential factors.
    pub fn is_polynomial(&self) -> bool {
        self.parts.keys().all(ExpQuadratic::is_trivial)
    }

    /// The prefactor of the trivial exponential.
    pub fn polynomial_part(&self) -> Polynomial {
        self.parts.get(&ExpQuadratic::trivial()).cloned().unwrap_or_default()
    }

    /// All monomials of all parts, paired with their exponential factor.
    pub fn monomials(&self) -> impl Iterator<Item = (&ExpQuadratic, Monomial)> {
        self.parts.iter().flat_map(|(e, poly)| {
            poly.terms().map(move |(k, c)| (e, Monomial { coeff: c.clone(), powers: *k }))
        })
    }

    pub fn term_count(&self) -> usize {
        self.parts.values().map(Polynomial::len).sum()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { parts: self.parts.iter().map(|(e, p)| (e.clone(), p.scale(c))).collect() }
    }

    /// Multiply every term by `c · x^a p^b ħ^h g^d`.
    pub fn mul_monomial(&self, c: &GaussianRational, powers: Powers) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            parts: self
                .parts
                .iter()
                .map(|(e, p)| (e.clone(), p.mul_powers(powers).scale(c)))
                .collect(),
        }
    }

    /// Complex conjugation; x, p, ħ and g are real.
    pub fn conj(&self) -> Self {
        Self { parts: self.parts.iter().map(|(e, p)| (e.conj(), p.conj())).collect() }
    }

    /// `order`-th partial derivative in `var`.
    pub fn diff(&self, var: Var, order: u32) -> Self {
        let mut cur = self.clone();
        for _ in 0..order {
            if cur.is_zero() {
                break;
            }
            cur = cur.diff_once(var);
        }
        cur
    }

    fn diff_once(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (e, poly) in &self.parts {
            let mut d = poly.diff(var);
            let factor = match var {
                Var::X => e.dx_factor(),
                Var::P => e.dp_factor(),
            };
            if !factor.is_zero() {
                d.add_assign(&poly.mul(&factor));
            }
            out.add_part(e.clone(), d);
        }
        out
    }

    /// Coefficient of gⁿ, with the g-power removed.
    pub fn g_slice(&self, n: u32) -> Self {
        let mut out = Self::zero();
        for (e, poly) in &self.parts {
            let mut slice = Polynomial::zero();
            for (k, c) in poly.terms().filter(|(k, _)| k.gdeg == n) {
                slice.add_term(Powers { gdeg: 0, ..*k }, c);
            }
            out.add_part(e.clone(), slice);
        }
        out
    }

    /// Drop every term of g-degree above `n`.
    pub fn truncate_g(&self, n: u32) -> Self {
        let mut out = Self::zero();
        for (e, poly) in &self.parts {
            let mut kept = Polynomial::zero();
            for (k, c) in poly.terms().filter(|(k, _)| k.gdeg <= n) {
                kept.add_term(*k, c);
            }
            out.add_part(e.clone(), kept);
        }
        out
    }

    fn powers(&self) -> impl Iterator<Item = Powers> + '_ {
        self.parts.values().flat_map(|p| p.terms().map(|(k, _)| *k))
    }

    pub fn max_gdeg(&self) -> Option<u32> {
        self.powers().map(|k| k.gdeg).max()
    }

    pub fn min_gdeg(&self) -> Option<u32> {
        self.powers().map(|k| k.gdeg).min()
    }

    pub fn max_xdeg(&self) -> Option<u32> {
        self.powers().map(|k| k.xdeg).max()
    }

    pub fn max_pdeg(&self) -> Option<i32> {
        self.powers().map(|k| k.pdeg).max()
    }

    pub fn min_pdeg(&self) -> Option<i32> {
        self.powers().map(|k| k.pdeg).min()
    }

    pub fn min_hdeg(&self) -> Option<i32> {
        self.powers().map(|k| k.hdeg).min()
    }

    /// Exact value at a point, for symbols without exponential factors.
    /// `None` if an exponential factor is present or a negative power hits 0.
    pub fn evaluate(
        &self,
        x: &GaussianRational,
        p: &GaussianRational,
        hbar: &GaussianRational,
        g: &GaussianRational,
    ) -> Option<GaussianRational> {
        if !self.is_polynomial() {
            return None;
        }
        let ipow = |base: &GaussianRational, e: i32| -> Option<GaussianRational> {
            if e >= 0 {
                Some(base.pow(e as u32))
            } else {
                base.inv().map(|b| b.pow(e.unsigned_abs()))
            }
        };
        let mut acc = GaussianRational::zero();
        for (k, c) in self.polynomial_part().terms() {
            let v = c
                * &x.pow(k.xdeg)
                * ipow(p, k.pdeg)?
                * ipow(hbar, k.hdeg)?
                * g.pow(k.gdeg);
            acc += &v;
        }
        Some(acc)
    }
}

impl<'a> Add<&'a PhaseSymbol> for &'a PhaseSymbol {
    type Output = PhaseSymbol;
    fn add(self, rhs: &PhaseSymbol) -> PhaseSymbol {
        let mut out = self.clone();
        for (e, p) in &rhs.parts {
            out.add_part(e.clone(), p.clone());
        }
        out
    }
}

impl AddAssign<&PhaseSymbol> for PhaseSymbol {
    fn add_assign(&mut self, rhs: &PhaseSymbol) {
        for (e, p) in &rhs.parts {
            self.add_part(e.clone(), p.clone());
        }
    }
}

impl<'a> Sub<&'a PhaseSymbol> for &'a PhaseSymbol {
    type Output = PhaseSymbol;
    fn sub(self, rhs: &PhaseSymbol) -> PhaseSymbol {
        self + &-rhs
    }
}

impl Neg for &PhaseSymbol {
    type Output = PhaseSymbol;
    fn neg(self) -> PhaseSymbol {
        self.scale(&-GaussianRational::one())
    }
}

impl Neg for PhaseSymbol {
    type Output = PhaseSymbol;
    fn neg(self) -> PhaseSymbol {
        -&self
    }
}

/// Pointwise product; exponents of the exponential factors add.
impl<'a> Mul<&'a PhaseSymbol> for &'a PhaseSymbol {
    type Output = PhaseSymbol;
    fn mul(self, rhs: &PhaseSymbol) -> PhaseSymbol {
        let mut out = PhaseSymbol::zero();
        for (ea, pa) in &self.parts {
            for (eb, pb) in &rhs.parts {
                out.add_part(ea.combine(eb), pa.mul(pb));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PhaseSymbol {
            type Output = PhaseSymbol;
            fn $m(self, rhs: PhaseSymbol) -> PhaseSymbol {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a PhaseSymbol> for PhaseSymbol {
            type Output = PhaseSymbol;
            fn $m(self, rhs: &PhaseSymbol) -> PhaseSymbol {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<GaussianRational> for PhaseSymbol {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}
