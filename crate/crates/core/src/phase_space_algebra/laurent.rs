//! Laurent polynomials in ħ over Q(i).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::number::GaussianRational;

/// Σ cₖ ħᵏ with finitely many nonzero cₖ, k ∈ Z.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HbarScalar {
    coeffs: BTreeMap<i32, GaussianRational>,
}

impl HbarScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, 0)
    }

    /// `c·ħ^k`.
    pub fn term(c: GaussianRational, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, GaussianRational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i32) -> GaussianRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `(ħ-degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussianRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiply by ħ^k.
    pub fn shift(&self, k: i32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(d, v)| (d + k, v.clone())).collect() }
    }

    /// Divide by `c·ħ^k`, `c ≠ 0`.
    pub fn div_term(&self, c: &GaussianRational, k: i32) -> Self {
        let inv = c.inv().expect("division by zero");
        self.scale(&inv).shift(-k)
    }

    /// Exact square root as a Laurent polynomial in ħ, if one exists.
    ///
    /// The square of a Laurent polynomial with lowest term aₘħᵐ has lowest
    /// term aₘ²ħ²ᵐ, so the root is determined order by order from the bottom;
    /// it exists iff the truncated candidate squares back to `self`.
    pub fn sqrt(&self) -> Option<Self> {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return Some(Self::zero());
        };
        if lo % 2 != 0 || hi % 2 != 0 {
            return None;
        }
        let base = lo / 2;
        let lead = self.coeff(lo).sqrt()?;
        let two_lead = &lead + &lead;
        let len = ((hi - lo) / 2) as usize;
        let mut roots = vec![lead];
        // (Σ rⱼ ħ^{base+j})² matched at ħ^{lo+k}: 2 r₀ r_k + Σ_{0<j<k} rⱼ r_{k−j} = c_{lo+k}
        for k in 1..=len {
            let mut rest = self.coeff(lo + k as i32);
            for j in 1..k {
                rest -= &(&roots[j] * &roots[k - j]);
            }
            roots.push(&rest / &two_lead);
        }
        let root = Self::from_terms(roots.into_iter().enumerate().map(|(j, c)| (base + j as i32, c)));
        (&root * &root == *self).then_some(root)
    }
}

impl<'a> Add<&'a HbarScalar> for &'a HbarScalar {
    type Output = HbarScalar;
    fn add(self, rhs: &HbarScalar) -> HbarScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }
}

impl<'a> Sub<&'a HbarScalar> for &'a HbarScalar {
    type Output = HbarScalar;
    fn sub(self, rhs: &HbarScalar) -> HbarScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a HbarScalar> for &'a HbarScalar {
    type Output = HbarScalar;
    fn mul(self, rhs: &HbarScalar) -> HbarScalar {
        let mut out = HbarScalar::zero();
        for (ka, a) in &self.coeffs {
            for (kb, b) in &rhs.coeffs {
                out.add_term(ka + kb, &(a * b));
            }
        }
        out
    }
}

impl Neg for &HbarScalar {
    type Output = HbarScalar;
    fn neg(self) -> HbarScalar {
        HbarScalar { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl From<GaussianRational> for HbarScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl HbarScalar {
    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}
