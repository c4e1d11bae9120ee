//! Truncated formal power series over an exact ring, the named coefficient
//! sequences (central binomial, Fuss–Catalan, hypergeometric) and a closed
//! registry of coefficient identities checked through a given order.

mod identities;
mod named;

use std::fmt;

use thiserror::Error;

use crate::rings::{Ring, RingTag};

pub use identities::{verify_identity, Identity, IdentityReport, Mismatch, RingChoice};
pub use named::{
    binomial, central_trinomial_coeff, char2_congruence_first_failure, fuss_catalan, fuss_catalan_any,
    generalized_binomial_series, hypergeometric_coefficient,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingTag, RingTag),
    #[error("constant term {0} is not a unit, the series has no inverse")]
    NonUnitConstant(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("A_{m}({n},{r}) is not an integer")]
    NotIntegral { n: i64, r: i64, m: u64 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("a series needs at least one coefficient")]
    Empty,
}

/// `a_0 + a_1 z + ... + a_N z^N + O(z^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    coeffs: Vec<R>,
    tag: RingTag,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Builds a series of order `coeffs.len() - 1`; all coefficients must
    /// live in the same ring.
    pub fn new(coeffs: Vec<R>) -> Result<Self, SeriesError> {
        let first = coeffs.first().ok_or(SeriesError::Empty)?;
        let tag = first.ring_tag();
        if let Some(bad) = coeffs.iter().map(Ring::ring_tag).find(|t| *t != tag) {
            return Err(SeriesError::RingMismatch(tag, bad));
        }
        Ok(TruncatedSeries { coeffs, tag })
    }

    fn from_parts(coeffs: Vec<R>, tag: RingTag) -> Self {
        debug_assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs, tag }
    }

    pub fn zero(like: &R, order: usize) -> Self {
        Self::from_parts(vec![like.zero_like(); order + 1], like.ring_tag())
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        let tag = c.ring_tag();
        coeffs[0] = c;
        Self::from_parts(coeffs, tag)
    }

    pub fn one(like: &R, order: usize) -> Self {
        Self::constant(like.one_like(), order)
    }

    /// `c z^k` truncated at `order`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(&c, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Polynomial `sum c_i z^i`, padded or truncated to `order`.
    pub fn from_poly(like: &R, coeffs: &[R], order: usize) -> Self {
        let mut s = Self::zero(like, order);
        for (i, c) in coeffs.iter().take(order + 1).enumerate() {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn ring_tag(&self) -> &RingTag {
        &self.tag
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_parts(self.coeffs[..=order.min(self.order())].to_vec(), self.tag.clone())
    }

    fn check(&self, other: &Self) -> Result<usize, SeriesError> {
        if self.tag != other.tag {
            return Err(SeriesError::RingMismatch(self.tag.clone(), other.tag.clone()));
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.check(other)?;
        let c = (0..=n).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect();
        Ok(Self::from_parts(c, self.tag.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.check(other)?;
        let c = (0..=n).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect();
        Ok(Self::from_parts(c, self.tag.clone()))
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(self.coeffs.iter().map(Ring::neg).collect(), self.tag.clone())
    }

    pub fn scale(&self, c: &R) -> Result<Self, SeriesError> {
        let tag = c.ring_tag();
        if tag != self.tag {
            return Err(SeriesError::RingMismatch(self.tag.clone(), tag));
        }
        Ok(Self::from_parts(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.tag.clone()))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        Self::from_parts(self.coeffs.iter().map(|a| a.scale_int(n)).collect(), self.tag.clone())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.check(other)?;
        Ok(self.mul_unchecked(other, n))
    }

    fn mul_unchecked(&self, other: &Self, n: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_parts(out, self.tag.clone())
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let zero = self.coeffs[0].zero_like();
        let c = (0..=n).map(|i| if i < k { zero.clone() } else { self.coeffs[i - k].clone() }).collect();
        Self::from_parts(c, self.tag.clone())
    }

    /// Multiplicative inverse; needs a unit constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let b0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| SeriesError::NonUnitConstant(self.coeffs[0].to_string()))?;
        let n = self.order();
        let mut b = Vec::with_capacity(n + 1);
        b.push(b0.clone());
        for k in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&b[k - j]));
                }
            }
            b.push(acc.mul(&b0).neg());
        }
        Ok(Self::from_parts(b, self.tag.clone()))
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, k: i64) -> Result<Self, SeriesError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let n = self.order();
        let mut acc = Self::one(&self.coeffs[0], n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq, n);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq, n);
            }
        }
        Ok(acc)
    }

    /// Index and values of the first coefficient where two series differ,
    /// through the smaller order.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(usize, R, R)>, SeriesError> {
        let n = self.check(other)?;
        Ok((0..=n)
            .find(|&i| self.coeffs[i] != other.coeffs[i])
            .map(|i| (i, self.coeffs[i].clone(), other.coeffs[i].clone())))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        let c: Vec<S> = self.coeffs.iter().map(f).collect();
        let tag = c[0].ring_tag();
        TruncatedSeries::from_parts(c, tag)
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}
