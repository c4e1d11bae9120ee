use std::fmt;

use super::{Field, Ring};

/// Dense univariate polynomial over a field, lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<K: Field> {
    coeffs: Vec<K>,
    zero: K,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>, zero: &K) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, zero: zero.zero_like() }
    }

    pub fn zero(zero: &K) -> Self {
        UniPoly { coeffs: Vec::new(), zero: zero.zero_like() }
    }

    pub fn constant(c: K) -> Self {
        let z = c.zero_like();
        Self::new(vec![c], &z)
    }

    /// The indeterminate itself.
    pub fn x(zero: &K) -> Self {
        UniPoly { coeffs: vec![zero.zero_like(), zero.one_like()], zero: zero.zero_like() }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_elem(&self) -> &K {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(c, &self.zero)
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(Ring::neg).collect(), zero: self.zero.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &K) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(s)).collect(), &self.zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, &self.zero)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.zero.clone(); k];
        c.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: c, zero: self.zero.clone() }
    }

    /// Euclidean division; `None` for a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let db = divisor.degree()?;
        let lc_inv = divisor.leading_coeff().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Some((Self::zero(&self.zero), self.clone()));
        }
        let mut quot = vec![self.zero.clone(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = rem[k + db].clone();
            if c.is_zero() {
                continue;
            }
            let q = c.mul(&lc_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = rem[k + j].sub(&q.mul(d));
                }
            }
            quot[k] = q;
        }
        rem.truncate(db);
        Some((Self::new(quot, &self.zero), Self::new(rem, &self.zero)))
    }

    pub fn rem(&self, divisor: &Self) -> Option<Self> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        // extended Euclid tracking only the cofactor of `self`
        let mut r0 = m.clone();
        let mut r1 = self.rem(m)?;
        let mut s0 = Self::zero(&self.zero);
        let mut s1 = Self::constant(self.zero.one_like());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.leading_coeff().inv()?;
        s0.scale(&c).rem(m)
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc.mul(x).add(c))
    }

    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale_int(i as i64)).collect();
        Self::new(c, &self.zero)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.zero.one_like());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<K: Field> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Q;

    fn poly(c: &[i64]) -> UniPoly<Q> {
        UniPoly::new(c.iter().map(|&x| Q::int(x)).collect(), &Q::int(0))
    }

    #[test]
    fn division_identity() {
        let a = poly(&[1, -3, 0, 2, 5]);
        let b = poly(&[2, 0, 3]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn modular_inverse() {
        let m = poly(&[-27, 0, 0, 1]).pow(2);
        let a = poly(&[5, 1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul(&inv).rem(&m).unwrap(), poly(&[1]));
        assert!(poly(&[-3, 1]).inverse_mod(&m).is_none());
    }
}
