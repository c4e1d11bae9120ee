use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::gcd::gcd;
use super::multipoly::same_vars;
use super::{BaseField, Field, MultiPoly, Ring, RingError, RingTag, Vars};

/// Quotient of two multivariate polynomials in lowest terms, with a monic
/// denominator (graded-lex leading coefficient one).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<F: BaseField> {
    num: MultiPoly<F>,
    den: MultiPoly<F>,
}

impl<F: BaseField> RationalFunction<F> {
    pub fn new(num: MultiPoly<F>, den: MultiPoly<F>) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if !same_vars(num.vars(), den.vars()) {
            return Err(RingError::Mismatch(num.ring_tag(), den.ring_tag()));
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: MultiPoly<F>) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn constant(vars: &Arc<Vars>, c: F) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn int(vars: &Arc<Vars>, n: i64) -> Self {
        Self::from_poly(MultiPoly::int(vars, n))
    }

    pub fn ratio(vars: &Arc<Vars>, n: i64, d: i64) -> Self {
        let c = F::from_ratio(&BigInt::from(n), &BigInt::from(d)).expect("denominator invertible in the base field");
        Self::constant(vars, c)
    }

    pub fn var(vars: &Arc<Vars>, idx: usize) -> Self {
        Self::from_poly(MultiPoly::var(vars, idx))
    }

    pub fn zero(vars: &Arc<Vars>) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &Arc<Vars>) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn numer(&self) -> &MultiPoly<F> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<F> {
        &self.den
    }

    pub fn vars(&self) -> &Arc<Vars> {
        self.num.vars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<F> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n.mul(&d.inv()?))
    }

    /// Full normalization: cancel the gcd and make the denominator monic.
    fn reduce(num: MultiPoly<F>, den: MultiPoly<F>) -> Self {
        if num.is_zero() {
            let one = MultiPoly::one(num.vars());
            return RationalFunction { num, den: one };
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            let one = MultiPoly::one(num.vars());
            return RationalFunction { num: num.scale(&inv), den: one };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Self::monic_den(num, den)
    }

    fn monic_den(num: MultiPoly<F>, den: MultiPoly<F>) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        if den.is_constant() {
            let one = MultiPoly::one(num.vars());
            return RationalFunction { num: num.scale(&inv), den: one };
        }
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly<F>) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn eval(&self, point: &[F]) -> Option<F> {
        let d = self.den.eval(point);
        d.inv().map(|di| self.num.eval(point).mul(&di))
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    pub fn reindex(&self, target: &Arc<Vars>) -> Option<Self> {
        let num = self.num.reindex(target)?;
        let den = self.den.reindex(target)?;
        Some(Self::monic_den(num, den))
    }

    /// Substitutes rational functions (over `target`) for the variables.
    pub fn compose(&self, target: &Arc<Vars>, images: &[RationalFunction<F>]) -> Result<Self, RingError> {
        let eval = |p: &MultiPoly<F>| {
            let mut acc = Self::zero(target);
            for (m, c) in p.terms() {
                let mut t = Self::constant(target, c.clone());
                for (img, &e) in images.iter().zip(m.0.iter()) {
                    if e > 0 {
                        t = t.mul(&img.pow(e));
                    }
                }
                acc = acc.add(&t);
            }
            acc
        };
        eval(&self.num).div(&eval(&self.den))
    }
}

impl<F: BaseField> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let single_factor = self.den.num_terms() == 1
            && self.den.leading_term().is_some_and(|(m, c)| c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1);
        if single_factor {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl<F: BaseField> Ring for RationalFunction<F> {
    fn ring_tag(&self) -> RingTag {
        RingTag::RationalFunctions { base: Box::new(F::tag()), vars: self.vars().names().to_vec() }
    }
    fn characteristic(&self) -> u64 {
        F::CHARACTERISTIC
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        Self::one(self.vars())
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::constant(self.vars(), F::from_bigint(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Self::from_poly(n);
            }
            return Self::reduce(n, self.den.clone());
        }
        // one side polynomial: the sum stays in lowest terms
        if rhs.den.is_one() {
            return RationalFunction { num: self.num.add(&rhs.num.mul(&self.den)), den: self.den.clone() };
        }
        if self.den.is_one() {
            return RationalFunction { num: rhs.num.add(&self.num.mul(&rhs.den)), den: rhs.den.clone() };
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            let den = self.den.mul(&rhs.den);
            return Self::monic_den(num, den);
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = rhs.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if num.is_zero() {
            return Self::zero(self.vars());
        }
        let g2 = gcd(&num, &g);
        let num = num.exact_div(&g2).expect("gcd divides");
        let den = b1.mul(&d1).mul(&g.exact_div(&g2).expect("gcd divides"));
        Self::monic_den(num, den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.vars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        let cancel = |n: &MultiPoly<F>, d: &MultiPoly<F>| -> (MultiPoly<F>, MultiPoly<F>) {
            if d.is_one() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (n.exact_div(&g).expect("gcd divides"), d.exact_div(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        Self::monic_den(a.mul(&c), b.mul(&d))
    }

    fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::monic_den(self.den.clone(), self.num.clone()))
    }
}

impl<F: BaseField> Field for RationalFunction<F> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Q;

    fn xy() -> Arc<Vars> {
        Vars::new(&["x", "y"])
    }

    #[test]
    fn lowest_terms_and_monic_denominator() {
        let v = xy();
        let x = MultiPoly::<Q>::var(&v, 0);
        let y = MultiPoly::<Q>::var(&v, 1);
        let num = x.pow(2).sub(&y.pow(2)).scale(&Q::int(4));
        let den = x.sub(&y).scale(&Q::int(2));
        let r = RationalFunction::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.to_string(), "2*x + 2*y");
        let s = RationalFunction::new(x.clone(), y.scale(&Q::int(-3))).unwrap();
        assert_eq!(s.to_string(), "-1/3*x/y");
    }

    #[test]
    fn inverse_roundtrip() {
        let v = xy();
        let x = RationalFunction::<Q>::var(&v, 0);
        let y = RationalFunction::<Q>::var(&v, 1);
        let r = x.mul(&x).add(&y).div(&x.sub(&y.scale(&Q::int(3)))).unwrap();
        assert!(r.mul(&r.inv().unwrap()).is_one());
        assert!(r.sub(&r).is_zero());
    }

    #[test]
    fn addition_with_shared_denominator_factor() {
        let v = xy();
        let x = RationalFunction::<Q>::var(&v, 0);
        let y = RationalFunction::<Q>::var(&v, 1);
        let one = RationalFunction::one(&v);
        // 1/(x(x+y)) + 1/(y(x+y)) = 1/(xy)
        let a = one.div(&x.mul(&x.add(&y))).unwrap();
        let b = one.div(&y.mul(&x.add(&y))).unwrap();
        assert_eq!(a.add(&b), one.div(&x.mul(&y)).unwrap());
    }
}
