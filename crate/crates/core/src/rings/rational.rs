use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{BaseField, Field, Ring, RingTag};

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Q(BigRational::new(num.into(), den.into()))
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Q(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Ring for Q {
    fn ring_tag(&self) -> RingTag {
        RingTag::Rationals
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::from_bigint(n)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Q(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Q(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Q(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
}

impl Field for Q {}

impl BaseField for Q {
    const CHARACTERISTIC: u64 = 0;

    fn tag() -> RingTag {
        RingTag::Rationals
    }
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_bigint(n: &BigInt) -> Self {
        Q(BigRational::from_integer(n.clone()))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Q(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    fn primitive_scale(coeffs: &[&Self]) -> Self {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            den_lcm = den_lcm.lcm(c.0.denom());
            num_gcd = num_gcd.gcd(c.0.numer());
        }
        if num_gcd.is_zero() {
            return Self::one();
        }
        Q(BigRational::new(den_lcm, num_gcd))
    }
}
