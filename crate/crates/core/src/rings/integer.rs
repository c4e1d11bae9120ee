use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Ring, RingTag};

/// An element of the integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Z(pub BigInt);

impl Z {
    pub fn new(n: impl Into<BigInt>) -> Self {
        Z(n.into())
    }
}

impl fmt::Display for Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Z {
    fn ring_tag(&self) -> RingTag {
        RingTag::Integers
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero_like(&self) -> Self {
        Z(BigInt::zero())
    }
    fn one_like(&self) -> Self {
        Z(BigInt::one())
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Z(n.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Z(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Z(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Z(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Z(-&self.0)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.0.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}
