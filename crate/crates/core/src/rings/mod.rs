//! Exact coefficient rings.
//!
//! Elements carry whatever context they need (variable names for the
//! polynomial rings), so generic code can build zeros and ones from any
//! element it already holds.

mod cubic;
mod gcd;
mod integer;
mod multipoly;
mod prime_field;
mod ratfunc;
mod rational;
mod univariate;
mod valuation;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

pub(crate) use gcd::gcd;
pub use cubic::{depress_cubic, char2_delta, DepressedCubic, DepressedQuartic, GeneralCubic};
pub use integer::Z;
pub use multipoly::{Monomial, MultiPoly, Vars};
pub use prime_field::{is_prime, Fp, F2, F3};
pub use ratfunc::RationalFunction;
pub use rational::Q;
pub use univariate::UniPoly;
pub use valuation::{pi_adic_valuation, DiscPrime, PrimeForm, Valuation};

/// Identifies a coefficient ring at runtime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    Integers,
    Rationals,
    PrimeField(u64),
    Polynomials { base: Box<RingTag>, vars: Vec<String> },
    RationalFunctions { base: Box<RingTag>, vars: Vec<String> },
    /// Valuation ring of a pi-adic completion, modulo `pi^{order+1}`.
    Completion { base: Box<RingTag>, pi: String, order: usize },
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integers => write!(f, "ZZ"),
            RingTag::Rationals => write!(f, "QQ"),
            RingTag::PrimeField(p) => write!(f, "GF({p})"),
            RingTag::Polynomials { base, vars } => write!(f, "{base}[{}]", vars.join(",")),
            RingTag::RationalFunctions { base, vars } => write!(f, "{base}({})", vars.join(",")),
            RingTag::Completion { base, pi, order } => write!(f, "{base}[[{pi}]]/({pi})^{}", order + 1),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(RingTag, RingTag),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires characteristic {expected}, ring has characteristic {found}")]
    WrongCharacteristic { expected: String, found: u64 },
    #[error("the valuation prime must be a non-constant polynomial")]
    DegeneratePrime,
    #[error("polynomial {0} is not one of the supported discriminant primes")]
    UnknownPrime(String),
    #[error("{0}")]
    Domain(String),
}

/// A commutative ring with identity whose elements know their ring.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn ring_tag(&self) -> RingTag;
    fn characteristic(&self) -> u64;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_bigint_like(&self, n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse of a unit, `None` otherwise.
    fn unit_inverse(&self) -> Option<Self>;

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_bigint_like(&BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&self.from_i64_like(n))
    }
}

/// A ring in which every nonzero element is a unit.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self> {
        self.unit_inverse()
    }

    fn div(&self, rhs: &Self) -> Result<Self, RingError> {
        rhs.inv().map(|r| self.mul(&r)).ok_or(RingError::DivisionByZero)
    }
}

/// A field of constants that can serve as polynomial coefficients.
///
/// Unlike [`Ring`], constants can be built out of thin air.
pub trait BaseField: Field {
    const CHARACTERISTIC: u64;

    fn tag() -> RingTag;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    /// `None` when the denominator vanishes in this field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Whether the rendered form starts with a minus sign.
    fn is_negative(&self) -> bool;
    /// Factor that makes a coefficient list primitive: integral with unit
    /// content over QQ, leading coefficient one over a prime field.
    fn primitive_scale(coeffs: &[&Self]) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
}
