use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{BaseField, Field, Ring, RingTag};

/// Trial-division primality test for small moduli.
pub const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the prime field with `P` elements.
///
/// The modulus is checked for primality when the first element is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp<const P: u64>(u64);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;

impl<const P: u64> Fp<P> {
    const PRIME_CHECK: () = assert!(is_prime(P) && P < (1 << 31), "modulus must be a small prime");

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME_CHECK;
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn residue(self) -> u64 {
        self.0
    }

    fn pow_u64(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn ring_tag(&self) -> RingTag {
        RingTag::PrimeField(P)
    }
    fn characteristic(&self) -> u64 {
        P
    }
    fn zero_like(&self) -> Self {
        Fp(0)
    }
    fn one_like(&self) -> Self {
        Fp(1)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::from_bigint(n)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow_u64(P - 2))
        }
    }
}

impl<const P: u64> Field for Fp<P> {}

impl<const P: u64> BaseField for Fp<P> {
    const CHARACTERISTIC: u64 = P;

    fn tag() -> RingTag {
        RingTag::PrimeField(P)
    }
    fn zero() -> Self {
        Self::new(0)
    }
    fn one() -> Self {
        Self::new(1)
    }
    fn from_bigint(n: &BigInt) -> Self {
        let r = n % BigInt::from(P);
        Self::new(r.to_i64().expect("residue fits"))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        Self::from_bigint(den).inv().map(|d| Self::from_bigint(num).mul(&d))
    }
    fn to_f64(&self) -> f64 {
        self.0 as f64
    }
    fn is_negative(&self) -> bool {
        false
    }
    fn primitive_scale(coeffs: &[&Self]) -> Self {
        coeffs
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .and_then(|c| c.inv())
            .unwrap_or_else(Self::one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn field_arithmetic_mod_3() {
        let two = F3::new(2);
        assert_eq!(two.mul(&two), F3::new(1));
        assert_eq!(two.inv(), Some(two));
        assert_eq!(F3::new(-1), two);
        assert_eq!(F3::from_bigint(&BigInt::from(-7)), two);
        assert!(F3::new(0).inv().is_none());
    }

    #[test]
    fn fermat_inverse_mod_7() {
        for a in 1..7 {
            let x = Fp::<7>::new(a);
            assert_eq!(x.mul(&x.inv().unwrap()), Fp::<7>::new(1));
        }
    }
}
