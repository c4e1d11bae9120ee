use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{SeriesError, TruncatedSeries};
use crate::rings::{Field, Ring, Q};

/// Binomial coefficient `C(x, k) = x (x-1) ... (x-k+1) / k!` for any
/// integer `x`.
pub fn binomial(x: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (x - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `C(3n, n)`.
pub fn central_trinomial_coeff(n: u64) -> BigInt {
    binomial(&BigInt::from(3 * n), n)
}

/// Fuss–Catalan number `A_m(n, r) = r/(mn+r) C(mn+r, m)`.
pub fn fuss_catalan(n: i64, r: i64, m: u64) -> Result<BigInt, SeriesError> {
    let top = BigInt::from(n) * BigInt::from(m) + BigInt::from(r);
    if top.is_zero() {
        return Err(SeriesError::Domain(format!("mn + r = 0 for n = {n}, r = {r}, m = {m}")));
    }
    let num = BigInt::from(r) * binomial(&top, m);
    let (q, rem) = num.div_rem(&top);
    if !rem.is_zero() {
        return Err(SeriesError::NotIntegral { n, r, m });
    }
    Ok(q)
}

/// `A_m(n, r)` extended through the removable case `mn + r = 0` by the
/// equivalent form `r/m C(mn+r-1, m-1)` (valid for `m >= 1`).
pub fn fuss_catalan_any(n: i64, r: i64, m: u64) -> Result<BigInt, SeriesError> {
    let top = BigInt::from(n) * BigInt::from(m) + BigInt::from(r);
    if !top.is_zero() {
        return fuss_catalan(n, r, m);
    }
    if m == 0 {
        // r = 0: the series B_{n,0} is the constant 1
        return Ok(BigInt::one());
    }
    let num = BigInt::from(r) * binomial(&(top - 1), m - 1);
    let (q, rem) = num.div_rem(&BigInt::from(m));
    if !rem.is_zero() {
        return Err(SeriesError::NotIntegral { n, r, m });
    }
    Ok(q)
}

/// `B_{n,r}(z) = sum A_m(n,r) z^m` through `order`, mapped into the ring of
/// `like`.
pub fn generalized_binomial_series<R: Ring>(
    n: i64,
    r: i64,
    order: usize,
    like: &R,
) -> Result<TruncatedSeries<R>, SeriesError> {
    let coeffs = (0..=order as u64)
        .map(|m| fuss_catalan_any(n, r, m).map(|a| like.from_bigint_like(&a)))
        .collect::<Result<Vec<_>, _>>()?;
    TruncatedSeries::new(coeffs)
}

fn rising(x: &Q, n: u64) -> Q {
    (0..n).fold(Q::int(1), |acc, i| acc.mul(&x.add(&Q::int(i))))
}

/// Coefficient of `z^n` in Gauss's `F(a, b; c; z)`:
/// `(a)_n (b)_n / ((c)_n n!)`.
pub fn hypergeometric_coefficient(a: &Q, b: &Q, c: &Q, n: u64) -> Result<Q, SeriesError> {
    if c.denom().is_one() && !c.numer().is_positive() {
        return Err(SeriesError::Domain(format!("c = {c} is a non-positive integer")));
    }
    let fact = Q::int((1..=n).fold(BigInt::one(), |acc, i| acc * i));
    let num = rising(a, n).mul(&rising(b, n));
    let den = rising(c, n).mul(&fact);
    Ok(num.div(&den).expect("nonzero denominator"))
}

/// First `n <= nmax` where `C(3n, n)` and `A_n(3, 1)` have different
/// parities, if any.
pub fn char2_congruence_first_failure(nmax: u64) -> Result<Option<u64>, SeriesError> {
    let two = BigInt::from(2);
    for n in 0..=nmax {
        let a = central_trinomial_coeff(n).mod_floor(&two);
        let b = fuss_catalan(3, 1, n)?.mod_floor(&two);
        if a != b {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Z;

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, i| acc * i)
    }

    #[test]
    fn central_coefficients() {
        assert_eq!(central_trinomial_coeff(0), BigInt::from(1));
        assert_eq!(central_trinomial_coeff(1), BigInt::from(3));
        // factorial-ratio oracle
        for n in 0..30u64 {
            let oracle = factorial(3 * n) / (factorial(n) * factorial(2 * n));
            assert_eq!(central_trinomial_coeff(n), oracle);
        }
        assert_eq!(central_trinomial_coeff(4), BigInt::from(495));
    }

    #[test]
    fn fuss_catalan_values() {
        assert_eq!(fuss_catalan(0, 5, 2).unwrap(), BigInt::from(10));
        assert_eq!(fuss_catalan(3, 1, 0).unwrap(), BigInt::from(1));
        let a: Vec<BigInt> = (1..=4).map(|m| fuss_catalan(3, 1, m).unwrap()).collect();
        assert_eq!(a, [1, 3, 12, 55].map(BigInt::from));
        assert!(matches!(fuss_catalan(2, -2, 1), Err(SeriesError::Domain(_))));
        assert_eq!(fuss_catalan_any(2, -2, 1).unwrap(), BigInt::from(-2));
        // integer parameters always give integers (they are coefficients
        // of B_n(z)^r), so the remainder check is purely defensive
        for n in -4..=6i64 {
            for r in -4..=4i64 {
                for m in 0..12u64 {
                    assert!(!matches!(fuss_catalan_any(n, r, m), Err(SeriesError::NotIntegral { .. })));
                }
            }
        }
    }

    #[test]
    fn catalan_series() {
        let b = generalized_binomial_series(2, 1, 4, &Z::new(0)).unwrap();
        assert_eq!(b.coeffs().iter().map(|c| c.0.clone()).collect::<Vec<_>>(), [1, 1, 2, 5, 14].map(BigInt::from));
        let b3 = generalized_binomial_series(3, 1, 3, &Z::new(0)).unwrap();
        assert_eq!(b3.coeffs().iter().map(|c| c.0.clone()).collect::<Vec<_>>(), [1, 1, 3, 12].map(BigInt::from));
        let bm = generalized_binomial_series(3, -1, 0, &Z::new(0)).unwrap();
        assert_eq!(bm.coeffs(), &[Z::new(1)]);
    }

    #[test]
    fn hypergeometric_values() {
        let (a, b, c) = (Q::new(1, 3), Q::new(2, 3), Q::new(1, 2));
        assert_eq!(hypergeometric_coefficient(&a, &b, &c, 0).unwrap(), Q::int(1));
        let k = Q::new(27, 4);
        assert_eq!(hypergeometric_coefficient(&a, &b, &c, 1).unwrap().mul(&k), Q::int(3));
        assert_eq!(hypergeometric_coefficient(&a, &b, &c, 3).unwrap().mul(&k.pow(3)), Q::int(84));
        assert!(hypergeometric_coefficient(&a, &b, &Q::int(-2), 1).is_err());
        assert!(hypergeometric_coefficient(&a, &b, &Q::int(0), 1).is_err());
    }
}
