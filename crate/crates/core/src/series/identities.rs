use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::named::{central_trinomial_coeff, generalized_binomial_series, hypergeometric_coefficient};
use super::{SeriesError, TruncatedSeries};
use crate::rings::{Ring, F2, F3, Q, Z};

/// The closed set of coefficient identities the library can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `(4 - 27z) s(z)^3 = 1 + 3 s(z)` with `s = sum C(3n,n) z^n`.
    DiscCubic,
    /// `z B_n(z)^n = B_n(z) - 1`.
    TrinomialShift { n: i64 },
    /// `B_n(z)^r = B_{n,r}(z)`.
    PowerLaw { n: i64, r: i64 },
    /// `a (1 - a)^2 = z` for `a = 1 - B_{3,-1}(z)`.
    Char3Cubic,
    /// `F(1/3, 2/3; 1/2; 27z/4) = sum C(3n,n) z^n`, over the rationals.
    HypergeometricMatch,
}

impl Identity {
    /// Every identity with the parameter ranges used by the test suite.
    pub fn standard_suite() -> Vec<Identity> {
        let mut v = vec![Identity::DiscCubic];
        v.extend((2..=6).map(|n| Identity::TrinomialShift { n }));
        for n in 2..=5 {
            for r in [-2, -1, 1, 2, 3] {
                v.push(Identity::PowerLaw { n, r });
            }
        }
        v.push(Identity::Char3Cubic);
        v.push(Identity::HypergeometricMatch);
        v
    }

    /// The coefficient rings the identity is checked over by default: the
    /// ring it is stated over, plus GF(3) for the characteristic-3 cubic.
    pub fn default_rings(&self) -> &'static [RingChoice] {
        match self {
            Identity::DiscCubic | Identity::HypergeometricMatch => &[RingChoice::Rationals],
            Identity::TrinomialShift { .. } | Identity::PowerLaw { .. } => &[RingChoice::Integers],
            Identity::Char3Cubic => &[RingChoice::Integers, RingChoice::Gf3],
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::DiscCubic => write!(f, "disc_cubic_identity"),
            Identity::TrinomialShift { n } => write!(f, "trinomial_shift({n})"),
            Identity::PowerLaw { n, r } => write!(f, "power_law({n},{r})"),
            Identity::Char3Cubic => write!(f, "char3_cubic"),
            Identity::HypergeometricMatch => write!(f, "hypergeometric_match"),
        }
    }
}

impl FromStr for Identity {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SeriesError::UnknownIdentity(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = match compact.find('(') {
            Some(i) if compact.ends_with(')') => (&compact[..i], Some(&compact[i + 1..compact.len() - 1])),
            Some(_) => return Err(unknown()),
            None => (compact.as_str(), None),
        };
        let ints = |a: &str| -> Result<Vec<i64>, SeriesError> {
            a.split(',').map(|x| x.parse::<i64>().map_err(|_| unknown())).collect()
        };
        match (name, args) {
            ("disc_cubic_identity", None) => Ok(Identity::DiscCubic),
            ("char3_cubic", None) => Ok(Identity::Char3Cubic),
            ("hypergeometric_match", None) => Ok(Identity::HypergeometricMatch),
            ("trinomial_shift", Some(a)) => match ints(a)?[..] {
                [n] => Ok(Identity::TrinomialShift { n }),
                _ => Err(unknown()),
            },
            ("power_law", Some(a)) => match ints(a)?[..] {
                [n, r] => Ok(Identity::PowerLaw { n, r }),
                _ => Err(unknown()),
            },
            _ => Err(unknown()),
        }
    }
}

/// Coefficient ring for an identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingChoice {
    Integers,
    Rationals,
    Gf2,
    Gf3,
}

impl fmt::Display for RingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingChoice::Integers => "ZZ",
            RingChoice::Rationals => "QQ",
            RingChoice::Gf2 => "GF(2)",
            RingChoice::Gf3 => "GF(3)",
        })
    }
}

impl FromStr for RingChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "ZZ" | "Z" => Ok(RingChoice::Integers),
            "QQ" | "Q" => Ok(RingChoice::Rationals),
            "GF2" | "GF(2)" | "F2" => Ok(RingChoice::Gf2),
            "GF3" | "GF(3)" | "F3" => Ok(RingChoice::Gf3),
            _ => Err(format!("unknown ring `{s}` (expected ZZ, QQ, GF2 or GF3)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub ring: String,
    pub order: usize,
    pub holds: bool,
    pub first_failure: Option<Mismatch>,
}

/// Checks an identity coefficientwise through `order`.
pub fn verify_identity(identity: Identity, order: usize, ring: RingChoice) -> Result<IdentityReport, SeriesError> {
    let failure = match ring {
        RingChoice::Integers => check(identity, order, Z::new(0))?,
        RingChoice::Rationals => check(identity, order, Q::int(0))?,
        RingChoice::Gf2 => check(identity, order, F2::new(0))?,
        RingChoice::Gf3 => check(identity, order, F3::new(0))?,
    };
    Ok(IdentityReport {
        identity: identity.to_string(),
        ring: ring.to_string(),
        order,
        holds: failure.is_none(),
        first_failure: failure,
    })
}

fn check<R: Ring>(identity: Identity, order: usize, like: R) -> Result<Option<Mismatch>, SeriesError> {
    let one = TruncatedSeries::one(&like, order);
    let z = TruncatedSeries::monomial(like.one_like(), 1, order);
    let (lhs, rhs) = match identity {
        Identity::DiscCubic => {
            let s = TruncatedSeries::new(
                (0..=order as u64).map(|n| like.from_bigint_like(&central_trinomial_coeff(n))).collect(),
            )?;
            let factor = TruncatedSeries::from_poly(&like, &[like.from_i64_like(4), like.from_i64_like(-27)], order);
            (factor.mul(&s.pow(3)?)?, one.add(&s.scale_int(3))?)
        }
        Identity::TrinomialShift { n } => {
            let b = generalized_binomial_series(n, 1, order, &like)?;
            (b.pow(n)?.shift(1), b.sub(&one)?)
        }
        Identity::PowerLaw { n, r } => {
            let b = generalized_binomial_series(n, 1, order, &like)?;
            (b.pow(r)?, generalized_binomial_series(n, r, order, &like)?)
        }
        Identity::Char3Cubic => {
            let a = one.sub(&generalized_binomial_series(3, -1, order, &like)?)?;
            let c = one.sub(&a)?;
            (a.mul(&c.pow(2)?)?, z)
        }
        Identity::HypergeometricMatch => {
            if like.ring_tag() != Q::int(0).ring_tag() {
                return Err(SeriesError::Domain(format!(
                    "{identity} is an identity over QQ, not {}",
                    like.ring_tag()
                )));
            }
            let (a, b, c) = (Q::new(1, 3), Q::new(2, 3), Q::new(1, 2));
            let k = Q::new(27, 4);
            let mut scale = Q::int(1);
            let mut l = Vec::with_capacity(order + 1);
            let mut r = Vec::with_capacity(order + 1);
            for n in 0..=order as u64 {
                let h = hypergeometric_coefficient(&a, &b, &c, n)?.mul(&scale);
                l.push(embed_q(&like, &h));
                r.push(like.from_bigint_like(&central_trinomial_coeff(n)));
                scale = scale.mul(&k);
            }
            (TruncatedSeries::new(l)?, TruncatedSeries::new(r)?)
        }
    };
    Ok(lhs
        .first_difference(&rhs)?
        .map(|(index, l, r)| Mismatch { index, lhs: l.to_string(), rhs: r.to_string() }))
}

/// Maps a rational into a ring already known to be QQ (via its numerator and
/// denominator, both integral there).
fn embed_q<R: Ring>(like: &R, x: &Q) -> R {
    let num = like.from_bigint_like(x.numer());
    let den = like.from_bigint_like(x.denom());
    num.mul(&den.unit_inverse().expect("denominators are units over QQ"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders() {
        for id in Identity::standard_suite() {
            assert_eq!(id.to_string().parse::<Identity>().unwrap(), id);
        }
        assert_eq!("power_law(3, -1)".parse::<Identity>().unwrap(), Identity::PowerLaw { n: 3, r: -1 });
        assert!(matches!("cardano".parse::<Identity>(), Err(SeriesError::UnknownIdentity(_))));
        assert!(matches!("power_law(3)".parse::<Identity>(), Err(SeriesError::UnknownIdentity(_))));
    }

    #[test]
    fn small_orders_hold() {
        for id in Identity::standard_suite() {
            let r = verify_identity(id, 12, RingChoice::Rationals).unwrap();
            assert!(r.holds, "{id}: {:?}", r.first_failure);
        }
        assert!(verify_identity(Identity::Char3Cubic, 30, RingChoice::Gf3).unwrap().holds);
        assert!(verify_identity(Identity::HypergeometricMatch, 5, RingChoice::Gf3).is_err());
    }

    #[test]
    fn reports_first_failure() {
        // B_3^2 is not B_{3,3}: the z coefficients are 2 and 3
        let wrong = check(Identity::PowerLaw { n: 3, r: 2 }, 5, Q::int(0)).unwrap();
        assert!(wrong.is_none());
        let b = generalized_binomial_series(3, 1, 5, &Q::int(0)).unwrap();
        let diff = b.pow(2).unwrap().first_difference(&generalized_binomial_series(3, 3, 5, &Q::int(0)).unwrap());
        let (i, l, r) = diff.unwrap().unwrap();
        assert_eq!((i, l, r), (1, Q::int(2), Q::int(3)));
    }
}
