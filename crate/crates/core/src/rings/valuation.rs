use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::multipoly::same_vars;
use super::{BaseField, DepressedCubic, DepressedQuartic, GeneralCubic, MultiPoly, RationalFunction, RingError, Vars};

/// Value of a valuation: exact, a lower bound from a truncated computation,
/// or infinite for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    AtLeast(i64),
    Infinite,
}

impl Valuation {
    /// Whether the valuation is known to be strictly greater than `n`.
    pub fn exceeds(&self, n: i64) -> bool {
        match *self {
            Valuation::Finite(k) | Valuation::AtLeast(k) => k > n,
            Valuation::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<i64> {
        match *self {
            Valuation::Finite(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::AtLeast(k) => write!(f, ">={k}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The discriminant-type primes the library knows how to complete at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeForm {
    /// `-4p^3 - 27q^2` in `k[p,q]`, characteristic not 2 or 3.
    DepressedCubicDisc,
    /// discriminant of `t^3 + c1 t^2 + c2 t + c3` in `k[c1,c2,c3]`,
    /// characteristic not 2.
    GeneralCubicDisc,
    /// `c1 c2 + c3`, characteristic 2.
    Char2Delta,
    /// `q` for the depressed cubic, characteristic 2.
    Char2DepressedDelta,
    /// discriminant of `t^4 + c t^2 + d t + e`, characteristic not 2 or 3.
    QuarticDisc,
    /// `p` in `k[p,q]`, characteristic 3: the completion in which the
    /// depressed cubic has no root.
    Char3DepressedP,
}

/// A prime element of a polynomial ring, restricted to the known forms.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscPrime<F: BaseField> {
    form: PrimeForm,
    poly: MultiPoly<F>,
}

impl<F: BaseField> DiscPrime<F> {
    pub fn new(form: PrimeForm) -> Result<Self, RingError> {
        let ch = F::CHARACTERISTIC;
        let wrong = |expected: &str| RingError::WrongCharacteristic { expected: expected.into(), found: ch };
        let poly = match form {
            PrimeForm::DepressedCubicDisc => {
                if ch == 2 || ch == 3 {
                    return Err(wrong("not 2 or 3"));
                }
                let v = Vars::new(&["p", "q"]);
                DepressedCubic::new(MultiPoly::var(&v, 0), MultiPoly::var(&v, 1)).discriminant()
            }
            PrimeForm::GeneralCubicDisc => {
                if ch == 2 {
                    return Err(wrong("not 2"));
                }
                let v = Vars::new(&["c1", "c2", "c3"]);
                GeneralCubic::new(MultiPoly::var(&v, 0), MultiPoly::var(&v, 1), MultiPoly::var(&v, 2))
                    .discriminant()
            }
            PrimeForm::Char2Delta => {
                if ch != 2 {
                    return Err(wrong("2"));
                }
                let v = Vars::new(&["c1", "c2", "c3"]);
                MultiPoly::var(&v, 0).mul(&MultiPoly::var(&v, 1)).add(&MultiPoly::var(&v, 2))
            }
            PrimeForm::Char2DepressedDelta => {
                if ch != 2 {
                    return Err(wrong("2"));
                }
                MultiPoly::var(&Vars::new(&["p", "q"]), 1)
            }
            PrimeForm::QuarticDisc => {
                if ch == 2 || ch == 3 {
                    return Err(wrong("not 2 or 3"));
                }
                let v = Vars::new(&["c", "d", "e"]);
                DepressedQuartic::new(MultiPoly::var(&v, 0), MultiPoly::var(&v, 1), MultiPoly::var(&v, 2))
                    .discriminant()
            }
            PrimeForm::Char3DepressedP => {
                if ch != 3 {
                    return Err(wrong("3"));
                }
                MultiPoly::var(&Vars::new(&["p", "q"]), 0)
            }
        };
        Ok(DiscPrime { form, poly })
    }

    /// Accepts a user-supplied polynomial only if it is one of the known
    /// forms (up to a nonzero scalar) over the same variable names.
    pub fn from_poly(poly: &MultiPoly<F>) -> Result<Self, RingError> {
        if poly.is_constant() {
            return Err(RingError::DegeneratePrime);
        }
        const FORMS: [PrimeForm; 6] = [
            PrimeForm::DepressedCubicDisc,
            PrimeForm::GeneralCubicDisc,
            PrimeForm::Char2Delta,
            PrimeForm::Char2DepressedDelta,
            PrimeForm::QuarticDisc,
            PrimeForm::Char3DepressedP,
        ];
        for form in FORMS {
            let Ok(known) = Self::new(form) else { continue };
            if known.poly.vars().names() != poly.vars().names() {
                continue;
            }
            let Some(candidate) = poly.reindex(known.poly.vars()) else { continue };
            if candidate.monic() == known.poly.monic() {
                return Ok(known);
            }
        }
        Err(RingError::UnknownPrime(poly.to_string()))
    }

    pub fn form(&self) -> PrimeForm {
        self.form
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.poly
    }

    pub fn vars(&self) -> &Arc<Vars> {
        self.poly.vars()
    }

    /// Variable used to write residues: the one of least positive degree in
    /// the prime, preferring a constant leading coefficient, then the last.
    pub fn main_var(&self) -> usize {
        (0..self.poly.nvars())
            .filter(|&v| self.poly.involves(v))
            .min_by_key(|&v| {
                let deg = self.poly.degree_in(v);
                let lc_const = self.poly.coeffs_in(v)[deg as usize].is_constant();
                (deg, !lc_const, std::cmp::Reverse(v))
            })
            .expect("prime is non-constant")
    }

    /// Multiplicity of the prime in a polynomial (`None` for zero).
    pub fn poly_valuation(&self, p: &MultiPoly<F>) -> Option<i64> {
        if p.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = p.clone();
        while let Some(next) = cur.exact_div(&self.poly) {
            cur = next;
            k += 1;
        }
        Some(k)
    }
}

/// `v(num) - v(den)` by trial division, `Infinite` for zero.
pub fn pi_adic_valuation<F: BaseField>(
    x: &RationalFunction<F>,
    pi: &DiscPrime<F>,
) -> Result<Valuation, RingError> {
    let x = if same_vars(x.vars(), pi.vars()) {
        x.clone()
    } else {
        x.reindex(pi.vars()).ok_or_else(|| {
            RingError::Domain(format!("{} is not in the ring of {}", x, pi.poly()))
        })?
    };
    match pi.poly_valuation(x.numer()) {
        None => Ok(Valuation::Infinite),
        Some(vn) => {
            let vd = pi.poly_valuation(x.denom()).expect("denominator nonzero");
            Ok(Valuation::Finite(vn - vd))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Field, Ring, F2, F3, Q};

    #[test]
    fn valuation_examples() {
        let pi = DiscPrime::<Q>::new(PrimeForm::GeneralCubicDisc).unwrap();
        let v = pi.vars().clone();
        let delta = RationalFunction::from_poly(pi.poly().clone());
        let c1 = RationalFunction::var(&v, 0);
        let c2 = RationalFunction::var(&v, 1);
        let x = delta.mul(&delta).mul(&c1).div(&c2).unwrap();
        assert_eq!(pi_adic_valuation(&x, &pi).unwrap(), Valuation::Finite(2));
        assert_eq!(pi_adic_valuation(&RationalFunction::zero(&v), &pi).unwrap(), Valuation::Infinite);

        let pq = DiscPrime::<Q>::new(PrimeForm::DepressedCubicDisc).unwrap();
        let d = RationalFunction::from_poly(pq.poly().clone());
        let p = RationalFunction::var(pq.vars(), 0);
        assert_eq!(pi_adic_valuation(&d.div(&p.pow(3)).unwrap(), &pq).unwrap(), Valuation::Finite(1));
        assert_eq!(pi_adic_valuation(&p.div(&d).unwrap(), &pq).unwrap(), Valuation::Finite(-1));
    }

    #[test]
    fn recognizes_known_forms_and_rejects_others() {
        let v = Vars::new(&["p", "q"]);
        let p = MultiPoly::<Q>::var(&v, 0);
        let q = MultiPoly::<Q>::var(&v, 1);
        let disc = p.pow(3).scale(&Q::int(4)).add(&q.pow(2).scale(&Q::int(27)));
        assert_eq!(DiscPrime::from_poly(&disc).unwrap().form(), PrimeForm::DepressedCubicDisc);
        assert_eq!(DiscPrime::from_poly(&p.add(&q)), Err(RingError::UnknownPrime("p + q".into())));
        assert_eq!(DiscPrime::from_poly(&MultiPoly::<Q>::int(&v, 5)), Err(RingError::DegeneratePrime));
        assert_eq!(DiscPrime::from_poly(&MultiPoly::<Q>::zero(&v)), Err(RingError::DegeneratePrime));
    }

    #[test]
    fn main_variables() {
        assert_eq!(DiscPrime::<Q>::new(PrimeForm::DepressedCubicDisc).unwrap().main_var(), 1);
        assert_eq!(DiscPrime::<Q>::new(PrimeForm::GeneralCubicDisc).unwrap().main_var(), 2);
        assert_eq!(DiscPrime::<F3>::new(PrimeForm::GeneralCubicDisc).unwrap().main_var(), 2);
        assert_eq!(DiscPrime::<F2>::new(PrimeForm::Char2Delta).unwrap().main_var(), 2);
        assert_eq!(DiscPrime::<Q>::new(PrimeForm::QuarticDisc).unwrap().main_var(), 2);
        assert_eq!(DiscPrime::<F3>::new(PrimeForm::Char3DepressedP).unwrap().main_var(), 0);
        assert!(DiscPrime::<F2>::new(PrimeForm::DepressedCubicDisc).is_err());
    }
}
