use serde::Serialize;

use super::local::LocalRing;
use super::AdicError;
use crate::rings::{DiscPrime, PrimeForm, RationalFunction, Ring, F3};

/// Whether a rational function over GF(3) is a cube. In characteristic 3
/// the cubes of `GF(3)(x1, ..., xk)` are exactly `GF(3)(x1^3, ..., xk^3)`:
/// Frobenius fixes every constant, and a reduced fraction with monic
/// denominator is unique, so it suffices that every exponent of the
/// numerator and denominator is divisible by 3.
pub fn is_cube_char3(x: &RationalFunction<F3>) -> bool {
    [x.numer(), x.denom()]
        .iter()
        .all(|p| p.terms().all(|(m, _)| m.0.iter().all(|e| e % 3 == 0)))
}

/// Why `t^3 + p t + q` over `GF(3)(p, q)` has no root in the completion
/// at `pi = p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativeControlCertificate {
    /// The cubic, reduced modulo the prime.
    pub residue_cubic: String,
    /// `c` with the residue cubic equal to `t^3 - c`.
    pub cube_target: String,
    /// An exponent of `c` not divisible by 3.
    pub witness_exponent: u32,
    /// `f'` is identically zero modulo the prime, so no residue root could
    /// be lifted by Newton's method either.
    pub derivative_vanishes_mod_pi: bool,
    pub rootless: bool,
}

/// Certifies that the depressed generic cubic in characteristic 3 has no
/// root in the residue field `GF(3)(q)` of the completion at `p`: modulo
/// `p` it is `t^3 + q`, a root would make `-q` a cube, and `-q` has a
/// `q`-exponent that is not a multiple of 3.
pub fn char3_negative_control() -> Result<NegativeControlCertificate, AdicError> {
    let pi = DiscPrime::<F3>::new(PrimeForm::Char3DepressedP)?;
    let vars = pi.vars().clone();
    let p = RationalFunction::<F3>::var(&vars, 0);
    let q = RationalFunction::<F3>::var(&vars, 1);
    let residue = LocalRing::new(&pi, 0);
    let rp = residue.embed(&p)?.to_rational_function();
    let rq = residue.embed(&q)?.to_rational_function();
    if !rp.is_zero() {
        return Err(AdicError::VerificationFailed("p does not vanish modulo the prime".into()));
    }
    let target = rq.neg();
    let witness = target
        .numer()
        .terms()
        .chain(target.denom().terms())
        .flat_map(|(m, _)| m.0.iter().copied())
        .find(|e| e % 3 != 0)
        .unwrap_or(0);
    // f'(t) = 3t^2 + p = p in characteristic 3
    let derivative = RationalFunction::<F3>::var(&vars, 0);
    let derivative_vanishes = residue.embed(&derivative)?.is_zero();
    Ok(NegativeControlCertificate {
        residue_cubic: format!("t^3 + {rq}"),
        cube_target: target.to_string(),
        witness_exponent: witness,
        derivative_vanishes_mod_pi: derivative_vanishes,
        rootless: !is_cube_char3(&target),
    })
}
