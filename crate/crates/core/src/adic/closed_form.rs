use num_bigint::BigInt;

use super::local::{DiscAdicElement, LocalRing};
use super::{char2_depress, AdicError, Cubic, LiftConfig};
use crate::rings::{BaseField, DiscPrime, Field, RationalFunction, Ring};
use crate::series::{central_trinomial_coeff, fuss_catalan_any};

/// `sum_{n <= N} a_n z^n` by Horner's rule; `z` must lie in the maximal
/// ideal for the truncation to be exact modulo `pi^{N+1}`.
fn sum_series<F: BaseField>(coeffs: &[BigInt], z: &DiscAdicElement<F>) -> Result<DiscAdicElement<F>, AdicError> {
    if !z.valuation().exceeds(0) {
        return Err(AdicError::NotConvergent(z.to_string()));
    }
    let ring = z.ring();
    Ok(coeffs.iter().rev().fold(ring.zero(), |acc, a| acc.mul(z).add(&z.from_bigint_like(a))))
}

/// `-c1/3 + (3q/p) sum_n C(3n, n) (-Delta / 27 p^3)^n`, the distinguished
/// root away from characteristics 2 and 3.
pub fn discriminant_root_series<F: BaseField>(
    f: &Cubic<F>,
    pi: &DiscPrime<F>,
    cfg: &LiftConfig,
) -> Result<DiscAdicElement<F>, AdicError> {
    cfg.check::<F>()?;
    let ch = F::CHARACTERISTIC;
    if ch == 2 || ch == 3 {
        return Err(AdicError::WrongCharacteristic { expected: "not 2 or 3".into(), found: ch });
    }
    let n = cfg.truncation_order;
    let ring = LocalRing::new(pi, n);
    let (g, shift) = f.depressed()?;
    if g.p.is_zero() {
        return Err(AdicError::ZeroCoefficient("p"));
    }
    let shift = ring.embed(&shift)?;
    if g.q.is_zero() {
        return Ok(shift);
    }
    let p3 = g.p.pow(3).scale_int(27);
    let z = ring.embed(&g.discriminant().neg().div(&p3)?)?;
    let coeffs: Vec<BigInt> = (0..=n as u64).map(central_trinomial_coeff).collect();
    let lambda = sum_series(&coeffs, &z)?;
    let lead = ring.embed(&g.q.scale_int(3).div(&g.p)?)?;
    Ok(shift.add(&lead.mul(&lambda)))
}

/// `c2/c1 - c1 B_{3,-1}(Delta / c1^6)` in characteristic 3.
pub fn char3_root_series<F: BaseField>(
    f: &Cubic<F>,
    pi: &DiscPrime<F>,
    cfg: &LiftConfig,
) -> Result<DiscAdicElement<F>, AdicError> {
    cfg.check::<F>()?;
    if F::CHARACTERISTIC != 3 {
        return Err(AdicError::WrongCharacteristic { expected: "3".into(), found: F::CHARACTERISTIC });
    }
    let g = f.general();
    if g.c1.is_zero() {
        return Err(AdicError::Char3Depressed);
    }
    let n = cfg.truncation_order;
    let ring = LocalRing::new(pi, n);
    let z = ring.embed(&g.discriminant().div(&g.c1.pow(6))?)?;
    let coeffs = (0..=n as u64).map(|m| fuss_catalan_any(3, -1, m)).collect::<Result<Vec<_>, _>>()?;
    let b = sum_series(&coeffs, &z)?;
    let base = ring.embed(&g.c2.div(&g.c1)?)?;
    Ok(base.sub(&ring.embed(&g.c1)?.mul(&b)))
}

/// `c1 + (q/p) B_3(q^2 / p^3)` in characteristic 2, where `t -> t + c1`
/// depresses the cubic to `t^3 + p t + q` and `q = delta`.
pub fn char2_root_series<F: BaseField>(
    f: &Cubic<F>,
    pi: &DiscPrime<F>,
    cfg: &LiftConfig,
) -> Result<DiscAdicElement<F>, AdicError> {
    cfg.check::<F>()?;
    if F::CHARACTERISTIC != 2 {
        return Err(AdicError::WrongCharacteristic { expected: "2".into(), found: F::CHARACTERISTIC });
    }
    let (p, q, shift) = char2_depress(&f.general())?;
    if p.is_zero() {
        return Err(AdicError::ZeroCoefficient("p"));
    }
    let n = cfg.truncation_order;
    let ring = LocalRing::new(pi, n);
    let delta: RationalFunction<F> = q.mul(&q);
    let z = ring.embed(&delta.div(&p.pow(3))?)?;
    let coeffs = (0..=n as u64).map(|m| fuss_catalan_any(3, 1, m)).collect::<Result<Vec<_>, _>>()?;
    let b = sum_series(&coeffs, &z)?;
    let lead = ring.embed(&q.div(&p)?)?;
    Ok(ring.embed(&shift)?.add(&lead.mul(&b)))
}

/// The closed-form series appropriate for the field's characteristic.
pub fn root_series<F: BaseField>(
    f: &Cubic<F>,
    pi: &DiscPrime<F>,
    cfg: &LiftConfig,
) -> Result<DiscAdicElement<F>, AdicError> {
    match F::CHARACTERISTIC {
        2 => char2_root_series(f, pi, cfg),
        3 => char3_root_series(f, pi, cfg),
        _ => discriminant_root_series(f, pi, cfg),
    }
}
