use super::local::{DiscAdicElement, LocalRing};
use super::{embed_cubic, AdicError, Cubic, LiftConfig};
use crate::rings::{pi_adic_valuation, BaseField, DiscPrime, RationalFunction, Valuation};

/// Newton's method in the pi-adic completion: starting from a simple root
/// of `f` modulo `pi`, iterate `alpha <- alpha - f(alpha)/f'(alpha)` while
/// doubling the working precision, up to `pi^{N+1}`.
pub fn hensel_lift_cubic<F: BaseField>(
    f: &Cubic<F>,
    seed: &RationalFunction<F>,
    pi: &DiscPrime<F>,
    cfg: &LiftConfig,
) -> Result<DiscAdicElement<F>, AdicError> {
    cfg.check::<F>()?;
    let n = cfg.truncation_order;

    let residue = LocalRing::new(pi, 0);
    let fr = embed_cubic(&residue, f)?;
    let s0 = residue.embed(seed)?;
    let (v, d) = (fr.eval(&s0), fr.eval_derivative(&s0));
    if !v.is_zero() || d.is_zero() {
        return Err(AdicError::HenselPrecondition {
            value: v.valuation().to_string(),
            derivative: d.valuation().to_string(),
        });
    }

    let full = LocalRing::new(pi, n);
    let mut known = 1usize; // alpha is correct modulo pi^known
    let mut alpha = full.embed(seed)?;
    while known < n + 1 {
        known = (2 * known).min(n + 1);
        let ring = if known == n + 1 { full.clone() } else { LocalRing::new(pi, known - 1) };
        let fk = embed_cubic(&ring, f)?;
        let a = alpha.in_ring(&ring);
        let step = fk.eval(&a).div(&fk.eval_derivative(&a))?;
        alpha = a.sub(&step).in_ring(&full);
    }

    let check = verify_root(f, &alpha)?;
    if !check.exceeds(n as i64) {
        return Err(AdicError::VerificationFailed(check.to_string()));
    }
    Ok(alpha)
}

/// `v_pi(f(alpha))` computed in the truncated ring: `AtLeast(N+1)` means
/// the root is correct to the representable order.
pub fn verify_root<F: BaseField>(f: &Cubic<F>, alpha: &DiscAdicElement<F>) -> Result<Valuation, AdicError> {
    let fr = embed_cubic(alpha.ring(), f)?;
    Ok(fr.eval(alpha).valuation())
}

/// `v_pi(f(alpha))` for the truncated expansion taken as an exact rational
/// function; infinite when it is an exact root.
pub fn verify_root_exact<F: BaseField>(f: &Cubic<F>, alpha: &DiscAdicElement<F>) -> Result<Valuation, AdicError> {
    let a = alpha.to_rational_function();
    let value = f.general().eval(&a);
    Ok(pi_adic_valuation(&value, alpha.pi())?)
}
