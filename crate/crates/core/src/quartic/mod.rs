//! The ramified quadratic factor of the generic depressed quartic
//! `t^4 + c t^2 + d t + e` over the completion of `k(c, d, e)` at its
//! discriminant, built from the distinguished roots of two cubic
//! resolvents.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::adic::{discriminant_root_series, verify_root, AdicError, Cubic, DiscAdicElement, LiftConfig, LocalRing};
use crate::rings::{
    BaseField, DepressedQuartic, DiscPrime, GeneralCubic, PrimeForm, RationalFunction, Ring, RingError, Valuation,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuarticError {
    #[error("quartic factorization needs characteristic other than 2 and 3, got {0}")]
    Characteristic(u64),
    #[error("degenerate quartic: {0}")]
    Degenerate(String),
    #[error("singular seed for the rho recursion: {0}")]
    SingularSeed(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Adic(#[from] AdicError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The resolvents `R3 = t^3 + 2c t^2 + (c^2 - 4e) t - d^2` and
/// `R4 = t^3 - c t^2 - 4e t + (4ce - d^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventPair<R: Ring> {
    pub r3: GeneralCubic<R>,
    pub r4: GeneralCubic<R>,
}

impl<R: Ring> ResolventPair<R> {
    /// Whether both resolvents have the discriminant of `g`.
    pub fn discriminants_match(&self, g: &DepressedQuartic<R>) -> bool {
        let d = g.discriminant();
        self.r3.discriminant() == d && self.r4.discriminant() == d
    }
}

pub fn resolvents<R: Ring>(g: &DepressedQuartic<R>) -> ResolventPair<R> {
    let (c, d, e) = (&g.c, &g.d, &g.e);
    let d2 = d.mul(d);
    let r3 = GeneralCubic::new(c.scale_int(2), c.mul(c).sub(&e.scale_int(4)), d2.neg());
    let r4 = GeneralCubic::new(c.neg(), e.scale_int(4).neg(), c.mul(e).scale_int(4).sub(&d2));
    ResolventPair { r3, r4 }
}

fn check_characteristic<F: BaseField>() -> Result<(), QuarticError> {
    match F::CHARACTERISTIC {
        2 | 3 => Err(QuarticError::Characteristic(F::CHARACTERISTIC)),
        _ => Ok(()),
    }
}

/// `t^4 + c t^2 + d t + e` over `k(c, d, e)` with its discriminant prime.
pub fn generic_quartic<F: BaseField>() -> Result<(DepressedQuartic<RationalFunction<F>>, DiscPrime<F>), QuarticError> {
    check_characteristic::<F>()?;
    let pi = DiscPrime::new(PrimeForm::QuarticDisc)?;
    let v = pi.vars().clone();
    let g = DepressedQuartic::new(RationalFunction::var(&v, 0), RationalFunction::var(&v, 1), RationalFunction::var(&v, 2));
    Ok((g, pi))
}

/// The distinguished roots `alpha3`, `alpha4` of `R3`, `R4`, each from the
/// discriminant series of the resolvent's depressed form and verified to
/// be a root modulo `pi^{N+1}`.
pub fn resolvent_roots<F: BaseField>(
    pair: &ResolventPair<RationalFunction<F>>,
    pi: &DiscPrime<F>,
    cfg: &LiftConfig,
) -> Result<(DiscAdicElement<F>, DiscAdicElement<F>), QuarticError> {
    check_characteristic::<F>()?;
    let root = |r: &GeneralCubic<RationalFunction<F>>, name: &str| -> Result<DiscAdicElement<F>, QuarticError> {
        let cubic = Cubic::General(r.clone());
        let alpha = discriminant_root_series(&cubic, pi, cfg).map_err(|e| match e {
            AdicError::ZeroCoefficient(_) => {
                QuarticError::Degenerate(format!("the depressed form of {name} has p = 0"))
            }
            other => other.into(),
        })?;
        let v = verify_root(&cubic, &alpha)?;
        if !v.exceeds(cfg.truncation_order as i64) {
            return Err(QuarticError::Inconsistent(format!("v({name}(alpha)) = {v}")));
        }
        Ok(alpha)
    };
    Ok((root(&pair.r3, "R3")?, root(&pair.r4, "R4")?))
}

/// `(8ce - 2c^3 - 9d^2) / (2c^2 + 24e)`, the residue of `rho`.
pub fn rho_seed<R: Ring + crate::rings::Field>(g: &DepressedQuartic<R>) -> Result<R, QuarticError> {
    let (c, d, e) = (&g.c, &g.d, &g.e);
    let num = c.mul(e).scale_int(8).sub(&c.pow(3).scale_int(2)).sub(&d.mul(d).scale_int(9));
    let den = c.mul(c).scale_int(2).add(&e.scale_int(24));
    if den.is_zero() {
        return Err(QuarticError::SingularSeed("2c^2 + 24e = 0".into()));
    }
    num.div(&den).map_err(|_| QuarticError::SingularSeed("2c^2 + 24e = 0".into()))
}

/// `rho` with `rho^2 = alpha4^2 - 4e`, its residue fixed by the seed.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoSeries<F: BaseField> {
    pub rho: DiscAdicElement<F>,
    pub seed: RationalFunction<F>,
}

/// Solves `rho^2 = alpha4^2 - 4e` one power of the prime at a time: with
/// `rho` known modulo `pi^k`, the `pi^k`-digit of `alpha4^2 - 4e - rho^2`
/// is `2 rho_0` times the next digit, so no square-root branch is ever
/// chosen after the seed.
pub fn rho_series<F: BaseField>(
    alpha4: &DiscAdicElement<F>,
    g: &DepressedQuartic<RationalFunction<F>>,
    cfg: &LiftConfig,
) -> Result<RhoSeries<F>, QuarticError> {
    let full = alpha4.ring().clone();
    let n = cfg.truncation_order.min(full.order());
    let residue = LocalRing::new(full.pi(), 0);
    let seed = rho_seed(g)?;
    let target = alpha4.mul(alpha4).sub(&full.embed(&g.e)?.scale_int(4));
    let mut rho = full
        .embed(&seed)
        .map_err(|_| QuarticError::SingularSeed("2c^2 + 24e vanishes modulo the discriminant".into()))?;
    if !target.sub(&rho.mul(&rho)).valuation().exceeds(0) {
        return Err(QuarticError::Inconsistent("the seed does not square to alpha4^2 - 4e modulo pi".into()));
    }
    let inv = residue
        .embed(&seed)?
        .scale_int(2)
        .inv()
        .map_err(|_| QuarticError::SingularSeed("rho_0 vanishes modulo the discriminant".into()))?;
    for k in 1..=n {
        let diff = target.sub(&rho.mul(&rho));
        let digit = diff.digit(k).in_ring(&residue).mul(&inv).in_ring(&full);
        rho = rho.add(&digit.mul(&full.pi_power(k)));
    }
    let v = target.sub(&rho.mul(&rho)).valuation();
    if !v.exceeds(n as i64) {
        return Err(QuarticError::Inconsistent(format!("v(rho^2 - (alpha4^2 - 4e)) = {v}")));
    }
    Ok(RhoSeries { rho, seed })
}

/// `r(t) = t^2 - s t + k` with `k = (alpha4 + rho)/2`, the ramified
/// factor of `g`, together with the data it was built from and the
/// cofactor `u(t) = t^2 + u1 t + u0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RamifiedQuadratic<F: BaseField> {
    pub s: DiscAdicElement<F>,
    pub const_term: DiscAdicElement<F>,
    pub order: usize,
    pub alpha3: DiscAdicElement<F>,
    pub alpha4: DiscAdicElement<F>,
    pub rho: RhoSeries<F>,
    pub u1: DiscAdicElement<F>,
    pub u0: DiscAdicElement<F>,
}

/// Divides a monic polynomial (coefficients from the top, leading 1
/// omitted) by the monic `t^2 + b1 t + b0`; returns the quotient without
/// its leading 1 and the remainder `[r1, r0]`.
pub fn divide_by_monic_quadratic<R: Ring>(num: &[R], b1: &R, b0: &R) -> (Vec<R>, [R; 2]) {
    let mut work: Vec<R> = std::iter::once(b1.one_like()).chain(num.iter().cloned()).collect();
    let deg = work.len() - 1;
    let mut quotient = Vec::new();
    for i in 0..=deg.saturating_sub(2) {
        let lead = work[i].clone();
        if i > 0 {
            quotient.push(lead.clone());
        }
        work[i + 1] = work[i + 1].sub(&lead.mul(b1));
        work[i + 2] = work[i + 2].sub(&lead.mul(b0));
    }
    (quotient, [work[deg - 1].clone(), work[deg].clone()])
}

impl<F: BaseField> RamifiedQuadratic<F> {
    /// `s^2 - 4k = (r1 - r2)^2`, which lies in the maximal ideal.
    pub fn discriminant(&self) -> DiscAdicElement<F> {
        self.s.mul(&self.s).sub(&self.const_term.scale_int(4))
    }

    /// `u1^2 - 4 u0`, a unit.
    pub fn cofactor_discriminant(&self) -> DiscAdicElement<F> {
        self.u1.mul(&self.u1).sub(&self.u0.scale_int(4))
    }

    /// Coefficients of `g - r u`, from `t^3` down.
    pub fn residual(&self, g: &DepressedQuartic<RationalFunction<F>>) -> Result<[DiscAdicElement<F>; 4], QuarticError> {
        let ring = self.s.ring();
        let (k, s) = (&self.const_term, &self.s);
        let ru = [
            self.u1.sub(s),
            self.u0.sub(&s.mul(&self.u1)).add(k),
            k.mul(&self.u1).sub(&s.mul(&self.u0)),
            k.mul(&self.u0),
        ];
        let gc = [ring.zero(), ring.embed(&g.c)?, ring.embed(&g.d)?, ring.embed(&g.e)?];
        Ok([0, 1, 2, 3].map(|i| gc[i].sub(&ru[i])))
    }

    /// Evaluates `(s, k)` as exact rational functions at a point of
    /// `(c, d, e)`; `None` where a denominator vanishes.
    pub fn specialize(&self, point: &[F]) -> Option<(F, F)> {
        Some((self.s.to_rational_function().eval(point)?, self.const_term.to_rational_function().eval(point)?))
    }

    pub fn render(&self) -> String {
        format!("t^2 - ({}) t + ({})", self.s.render(), self.const_term.render())
    }

    pub fn summary(&self, g: &DepressedQuartic<RationalFunction<F>>) -> Result<FactorSummary, QuarticError> {
        let residual = self.residual(g)?;
        Ok(FactorSummary {
            order: self.order,
            pi: self.s.pi().poly().to_string(),
            s: self.s.digits().iter().map(|d| d.to_string()).collect(),
            const_term: self.const_term.digits().iter().map(|d| d.to_string()).collect(),
            rho_seed: self.rho.seed.to_string(),
            v_square: self.rho.rho.mul(&self.rho.rho).sub(&self.alpha4.mul(&self.alpha4)).add(&residual_embed(&self.s, &g.e, 4)?).valuation(),
            v_s_squared_minus_alpha3: self.s.mul(&self.s).sub(&self.alpha3).valuation(),
            v_remainder: residual.iter().map(|x| x.valuation()).min_by_key(valuation_key).unwrap_or(Valuation::Infinite),
            v_disc_r: self.discriminant().valuation(),
            v_disc_u: self.cofactor_discriminant().valuation(),
        })
    }
}

fn residual_embed<F: BaseField>(like: &DiscAdicElement<F>, e: &RationalFunction<F>, k: i64) -> Result<DiscAdicElement<F>, QuarticError> {
    Ok(like.ring().embed(e)?.scale_int(k))
}

fn valuation_key(v: &Valuation) -> (i64, i64) {
    match *v {
        Valuation::Finite(n) => (n, 0),
        Valuation::AtLeast(n) => (n, 1),
        Valuation::Infinite => (i64::MAX, 2),
    }
}

/// The digits of `s` and `k` and every valuation the construction
/// promises, for rendering.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorSummary {
    pub order: usize,
    pub pi: String,
    /// Digits of `s`, lowest first, each in normal form.
    pub s: Vec<String>,
    pub const_term: Vec<String>,
    pub rho_seed: String,
    /// `v(rho^2 - (alpha4^2 - 4e))`.
    pub v_square: Valuation,
    pub v_s_squared_minus_alpha3: Valuation,
    /// The least valuation among the coefficients of `g - r u`.
    pub v_remainder: Valuation,
    pub v_disc_r: Valuation,
    pub v_disc_u: Valuation,
}

impl FactorSummary {
    /// Whether every promised valuation holds: the three identities beyond
    /// the truncation order, `disc(r)` in the maximal ideal, `disc(u)` a
    /// unit.
    pub fn holds(&self) -> bool {
        let n = self.order as i64;
        self.v_square.exceeds(n)
            && self.v_s_squared_minus_alpha3.exceeds(n)
            && self.v_remainder.exceeds(n)
            && self.v_disc_r.exceeds(0)
            && self.v_disc_u == Valuation::Finite(0)
    }
}

/// `r(t) = t^2 - (d/rho) t + (alpha4 + rho)/2`, with `u = g / r` by long
/// division; fails unless `s^2 = alpha3`, `k = (alpha3 + c + rho)/2` and
/// the remainder vanish modulo `pi^{N+1}`.
pub fn ramified_factor<F: BaseField>(
    g: &DepressedQuartic<RationalFunction<F>>,
    pi: &DiscPrime<F>,
    cfg: &LiftConfig,
) -> Result<RamifiedQuadratic<F>, QuarticError> {
    check_characteristic::<F>()?;
    if g.d.is_zero() {
        return Err(QuarticError::Degenerate("d = 0".into()));
    }
    let n = cfg.truncation_order;
    let pair = resolvents(g);
    let (alpha3, alpha4) = resolvent_roots(&pair, pi, cfg)?;
    let ring: Arc<LocalRing<F>> = alpha4.ring().clone();
    let rho = rho_series(&alpha4, g, cfg)?;
    let s = ring
        .embed(&g.d)?
        .div(&rho.rho)
        .map_err(|_| QuarticError::SingularSeed("rho is not a unit".into()))?;
    let half = ring.int(2).inv()?;
    let k = alpha4.add(&rho.rho).mul(&half);

    let check = |what: &str, v: Valuation| {
        if v.exceeds(n as i64) {
            Ok(())
        } else {
            Err(QuarticError::Inconsistent(format!("v({what}) = {v}")))
        }
    };
    check("s^2 - alpha3", s.mul(&s).sub(&alpha3).valuation())?;
    let k3 = alpha3.add(&ring.embed(&g.c)?).add(&rho.rho).mul(&half);
    check("(alpha4 + rho)/2 - (alpha3 + c + rho)/2", k.sub(&k3).valuation())?;

    let num = [ring.zero(), ring.embed(&g.c)?, ring.embed(&g.d)?, ring.embed(&g.e)?];
    let (u, rem) = divide_by_monic_quadratic(&num, &s.neg(), &k);
    for (i, r) in rem.iter().enumerate() {
        check(&format!("remainder coefficient of t^{}", 1 - i), r.valuation())?;
    }
    Ok(RamifiedQuadratic {
        s,
        const_term: k,
        order: n,
        alpha3,
        alpha4,
        rho,
        u1: u[0].clone(),
        u0: u[1].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Q;

    #[test]
    fn long_division() {
        // t^4 - 1 = (t^2 + 1)(t^2 - 1)
        let z = |n: i64| Q::new(n, 1);
        let (u, rem) = divide_by_monic_quadratic(&[z(0), z(0), z(0), z(-1)], &z(0), &z(1));
        assert_eq!(u, vec![z(0), z(-1)]);
        assert_eq!(rem, [z(0), z(0)]);
        // t^4 + t + 1 = (t^2 + t)(t^2 - t + 1) + 1
        let (u, rem) = divide_by_monic_quadratic(&[z(0), z(0), z(1), z(1)], &z(1), &z(0));
        assert_eq!(u, vec![z(-1), z(1)]);
        assert_eq!(rem, [z(0), z(1)]);
    }

    #[test]
    fn resolvents_of_zero_quartic() {
        let g = DepressedQuartic::new(Q::new(0, 1), Q::new(0, 1), Q::new(0, 1));
        let p = resolvents(&g);
        let z = Q::new(0, 1);
        assert_eq!(p.r3, GeneralCubic::new(z.clone(), z.clone(), z.clone()));
        assert_eq!(p.r4, GeneralCubic::new(z.clone(), z.clone(), z));
    }
}
