//! The generic cubic over the completion of `k(c1, ..., cn)` at its
//! discriminant: the distinguished root as a power series in the prime,
//! computed both by Newton/Hensel lifting and by the closed-form series.

mod closed_form;
mod control;
mod expand;
mod lift;
mod local;

use serde::Serialize;
use thiserror::Error;

use crate::rings::{
    char2_delta, depress_cubic, BaseField, DepressedCubic, DiscPrime, Field, GeneralCubic, PrimeForm, RationalFunction, Ring,
    RingError,
};
use crate::series::SeriesError;

pub use closed_form::{char2_root_series, char3_root_series, discriminant_root_series, root_series};
pub use control::{char3_negative_control, is_cube_char3, NegativeControlCertificate};
pub use expand::{expand_generic, expand_generic_in, DigitVerdict, Engine, Expansion};
pub use lift::{hensel_lift_cubic, verify_root, verify_root_exact};
pub use local::{DiscAdicElement, LocalRing};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdicError {
    #[error("truncation order must be at least 1")]
    InvalidOrder,
    #[error("configuration says characteristic {config}, coefficient field has characteristic {field}")]
    CharacteristicMismatch { config: u64, field: u64 },
    #[error("this construction needs characteristic {expected}, the field has characteristic {found}")]
    WrongCharacteristic { expected: String, found: u64 },
    #[error("the coefficient {0} vanishes, the series is undefined (generic case only)")]
    ZeroCoefficient(&'static str),
    #[error(
        "in characteristic 3 the depressed generic cubic t^3 + p t + q has no root in the completion: \
         modulo p it becomes t^3 + q, and -q is not a cube in GF(3)(q)"
    )]
    Char3Depressed,
    #[error("Hensel precondition fails: v(f(seed)) = {value}, v(f'(seed)) = {derivative} (need >= 1 and 0)")]
    HenselPrecondition { value: String, derivative: String },
    #[error("{0} has negative valuation and is not in the valuation ring")]
    NegativeValuation(String),
    #[error("{0} is not a unit of the valuation ring")]
    NotAUnit(String),
    #[error("series argument {0} has valuation 0, the series does not converge pi-adically")]
    NotConvergent(String),
    #[error("lifted root fails verification: v(f(alpha)) = {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Truncation order and the characteristic the caller expects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiftConfig {
    pub truncation_order: usize,
    pub base_characteristic: u64,
}

impl LiftConfig {
    pub const DEFAULT_ORDER: usize = 8;

    pub fn new(truncation_order: usize, base_characteristic: u64) -> Result<Self, AdicError> {
        if truncation_order < 1 {
            return Err(AdicError::InvalidOrder);
        }
        Ok(LiftConfig { truncation_order, base_characteristic })
    }

    /// Configuration matching the field `F`.
    pub fn for_field<F: BaseField>(truncation_order: usize) -> Result<Self, AdicError> {
        Self::new(truncation_order, F::CHARACTERISTIC)
    }

    pub(crate) fn check<F: BaseField>(&self) -> Result<(), AdicError> {
        if self.truncation_order < 1 {
            return Err(AdicError::InvalidOrder);
        }
        if self.base_characteristic != F::CHARACTERISTIC {
            return Err(AdicError::CharacteristicMismatch {
                config: self.base_characteristic,
                field: F::CHARACTERISTIC,
            });
        }
        Ok(())
    }
}

/// A cubic over `k(c1, ..., cn)`, depressed or not.
#[derive(Clone, Debug, PartialEq)]
pub enum Cubic<F: BaseField> {
    Depressed(DepressedCubic<RationalFunction<F>>),
    General(GeneralCubic<RationalFunction<F>>),
}

/// Which generic cubic to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicForm {
    Depressed,
    General,
}

impl<F: BaseField> Cubic<F> {
    pub fn general(&self) -> GeneralCubic<RationalFunction<F>> {
        match self {
            Cubic::Depressed(g) => g.to_general(),
            Cubic::General(f) => f.clone(),
        }
    }

    pub fn discriminant(&self) -> RationalFunction<F> {
        match self {
            Cubic::Depressed(g) => g.discriminant(),
            Cubic::General(f) => f.discriminant(),
        }
    }

    pub fn form(&self) -> CubicForm {
        match self {
            Cubic::Depressed(_) => CubicForm::Depressed,
            Cubic::General(_) => CubicForm::General,
        }
    }

    /// The generic cubic of the given form with its discriminant prime:
    /// `t^3 + p t + q` over `k(p, q)` or `t^3 + c1 t^2 + c2 t + c3` over
    /// `k(c1, c2, c3)`; the prime is the discriminant, or `delta` in
    /// characteristic 2.
    pub fn generic(form: CubicForm) -> Result<(Self, DiscPrime<F>), AdicError> {
        let ch = F::CHARACTERISTIC;
        match form {
            CubicForm::Depressed => {
                if ch == 3 {
                    return Err(AdicError::Char3Depressed);
                }
                let pf = if ch == 2 { PrimeForm::Char2DepressedDelta } else { PrimeForm::DepressedCubicDisc };
                let pi = DiscPrime::new(pf)?;
                let v = pi.vars().clone();
                let g = DepressedCubic::new(RationalFunction::var(&v, 0), RationalFunction::var(&v, 1));
                Ok((Cubic::Depressed(g), pi))
            }
            CubicForm::General => {
                let pf = if ch == 2 { PrimeForm::Char2Delta } else { PrimeForm::GeneralCubicDisc };
                let pi = DiscPrime::new(pf)?;
                let v = pi.vars().clone();
                let f = GeneralCubic::new(
                    RationalFunction::var(&v, 0),
                    RationalFunction::var(&v, 1),
                    RationalFunction::var(&v, 2),
                );
                Ok((Cubic::General(f), pi))
            }
        }
    }

    /// The residue root the distinguished root reduces to:
    /// `3q/p` (shifted by `-c1/3`) away from characteristics 2 and 3,
    /// `c2/c1 - c1` in characteristic 3, `q/p` (shifted by `c1`) in
    /// characteristic 2.
    pub fn residue_seed(&self) -> Result<RationalFunction<F>, AdicError> {
        match F::CHARACTERISTIC {
            2 => {
                let (p, q, shift) = char2_depress(&self.general())?;
                Ok(shift.add(&q.div(&p).map_err(|_| AdicError::ZeroCoefficient("p"))?))
            }
            3 => {
                let f = self.general();
                if f.c1.is_zero() {
                    return Err(AdicError::Char3Depressed);
                }
                Ok(f.c2.div(&f.c1)?.sub(&f.c1))
            }
            _ => {
                let (g, shift) = self.depressed()?;
                if g.p.is_zero() {
                    return Err(AdicError::ZeroCoefficient("p"));
                }
                Ok(shift.add(&g.q.scale_int(3).div(&g.p)?))
            }
        }
    }

    /// Depressed form and the shift back to the original variable.
    pub fn depressed(&self) -> Result<(DepressedCubic<RationalFunction<F>>, RationalFunction<F>), AdicError> {
        match self {
            Cubic::Depressed(g) => Ok((g.clone(), g.p.zero_like())),
            Cubic::General(f) => Ok(depress_cubic(f)?),
        }
    }
}

/// `(p, q, shift)` of a depressed form.
type Depressed<F> = (RationalFunction<F>, RationalFunction<F>, RationalFunction<F>);

/// In characteristic 2, `t -> t + c1` turns `t^3 + c1 t^2 + c2 t + c3` into
/// `t^3 + p t + q` with `p = c1^2 + c2` and `q = delta = c1 c2 + c3`.
pub(crate) fn char2_depress<F: BaseField>(
    f: &GeneralCubic<RationalFunction<F>>,
) -> Result<Depressed<F>, AdicError> {
    let q = char2_delta(f)?;
    let p = f.c1.mul(&f.c1).add(&f.c2);
    Ok((p, q, f.c1.clone()))
}

pub(crate) fn embed_cubic<F: BaseField>(
    ring: &std::sync::Arc<LocalRing<F>>,
    f: &Cubic<F>,
) -> Result<GeneralCubic<DiscAdicElement<F>>, AdicError> {
    let g = f.general();
    Ok(GeneralCubic { c1: ring.embed(&g.c1)?, c2: ring.embed(&g.c2)?, c3: ring.embed(&g.c3)? })
}
