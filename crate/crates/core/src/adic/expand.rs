//! One entry point for expanding the distinguished root of a generic cubic,
//! by the closed-form series, by Newton's method, or by both with a
//! digit-by-digit comparison.

use std::str::FromStr;

use serde::Serialize;

use super::{hensel_lift_cubic, root_series, verify_root, AdicError, Cubic, CubicForm, DiscAdicElement, LiftConfig};
use crate::rings::{BaseField, F2, F3, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Series,
    Hensel,
    Both,
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "series" => Ok(Engine::Series),
            "hensel" => Ok(Engine::Hensel),
            "both" => Ok(Engine::Both),
            _ => Err(format!("unknown engine `{s}` (expected series, hensel or both)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DigitVerdict {
    pub index: usize,
    pub series: String,
    pub hensel: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expansion {
    pub characteristic: u64,
    pub form: CubicForm,
    pub engine: Engine,
    pub order: usize,
    pub pi: String,
    /// The residue root both engines start from.
    pub seed: String,
    /// The expansion `a_0 + a_1 pi + ...` with the prime appended.
    pub rendered: String,
    /// Digits `a_0, ..., a_N` of the reported expansion.
    pub digits: Vec<String>,
    /// Per-digit comparison, present for `Engine::Both`.
    pub verdicts: Vec<DigitVerdict>,
    /// `v_pi(f(alpha))`; at least `N + 1` for a correct expansion.
    pub root_valuation: String,
    pub verified: bool,
}

impl Expansion {
    pub fn all_match(&self) -> bool {
        self.verdicts.iter().all(|v| v.matches)
    }
}

/// Expands the distinguished root of the generic cubic of `form` over
/// `F(coefficients)` through `pi^order`.
pub fn expand_generic<F: BaseField>(form: CubicForm, order: usize, engine: Engine) -> Result<Expansion, AdicError> {
    let cfg = LiftConfig::for_field::<F>(order)?;
    let (f, pi) = Cubic::<F>::generic(form)?;
    let seed = f.residue_seed()?;
    let series = match engine {
        Engine::Series | Engine::Both => Some(root_series(&f, &pi, &cfg)?),
        Engine::Hensel => None,
    };
    let hensel = match engine {
        Engine::Hensel | Engine::Both => Some(hensel_lift_cubic(&f, &seed, &pi, &cfg)?),
        Engine::Series => None,
    };
    let verdicts = match (&series, &hensel) {
        (Some(s), Some(h)) => compare(s, h),
        _ => vec![],
    };
    let alpha = series.or(hensel).expect("at least one engine runs");
    let v = verify_root(&f, &alpha)?;
    Ok(Expansion {
        characteristic: F::CHARACTERISTIC,
        form,
        engine,
        order,
        pi: pi.poly().to_string(),
        seed: seed.to_string(),
        rendered: alpha.render(),
        digits: alpha.digits().iter().map(|d| d.to_string()).collect(),
        verdicts,
        root_valuation: v.to_string(),
        verified: v.exceeds(order as i64),
    })
}

fn compare<F: BaseField>(s: &DiscAdicElement<F>, h: &DiscAdicElement<F>) -> Vec<DigitVerdict> {
    s.digits()
        .into_iter()
        .zip(h.digits())
        .enumerate()
        .map(|(index, (a, b))| DigitVerdict { index, matches: a == b, series: a.to_string(), hensel: b.to_string() })
        .collect()
}

/// `expand_generic` over the prime field of characteristic 0, 2 or 3.
pub fn expand_generic_in(characteristic: u64, form: CubicForm, order: usize, engine: Engine) -> Result<Expansion, AdicError> {
    match characteristic {
        0 => expand_generic::<Q>(form, order, engine),
        2 => expand_generic::<F2>(form, order, engine),
        3 => expand_generic::<F3>(form, order, engine),
        found => Err(AdicError::WrongCharacteristic { expected: "0, 2 or 3".into(), found }),
    }
}
