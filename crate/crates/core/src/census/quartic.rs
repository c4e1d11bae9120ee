//! Sampling depressed quartics `t^4 + c t^2 + d t + e` and asking whether
//! the discriminant series of the resolvent `t^3 + 2c t^2 + (c^2 - 4e) t - d^2`
//! converges to a positive root, which yields a real factorization.

use rand::Rng;
use serde::Serialize;

use super::CensusConfig;
use crate::exec::job_rng;
use crate::real::report::ser_f64;
use crate::real::{general_cubic_root, RealError, RealGeneralCubic, SeriesMethod, Sign, DEFAULT_MAX_TERMS, DEFAULT_TOL};

/// The scales `m` of `g(m t) / m^4` examined by default.
pub const QUARTIC_SCALES: [f64; 3] = [1.0, 10.0, 100.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticOutcome {
    PositiveRoot,
    NonPositiveRoot,
    /// The series diverges or sits on its convergence boundary.
    Diverges,
    /// The series converges in principle but not within the term budget.
    Unresolved,
}

/// Evaluates the resolvent's discriminant series for `g(m t) / m^4`, whose
/// coefficients are `c / m^2, d / m^3, e / m^4`.
pub fn quartic_sample(c: f64, d: f64, e: f64, m: f64) -> QuarticOutcome {
    let (c, d, e) = (c / (m * m), d / m.powi(3), e / m.powi(4));
    let Ok(r3) = RealGeneralCubic::new(2.0 * c, c * c - 4.0 * e, -d * d) else {
        return QuarticOutcome::Diverges;
    };
    match general_cubic_root(&r3, SeriesMethod::Discriminant, DEFAULT_TOL, DEFAULT_MAX_TERMS) {
        Ok(r) if r.sign == Some(Sign::Positive) => QuarticOutcome::PositiveRoot,
        Ok(_) => QuarticOutcome::NonPositiveRoot,
        Err(RealError::NonConvergence(_)) => QuarticOutcome::Unresolved,
        Err(_) => QuarticOutcome::Diverges,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScaleOutcome {
    #[serde(serialize_with = "ser_f64")]
    pub m: f64,
    pub positive_root: u64,
    pub non_positive_root: u64,
    pub diverges: u64,
    pub unresolved: u64,
    /// `positive_root` over the quartics with `d != 0`.
    #[serde(serialize_with = "ser_f64")]
    pub fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuarticCensus {
    pub config: CensusConfig,
    /// Samples with `d = 0`, which factor by the quadratic formula instead.
    pub excluded_d_zero: u64,
    pub scales: Vec<ScaleOutcome>,
}

impl QuarticCensus {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("census reports serialize")
    }
}

/// Draws `cfg.samples` quartics with `c, d, e` uniform on `[-h, h]`
/// (sample `i` from `job_rng(rng_seed, i)`) and tallies the outcome at
/// each scale.
pub fn quartic_census_sample(cfg: &CensusConfig, scales: &[f64]) -> QuarticCensus {
    let h = cfg.h;
    let per_sample = cfg.exec.map(cfg.samples, |i| {
        let mut rng = job_rng(cfg.rng_seed, i);
        let c = rng.gen_range(-h..=h);
        let d = rng.gen_range(-h..=h);
        let e = rng.gen_range(-h..=h);
        if d == 0.0 {
            None
        } else {
            Some(scales.iter().map(|&m| quartic_sample(c, d, e, m)).collect::<Vec<_>>())
        }
    });
    let excluded_d_zero = per_sample.iter().filter(|s| s.is_none()).count() as u64;
    let kept = cfg.samples - excluded_d_zero;
    let scales = scales
        .iter()
        .enumerate()
        .map(|(j, &m)| {
            let mut out =
                ScaleOutcome { m, positive_root: 0, non_positive_root: 0, diverges: 0, unresolved: 0, fraction: 0.0 };
            for outcome in per_sample.iter().flatten().map(|s| s[j]) {
                match outcome {
                    QuarticOutcome::PositiveRoot => out.positive_root += 1,
                    QuarticOutcome::NonPositiveRoot => out.non_positive_root += 1,
                    QuarticOutcome::Diverges => out.diverges += 1,
                    QuarticOutcome::Unresolved => out.unresolved += 1,
                }
            }
            out.fraction = if kept == 0 { f64::NAN } else { out.positive_root as f64 / kept as f64 };
            out
        })
        .collect();
    QuarticCensus { config: *cfg, excluded_d_zero, scales }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::HeightMode;

    #[test]
    fn small_d_and_e_give_a_positive_root() {
        assert_eq!(quartic_sample(1.0, 1e-3, 1e-4, 1.0), QuarticOutcome::PositiveRoot);
        assert_eq!(quartic_sample(1.0, 1e-3, 1e-4, 10.0), QuarticOutcome::PositiveRoot);
    }

    #[test]
    fn tallies_add_up() {
        let cfg = CensusConfig::new(HeightMode::MaxHeight, 10.0, 200, 3).unwrap();
        let census = quartic_census_sample(&cfg, &QUARTIC_SCALES);
        for s in &census.scales {
            assert_eq!(s.positive_root + s.non_positive_root + s.diverges + s.unresolved + census.excluded_d_zero, 200);
        }
    }
}
