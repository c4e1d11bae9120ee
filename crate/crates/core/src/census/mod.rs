//! How much of coefficient space the two series cover.
//!
//! Depressed cubics `t^3 + p t + q` are counted in the rectangle
//! `-P <= p <= P`, `0 <= q <= Q` (the sign of `q` does not affect
//! convergence). Two orderings fix the rectangle: the max height
//! `max(|p|, |q|) <= h` gives `P = Q = h`, and the naive height
//! `max(4|p|^3, 27 q^2) <= h^6` gives `P = h^2 / 4^(1/3)`, `Q = h^3 / sqrt(27)`.
//!
//! In the normalized coordinates `x = |p| / P`, `y = q / Q` every region
//! boundary has the form `y = k x^(3/2)`, so all areas come down to
//! `int_0^1 min(1, k x^(3/2)) dx`.

mod quartic;
mod quilt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exec::{job_rng, Exec};
use crate::real::report::ser_f64;

pub use quartic::{quartic_census_sample, quartic_sample, QuarticCensus, QuarticOutcome, ScaleOutcome, QUARTIC_SCALES};
pub use quilt::{quilt_data, CurveId, CurvePoint, Quilt, QuiltCell};

/// Relative tolerance on the defining inequalities inside which a point
/// counts as lying on a boundary curve.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Monte Carlo samples drawn from one generator stream.
pub const SHARD_SIZE: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("invalid census configuration: {0}")]
    InvalidConfig(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("(p, q) = ({p:e}, {q:e}) lies on a region boundary")]
    Boundary { p: f64, q: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightMode {
    /// `max(|p|, |q|) <= h`.
    MaxHeight,
    /// `max(4|p|^3, 27 q^2) <= h^6`.
    NaiveHeight,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CensusConfig {
    pub height_mode: HeightMode,
    #[serde(serialize_with = "ser_f64")]
    pub h: f64,
    pub samples: u64,
    pub rng_seed: u64,
    #[serde(skip)]
    pub exec: Exec,
}

impl CensusConfig {
    pub fn new(height_mode: HeightMode, h: f64, samples: u64, rng_seed: u64) -> Result<Self, CensusError> {
        if !(h.is_finite() && h > 0.0) {
            return Err(CensusError::InvalidConfig(format!("h must be positive and finite, got {h}")));
        }
        if samples == 0 {
            return Err(CensusError::InvalidConfig("samples must be at least 1".into()));
        }
        Ok(CensusConfig { height_mode, h, samples, rng_seed, exec: Exec::default() })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// The half-widths `(P, Q)` of the counting rectangle.
    pub fn rectangle(&self) -> (f64, f64) {
        match self.height_mode {
            HeightMode::MaxHeight => (self.h, self.h),
            HeightMode::NaiveHeight => (self.h * self.h / 4f64.cbrt(), self.h.powi(3) / 27f64.sqrt()),
        }
    }

    /// `k` such that `q = sqrt(4|p|^3/27)` reads `y = k x^(3/2)` in
    /// normalized coordinates.
    fn curve_scale(&self) -> f64 {
        let (p, q) = self.rectangle();
        (4.0 * p.powi(3) / 27.0).sqrt() / q
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionLabel {
    DiscPositiveBothConverge,
    DiscNegativeTrinomialConverges,
    DiscNegativeDiscConverges,
    Neither,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 4] = [
        RegionLabel::DiscPositiveBothConverge,
        RegionLabel::DiscNegativeTrinomialConverges,
        RegionLabel::DiscNegativeDiscConverges,
        RegionLabel::Neither,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::DiscPositiveBothConverge => "disc_positive_both_converge",
            RegionLabel::DiscNegativeTrinomialConverges => "disc_negative_trinomial_converges",
            RegionLabel::DiscNegativeDiscConverges => "disc_negative_disc_converges",
            RegionLabel::Neither => "neither",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    pub fn trinomial_converges(self) -> bool {
        matches!(self, RegionLabel::DiscPositiveBothConverge | RegionLabel::DiscNegativeTrinomialConverges)
    }

    pub fn discriminant_converges(self) -> bool {
        matches!(self, RegionLabel::DiscPositiveBothConverge | RegionLabel::DiscNegativeDiscConverges)
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which series converge for `t^3 + p t + q`, `q > 0`.
///
/// With `a = 27 q^2` and `b = 4|p|^3`: the discriminant is positive iff
/// `p < 0` and `a < b`; the trinomial series converges iff `a < b`; the
/// discriminant series converges iff `|Delta| < b`, which for `p < 0`,
/// `Delta < 0` reads `a < 2b` and never holds for `p > 0`.
pub fn classify_point(p: f64, q: f64) -> Result<RegionLabel, CensusError> {
    if !(p.is_finite() && q.is_finite()) {
        return Err(CensusError::Precondition(format!("non-finite point ({p}, {q})")));
    }
    if p == 0.0 {
        return Err(CensusError::Precondition("p = 0".into()));
    }
    if q <= 0.0 {
        return Err(CensusError::Precondition(format!("q must be positive, got {q}")));
    }
    let a = 27.0 * q * q;
    let b = 4.0 * p.abs().powi(3);
    let near = |x: f64, y: f64| (x - y).abs() <= BOUNDARY_TOL * y;
    if near(a, b) || (p < 0.0 && near(a, 2.0 * b)) {
        return Err(CensusError::Boundary { p, q });
    }
    Ok(if a < b {
        if p < 0.0 {
            RegionLabel::DiscPositiveBothConverge
        } else {
            RegionLabel::DiscNegativeTrinomialConverges
        }
    } else if p < 0.0 && a < 2.0 * b {
        RegionLabel::DiscNegativeDiscConverges
    } else {
        RegionLabel::Neither
    })
}

/// `int_0^1 min(1, k x^(3/2)) dx`.
fn clipped_area(k: f64) -> f64 {
    if k <= 1.0 {
        0.4 * k
    } else {
        1.0 - 0.6 * k.powf(-2.0 / 3.0)
    }
}

/// Closed-form fractions of the rectangle, indexed like `RegionLabel::ALL`.
pub fn analytic_fractions(cfg: &CensusConfig) -> [f64; 4] {
    let k = cfg.curve_scale();
    let inner = clipped_area(k) / 2.0;
    let outer = clipped_area(std::f64::consts::SQRT_2 * k) / 2.0;
    let disc = outer - inner;
    [inner, inner, disc, 1.0 - 2.0 * inner - disc]
}

/// The same fractions by numerical integration of the boundary curves in
/// the original `(p, q)` coordinates.
pub fn quadrature_fractions(cfg: &CensusConfig) -> [f64; 4] {
    let (pm, qm) = cfg.rectangle();
    // area under min(Q, sqrt(factor * 4 p^3 / 27)) for 0 <= p <= P,
    // split where the curve leaves the rectangle
    let under = |factor: f64| {
        let curve = move |p: f64| (factor * 4.0 * p.powi(3) / 27.0).sqrt();
        let kink = (27.0 * qm * qm / (4.0 * factor)).cbrt().min(pm);
        let tol = 1e-15 * pm * qm;
        let rising = quadrature::integrate(curve, 0.0, kink, tol).integral;
        rising + qm * (pm - kink)
    };
    let total = 2.0 * pm * qm;
    let inner = under(1.0) / total;
    let disc = under(2.0) / total - inner;
    [inner, inner, disc, 1.0 - 2.0 * inner - disc]
}

/// Human-readable exact values under the naive height, where the fractions
/// do not depend on `h`.
pub fn exact_expressions(mode: HeightMode) -> Option<[&'static str; 4]> {
    match mode {
        HeightMode::NaiveHeight => {
            Some(["1/5", "1/5", "3/10*(1 - 2^(-1/3))", "3/10*(1 + 2^(-1/3))"])
        }
        HeightMode::MaxHeight => None,
    }
}

/// Area between `q = sqrt(-4p^3/27)` and `q = sqrt(-8p^3/27)` over
/// `-P <= p <= 0` relative to the area under the lower curve, ignoring the
/// cap `q <= Q`: exactly `sqrt(2) - 1`.
pub fn unclipped_disc_ratio() -> f64 {
    std::f64::consts::SQRT_2 - 1.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionEstimate {
    pub label: RegionLabel,
    pub exact: Option<&'static str>,
    #[serde(serialize_with = "ser_f64")]
    pub analytic: f64,
    #[serde(serialize_with = "ser_f64")]
    pub quadrature: f64,
    pub count: u64,
    #[serde(serialize_with = "ser_f64")]
    pub monte_carlo: f64,
    #[serde(serialize_with = "ser_f64")]
    pub stderr: f64,
}

impl RegionEstimate {
    /// `(monte_carlo - analytic) / stderr`.
    pub fn z_score(&self) -> f64 {
        if self.stderr == 0.0 {
            if self.monte_carlo == self.analytic {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.monte_carlo - self.analytic) / self.stderr
        }
    }
}

/// A fraction with its Monte Carlo estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    #[serde(serialize_with = "ser_f64")]
    pub analytic: f64,
    #[serde(serialize_with = "ser_f64")]
    pub monte_carlo: f64,
    #[serde(serialize_with = "ser_f64")]
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionAreas {
    pub config: CensusConfig,
    #[serde(serialize_with = "ser_f64")]
    pub p_max: f64,
    #[serde(serialize_with = "ser_f64")]
    pub q_max: f64,
    pub regions: Vec<RegionEstimate>,
    /// Samples classified into a region.
    pub classified: u64,
    /// Samples on an axis or a boundary curve, left out of the estimates.
    pub excluded: u64,
    pub trinomial_converges: Aggregate,
    pub some_series_converges: Aggregate,
    #[serde(serialize_with = "ser_f64")]
    pub unclipped_disc_ratio: f64,
}

impl RegionAreas {
    pub fn region(&self, label: RegionLabel) -> &RegionEstimate {
        &self.regions[label.index()]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("census reports serialize")
    }
}

/// Counts per label plus the excluded count for shard `k`.
fn sample_shard(cfg: &CensusConfig, k: u64) -> [u64; 5] {
    let (pm, qm) = cfg.rectangle();
    let n = SHARD_SIZE.min(cfg.samples - k * SHARD_SIZE);
    let mut rng = job_rng(cfg.rng_seed, k);
    let mut counts = [0u64; 5];
    for _ in 0..n {
        let p = rng.gen_range(-pm..pm);
        let q = rng.gen_range(0.0..qm);
        match classify_point(p, q) {
            Ok(label) => counts[label.index()] += 1,
            Err(_) => counts[4] += 1,
        }
    }
    counts
}

/// Monte Carlo counts for `cfg.samples` uniform points of the rectangle.
/// Shard `k` covers samples `k * SHARD_SIZE ..` and draws from
/// `job_rng(rng_seed, k)`, so the result does not depend on `cfg.exec`.
pub fn monte_carlo_counts(cfg: &CensusConfig) -> ([u64; 4], u64) {
    let shards = cfg.samples.div_ceil(SHARD_SIZE);
    let per_shard = cfg.exec.map(shards, |k| sample_shard(cfg, k));
    let mut total = [0u64; 5];
    for c in per_shard {
        for (t, x) in total.iter_mut().zip(c) {
            *t += x;
        }
    }
    ([total[0], total[1], total[2], total[3]], total[4])
}

fn estimate(count: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let f = count as f64 / n as f64;
    (f, (f * (1.0 - f) / n as f64).sqrt())
}

/// Region fractions of the counting rectangle: closed form, quadrature and
/// Monte Carlo with standard errors.
pub fn region_areas(cfg: &CensusConfig) -> RegionAreas {
    let (p_max, q_max) = cfg.rectangle();
    let analytic = analytic_fractions(cfg);
    let quad = quadrature_fractions(cfg);
    let exact = exact_expressions(cfg.height_mode);
    let (counts, excluded) = monte_carlo_counts(cfg);
    let classified: u64 = counts.iter().sum();
    let regions = RegionLabel::ALL
        .iter()
        .map(|&label| {
            let i = label.index();
            let (monte_carlo, stderr) = estimate(counts[i], classified);
            RegionEstimate {
                label,
                exact: exact.map(|e| e[i]),
                analytic: analytic[i],
                quadrature: quad[i],
                count: counts[i],
                monte_carlo,
                stderr,
            }
        })
        .collect();
    let aggregate = |labels: &[RegionLabel]| {
        let count = labels.iter().map(|l| counts[l.index()]).sum();
        let (monte_carlo, stderr) = estimate(count, classified);
        Aggregate { analytic: labels.iter().map(|l| analytic[l.index()]).sum(), monte_carlo, stderr }
    };
    RegionAreas {
        config: *cfg,
        p_max,
        q_max,
        regions,
        classified,
        excluded,
        trinomial_converges: aggregate(&[
            RegionLabel::DiscPositiveBothConverge,
            RegionLabel::DiscNegativeTrinomialConverges,
        ]),
        some_series_converges: aggregate(&[
            RegionLabel::DiscPositiveBothConverge,
            RegionLabel::DiscNegativeTrinomialConverges,
            RegionLabel::DiscNegativeDiscConverges,
        ]),
        unclipped_disc_ratio: unclipped_disc_ratio(),
    }
}

/// The trinomial-convergence fraction under the max height, for each `h`.
pub fn max_height_trend(hs: &[f64], samples: u64, rng_seed: u64, exec: Exec) -> Result<Vec<RegionAreas>, CensusError> {
    hs.iter()
        .map(|&h| Ok(region_areas(&CensusConfig::new(HeightMode::MaxHeight, h, samples, rng_seed)?.with_exec(exec))))
        .collect()
}
