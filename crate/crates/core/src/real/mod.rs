//! Floating-point evaluation over the reals and complexes: convergence of
//! the two series, the roots they produce, independent numeric oracles,
//! and the classification of roots by absolute value.

mod classify;
mod oracle;
pub(crate) mod report;
mod solve;
mod sum;

use serde::Serialize;
use thiserror::Error;

pub use classify::{
    classification_suite, classify_roots, ClaimCheck, ClassificationReport, SuiteConfig, SuiteFailure, SuiteReport,
};
pub use oracle::{durand_kerner, oracle_roots, oracle_roots_complex, trig_roots};
pub use report::{Classification, Method, RootReport, RootValue, Sign};
pub use solve::{solve_cubic, SolveMethod, SolveReport};
pub use sum::{
    discriminant_partial_sums, discriminant_partial_sums_exact, discriminant_root, general_cubic_root, trinomial_cubic_root, trinomial_root, CompensatedSum, SeriesMethod,
    DEFAULT_MAX_TERMS, DEFAULT_TOL,
};

/// Relative distance from a convergence boundary inside which evaluation
/// is refused.
pub const BOUNDARY_MARGIN: f64 = 1e-6;
/// Relative tolerance under which two root magnitudes count as tied.
pub const TIE_TOL: f64 = 1e-9;
/// A value is signless when it is within this multiple of the scale of 0.
pub const SIGN_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RealError {
    #[error("coefficients must be finite, got {0}")]
    NotFinite(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the {series} series {verdict} (ratio {ratio:.6e}); evaluation refused")]
    Refused { series: SeriesId, verdict: Verdict, ratio: f64 },
    #[error("no convergence after {0} terms")]
    NonConvergence(u64),
    #[error("outside the three-real-root regime: {0}")]
    Domain(String),
    #[error("root magnitudes {0:.17e} and {1:.17e} tie within tolerance; cannot classify")]
    Ambiguous(f64, f64),
}

/// `t^3 + p t + q` with real coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealDepressedCubic {
    #[serde(serialize_with = "report::ser_f64")]
    pub p: f64,
    #[serde(serialize_with = "report::ser_f64")]
    pub q: f64,
}

impl RealDepressedCubic {
    pub fn new(p: f64, q: f64) -> Result<Self, RealError> {
        if !p.is_finite() || !q.is_finite() {
            return Err(RealError::NotFinite(format!("p = {p}, q = {q}")));
        }
        Ok(RealDepressedCubic { p, q })
    }

    /// `-4 p^3 - 27 q^2`.
    pub fn discriminant(&self) -> f64 {
        -4.0 * self.p.powi(3) - 27.0 * self.q * self.q
    }

    pub fn eval(&self, t: f64) -> f64 {
        (t * t + self.p) * t + self.q
    }

    /// The size of the roots: `max(1, |p|^(1/2), |q|^(1/3))`.
    pub fn scale(&self) -> f64 {
        1f64.max(self.p.abs().sqrt()).max(self.q.abs().cbrt())
    }

    /// Tolerance for `|f(alpha)|`: `1e-8 * max(1, |p||alpha|, |q|)`.
    pub fn residual_bound(&self, alpha: f64) -> f64 {
        1e-8 * 1f64.max(self.p.abs() * alpha.abs()).max(self.q.abs())
    }

    pub fn sign_of(&self, x: f64) -> Sign {
        Sign::of(x, SIGN_ZERO_TOL * self.scale())
    }

    /// `f(m t) / m^3 = t^3 + (p/m^2) t + q/m^3`, whose roots are those of
    /// `f` divided by `m`.
    pub fn scaled(&self, m: f64) -> Result<Self, RealError> {
        Self::new(self.p / (m * m), self.q / (m * m * m))
    }
}

/// `t^3 + c1 t^2 + c2 t + c3` with real coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealGeneralCubic {
    #[serde(serialize_with = "report::ser_f64")]
    pub c1: f64,
    #[serde(serialize_with = "report::ser_f64")]
    pub c2: f64,
    #[serde(serialize_with = "report::ser_f64")]
    pub c3: f64,
}

impl RealGeneralCubic {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self, RealError> {
        if ![c1, c2, c3].iter().all(|c| c.is_finite()) {
            return Err(RealError::NotFinite(format!("c1 = {c1}, c2 = {c2}, c3 = {c3}")));
        }
        Ok(RealGeneralCubic { c1, c2, c3 })
    }

    /// The monic cubic with the given roots.
    pub fn from_roots(r: [f64; 3]) -> Result<Self, RealError> {
        Self::new(-(r[0] + r[1] + r[2]), r[0] * r[1] + r[0] * r[2] + r[1] * r[2], -(r[0] * r[1] * r[2]))
    }

    /// The substitution `t -> t - c1/3`, and that shift.
    pub fn depressed(&self) -> (RealDepressedCubic, f64) {
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        let p = c2 - c1 * c1 / 3.0;
        let q = 2.0 * c1.powi(3) / 27.0 - c1 * c2 / 3.0 + c3;
        (RealDepressedCubic { p, q }, -c1 / 3.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        ((t + self.c1) * t + self.c2) * t + self.c3
    }
}

/// Which of the two series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesId {
    Discriminant,
    Trinomial,
}

impl std::fmt::Display for SeriesId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SeriesId::Discriminant => "discriminant",
            SeriesId::Trinomial => "trinomial",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converges,
    Diverges,
    Boundary,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Converges => "converges",
            Verdict::Diverges => "diverges",
            Verdict::Boundary => "is at its convergence boundary",
        })
    }
}

/// The ratio of the series argument to the radius of convergence, and
/// what it implies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceVerdict {
    pub series: SeriesId,
    pub verdict: Verdict,
    #[serde(serialize_with = "report::ser_f64")]
    pub ratio: f64,
    #[serde(serialize_with = "report::ser_f64")]
    pub margin: f64,
}

impl ConvergenceVerdict {
    /// Classifies `ratio` against 1 with the given relative margin.
    pub fn from_ratio(series: SeriesId, ratio: f64, margin: f64) -> Self {
        let verdict = if ratio < 1.0 - margin {
            Verdict::Converges
        } else if ratio > 1.0 + margin {
            Verdict::Diverges
        } else {
            Verdict::Boundary
        };
        ConvergenceVerdict { series, verdict, ratio, margin }
    }

    pub fn converges(&self) -> bool {
        self.verdict == Verdict::Converges
    }
}

/// `|Delta| / 4|p|^3` for the discriminant series, `27 q^2 / 4|p|^3` for
/// the trinomial series; the series converges when the ratio is below 1.
pub fn convergence_check(f: &RealDepressedCubic, series: SeriesId, margin: f64) -> Result<ConvergenceVerdict, RealError> {
    if f.p == 0.0 {
        return Err(RealError::Precondition("p = 0".into()));
    }
    let denom = 4.0 * f.p.abs().powi(3);
    let ratio = match series {
        SeriesId::Discriminant => f.discriminant().abs() / denom,
        SeriesId::Trinomial => 27.0 * f.q * f.q / denom,
    };
    Ok(ConvergenceVerdict::from_ratio(series, ratio, margin))
}
