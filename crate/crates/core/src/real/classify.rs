use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::oracle::oracle_roots;
use super::report::{ser_complex_vec, ser_f64, Classification, Method, RootReport, RootValue};
use super::sum::{discriminant_root, trinomial_cubic_root, DEFAULT_MAX_TERMS, DEFAULT_TOL};
use super::{convergence_check, RealDepressedCubic, RealError, SeriesId, BOUNDARY_MARGIN};
use crate::exec::{job_rng, Exec};

/// Relative tolerance when matching a series root to an oracle root.
const MATCH_TOL: f64 = 1e-8;

/// One claim about the roots and whether it held.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub holds: bool,
}

/// The three oracle roots, both series roots where they converge, and
/// the claims relating them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub cubic: RealDepressedCubic,
    #[serde(serialize_with = "ser_f64")]
    pub discriminant: f64,
    /// Sorted by absolute value, then argument.
    #[serde(serialize_with = "ser_complex_vec")]
    pub oracle: Vec<Complex64>,
    pub roots: Vec<RootReport>,
    pub discriminant_root: RootReport,
    pub trinomial_root: RootReport,
    pub checks: Vec<ClaimCheck>,
}

impl ClassificationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.claim).collect()
    }
}

fn is_real(z: Complex64, scale: f64) -> bool {
    z.im.abs() <= 1e-12 * scale
}

/// Evaluates whichever series converge and checks them against the
/// oracle: the discriminant root is the longest root and has the sign of
/// `-q`; the trinomial root is the shortest; for `Delta > 0` both series
/// converge and the short and middle roots have the sign of `q`; for
/// `Delta < 0` the real root has the sign of `-q`, and when `p > 0` it is
/// shorter than the complex pair and the discriminant series diverges.
pub fn classify_roots(f: &RealDepressedCubic, tie_tol: f64) -> Result<ClassificationReport, RealError> {
    let disc = f.discriminant();
    if f.p == 0.0 || f.q == 0.0 || disc == 0.0 {
        return Err(RealError::Precondition("classification needs p, q and Delta nonzero".into()));
    }
    let oracle = oracle_roots(f);
    let mags = oracle.map(|z| z.norm());
    let scale = mags[2].max(1.0);
    for i in 0..2 {
        let (a, b) = (oracle[i], oracle[i + 1]);
        let conjugates = !is_real(a, scale) && (a - b.conj()).norm() <= 1e-9 * scale;
        if !conjugates && (mags[i + 1] - mags[i]).abs() <= tie_tol * mags[i + 1] {
            return Err(RealError::Ambiguous(mags[i], mags[i + 1]));
        }
    }

    let sign_q = f.sign_of(f.q);
    let matches = |alpha: f64, root: Complex64| (Complex64::new(alpha, 0.0) - root).norm() <= MATCH_TOL * scale;
    let label = |alpha: f64| {
        if matches(alpha, oracle[2]) {
            Classification::Longest
        } else if matches(alpha, oracle[0]) {
            Classification::Shortest
        } else if matches(alpha, oracle[1]) {
            Classification::Middle
        } else {
            Classification::NotApplicable
        }
    };
    let mut checks = Vec::new();
    let mut check = |claim, holds| checks.push(ClaimCheck { claim, holds });

    let d_verdict = convergence_check(f, SeriesId::Discriminant, BOUNDARY_MARGIN)?;
    let mut d_report = if d_verdict.converges() {
        discriminant_root(f, DEFAULT_TOL, DEFAULT_MAX_TERMS)?
    } else {
        RootReport::not_converged(Method::DiscriminantSeries, 0)
    };
    if let Some(alpha) = d_report.real_value() {
        d_report.classification = Some(label(alpha));
        check("discriminant_root_is_longest", is_real(oracle[2], scale) && matches(alpha, oracle[2]));
        check("discriminant_root_has_sign_of_minus_q", d_report.sign == Some(sign_q.flip()));
    }

    let t_verdict = convergence_check(f, SeriesId::Trinomial, BOUNDARY_MARGIN)?;
    let mut t_report = if t_verdict.converges() {
        trinomial_cubic_root(f, DEFAULT_TOL, DEFAULT_MAX_TERMS)?
    } else {
        RootReport::not_converged(Method::TrinomialSeries, 0)
    };
    if let Some(alpha) = t_report.real_value() {
        t_report.classification = Some(label(alpha));
        check("trinomial_root_is_shortest", is_real(oracle[0], scale) && matches(alpha, oracle[0]));
    }

    let mut roots: Vec<RootReport> = oracle
        .iter()
        .map(|&z| {
            let real = is_real(z, scale);
            RootReport {
                value: Some(if real { RootValue::Real(z.re) } else { RootValue::Complex(z) }),
                method: Method::Oracle,
                terms_used: 0,
                converged: true,
                classification: None,
                sign: real.then(|| f.sign_of(z.re)),
                residual: Some(((z * z + f.p) * z + f.q).norm()),
            }
        })
        .collect();

    if disc > 0.0 {
        for (r, c) in roots.iter_mut().zip([Classification::Shortest, Classification::Middle, Classification::Longest]) {
            r.classification = Some(c);
        }
        check("positive_discriminant_both_series_converge", d_report.converged && t_report.converged);
        if t_report.converged {
            check("trinomial_root_has_sign_of_q", t_report.sign == Some(sign_q));
        }
        check("middle_root_has_sign_of_q", roots[1].sign == Some(sign_q));
    } else {
        let real_idx = (0..3).find(|&i| is_real(oracle[i], scale));
        for (i, r) in roots.iter_mut().enumerate() {
            r.classification = Some(if Some(i) == real_idx { Classification::UniqueReal } else { Classification::NotApplicable });
        }
        match real_idx {
            Some(i) => {
                check("unique_real_root_has_sign_of_minus_q", roots[i].sign == Some(sign_q.flip()));
                if f.p > 0.0 {
                    check("positive_p_real_root_is_shorter", i == 0);
                    check("positive_p_discriminant_series_diverges", !d_report.converged);
                }
            }
            None => check("negative_discriminant_has_a_real_root", false),
        }
    }

    Ok(ClassificationReport {
        cubic: *f,
        discriminant: disc,
        oracle: oracle.to_vec(),
        roots,
        discriminant_root: d_report,
        trinomial_root: t_report,
        checks,
    })
}

/// Parameters of the randomized classification suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub samples: u64,
    pub seed: u64,
    /// `p, q` are uniform on `[-range, range]`.
    pub range: f64,
    /// Samples whose convergence ratios are within this of 1 are redrawn.
    pub boundary_margin: f64,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { samples: 1000, seed: 0, range: 10.0, boundary_margin: 0.05, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteFailure {
    pub index: u64,
    pub cubic: RealDepressedCubic,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub positive_discriminant: u64,
    pub negative_discriminant: u64,
    pub discriminant_converged: u64,
    pub trinomial_converged: u64,
    pub checks_run: u64,
    pub failures: Vec<SuiteFailure>,
}

/// Draws sample `index`: uniform `(p, q)` off the axes, off `Delta = 0`,
/// and away from both convergence boundaries.
pub fn suite_sample(cfg: &SuiteConfig, index: u64) -> RealDepressedCubic {
    let mut rng = job_rng(cfg.seed, index);
    loop {
        let p = rng.gen_range(-cfg.range..=cfg.range);
        let q = rng.gen_range(-cfg.range..=cfg.range);
        let Ok(f) = RealDepressedCubic::new(p, q) else { continue };
        if p == 0.0 || q == 0.0 || f.discriminant().abs() <= 1e-9 * (4.0 * p.abs().powi(3) + 27.0 * q * q) {
            continue;
        }
        let near = |s| {
            convergence_check(&f, s, 0.0).map(|v| (v.ratio - 1.0).abs() <= cfg.boundary_margin).unwrap_or(true)
        };
        if near(SeriesId::Discriminant) || near(SeriesId::Trinomial) {
            continue;
        }
        return f;
    }
}

/// Classifies `cfg.samples` seeded random cubics; the result does not
/// depend on `cfg.exec`.
pub fn classification_suite(cfg: &SuiteConfig) -> SuiteReport {
    let results = cfg.exec.map(cfg.samples, |i| {
        let f = suite_sample(cfg, i);
        (i, f, classify_roots(&f, super::TIE_TOL))
    });
    let mut report = SuiteReport {
        config: *cfg,
        positive_discriminant: 0,
        negative_discriminant: 0,
        discriminant_converged: 0,
        trinomial_converged: 0,
        checks_run: 0,
        failures: vec![],
    };
    for (index, cubic, r) in results {
        match r {
            Ok(c) => {
                if c.discriminant > 0.0 {
                    report.positive_discriminant += 1;
                } else {
                    report.negative_discriminant += 1;
                }
                report.discriminant_converged += c.discriminant_root.converged as u64;
                report.trinomial_converged += c.trinomial_root.converged as u64;
                report.checks_run += c.checks.len() as u64;
                if !c.all_hold() {
                    report.failures.push(SuiteFailure { index, cubic, reason: c.failed().join(", ") });
                }
            }
            Err(e) => report.failures.push(SuiteFailure { index, cubic, reason: e.to_string() }),
        }
    }
    report
}
