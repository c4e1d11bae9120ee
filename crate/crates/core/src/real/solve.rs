//! Solving a real cubic by a chosen method, or by whichever series
//! converges.

use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::report::ser_f64;
use super::{
    convergence_check, general_cubic_root, oracle_roots, trig_roots, ConvergenceVerdict, Method, RealDepressedCubic,
    RealError, RealGeneralCubic, RootReport, RootValue, SeriesId, SeriesMethod, Sign, BOUNDARY_MARGIN, SIGN_ZERO_TOL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Discriminant,
    Trinomial,
    Trig,
    Oracle,
    /// The discriminant series if it converges, else the trinomial series.
    Auto,
}

impl FromStr for SolveMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "discriminant" => Ok(SolveMethod::Discriminant),
            "trinomial" => Ok(SolveMethod::Trinomial),
            "trig" => Ok(SolveMethod::Trig),
            "oracle" => Ok(SolveMethod::Oracle),
            "auto" => Ok(SolveMethod::Auto),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub cubic: RealGeneralCubic,
    pub depressed: RealDepressedCubic,
    /// Roots of the cubic are roots of the depressed cubic plus this.
    #[serde(serialize_with = "ser_f64")]
    pub shift: f64,
    pub method: SolveMethod,
    /// The series `auto` settled on.
    pub chosen: Option<SeriesId>,
    /// Convergence verdicts of both series for the depressed cubic
    /// (empty when `p = 0`).
    pub convergence: Vec<ConvergenceVerdict>,
    pub roots: Vec<RootReport>,
}

impl SolveReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("solve reports serialize")
    }
}

/// Moves a root of the depressed cubic back to `g` and re-measures it.
fn shifted(g: &RealGeneralCubic, f: &RealDepressedCubic, shift: f64, t: f64, method: Method, terms: u64) -> RootReport {
    let x = t + shift;
    let scale = f.scale().max(shift.abs());
    RootReport::real(x, method, terms, Sign::of(x, SIGN_ZERO_TOL * scale), g.eval(x).abs())
}

fn complex_report(g: &RealGeneralCubic, z: Complex64) -> RootReport {
    let value = ((z + g.c1) * z + g.c2) * z + g.c3;
    RootReport {
        value: Some(RootValue::Complex(z)),
        method: Method::Oracle,
        terms_used: 0,
        converged: true,
        classification: None,
        sign: None,
        residual: Some(value.norm()),
    }
}

/// Solves `t^3 + c1 t^2 + c2 t + c3 = 0` by `method`. Series methods return
/// one root and refuse when their series does not converge; `trig`
/// returns the three real roots and needs a positive discriminant;
/// `oracle` returns all three roots.
pub fn solve_cubic(g: &RealGeneralCubic, method: SolveMethod, tol: f64, max_terms: u64) -> Result<SolveReport, RealError> {
    let (f, shift) = g.depressed();
    let convergence = if f.p == 0.0 {
        vec![]
    } else {
        vec![
            convergence_check(&f, SeriesId::Discriminant, BOUNDARY_MARGIN)?,
            convergence_check(&f, SeriesId::Trinomial, BOUNDARY_MARGIN)?,
        ]
    };
    let series = |m| general_cubic_root(g, m, tol, max_terms).map(|r| vec![r]);
    let mut chosen = None;
    let roots = match method {
        SolveMethod::Discriminant => series(SeriesMethod::Discriminant)?,
        SolveMethod::Trinomial => series(SeriesMethod::Trinomial)?,
        SolveMethod::Trig => trig_roots(&f)?
            .iter()
            .map(|r| shifted(g, &f, shift, r.real_value().expect("trig roots are real"), r.method, 0))
            .collect(),
        SolveMethod::Oracle => oracle_roots(&f)
            .iter()
            .map(|z| {
                if z.im == 0.0 {
                    shifted(g, &f, shift, z.re, Method::Oracle, 0)
                } else {
                    complex_report(g, z + shift)
                }
            })
            .collect(),
        SolveMethod::Auto => {
            let Some(v) = convergence.iter().find(|v| v.converges()) else {
                return Err(match convergence.first() {
                    Some(v) => RealError::Refused { series: v.series, verdict: v.verdict, ratio: v.ratio },
                    None => RealError::Precondition("p = 0: neither series is defined".into()),
                });
            };
            chosen = Some(v.series);
            match v.series {
                SeriesId::Discriminant => series(SeriesMethod::Discriminant)?,
                SeriesId::Trinomial => series(SeriesMethod::Trinomial)?,
            }
        }
    };
    Ok(SolveReport { cubic: *g, depressed: f, shift, method, chosen, convergence, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{DEFAULT_MAX_TERMS, DEFAULT_TOL};

    fn solve(c: [f64; 3], m: SolveMethod) -> Result<SolveReport, RealError> {
        solve_cubic(&RealGeneralCubic::new(c[0], c[1], c[2]).unwrap(), m, DEFAULT_TOL, DEFAULT_MAX_TERMS)
    }

    #[test]
    fn worked_example_by_every_method() {
        let c = [0.0, -15.0, -4.0];
        let d = solve(c, SolveMethod::Discriminant).unwrap();
        assert!((d.roots[0].real_value().unwrap() - 4.0).abs() < 1e-12);
        let t = solve(c, SolveMethod::Trinomial).unwrap();
        assert!((t.roots[0].real_value().unwrap() - (3f64.sqrt() - 2.0)).abs() < 1e-12);
        assert_eq!(solve(c, SolveMethod::Trig).unwrap().roots.len(), 3);
        assert_eq!(solve(c, SolveMethod::Oracle).unwrap().roots.len(), 3);
        assert_eq!(solve(c, SolveMethod::Auto).unwrap().chosen, Some(SeriesId::Discriminant));
    }

    #[test]
    fn auto_falls_back_and_refuses() {
        // p > 0: the discriminant series diverges, the trinomial one converges
        let r = solve([0.0, 1.0, 0.1], SolveMethod::Auto).unwrap();
        assert_eq!(r.chosen, Some(SeriesId::Trinomial));
        assert!(matches!(solve([0.0, 1.0, 10.0], SolveMethod::Auto), Err(RealError::Refused { .. })));
        assert!(matches!(solve([0.0, 1.0, 10.0], SolveMethod::Discriminant), Err(RealError::Refused { .. })));
        assert!(matches!(solve([0.0, 0.0, 1.0], SolveMethod::Auto), Err(RealError::Precondition(_))));
    }

    #[test]
    fn general_form_is_shifted_back() {
        // (t - 1)(t - 2)(t - 4)
        let g = RealGeneralCubic::from_roots([1.0, 2.0, 4.0]).unwrap();
        let r = solve([g.c1, g.c2, g.c3], SolveMethod::Trig).unwrap();
        let mut v: Vec<f64> = r.roots.iter().map(|x| x.real_value().unwrap()).collect();
        v.sort_by(f64::total_cmp);
        for (a, b) in v.iter().zip([1.0, 2.0, 4.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let o = solve([0.0, 1.0, 1.0], SolveMethod::Oracle).unwrap();
        assert_eq!(o.roots.iter().filter(|r| r.real_value().is_some()).count(), 1);
        assert!(o.roots.iter().all(|r| r.residual.unwrap() < 1e-12));
    }
}
