//! The subcommands. Each returns what to print and the exit code; none
//! writes to stdout directly, so identical invocations give identical bytes.

use serde_json::{json, Value};

use discroot::adic::{char3_negative_control, expand_generic_in, AdicError, CubicForm, Engine, LiftConfig};
use discroot::census::{
    max_height_trend, quartic_census_sample, quilt_data, region_areas, CensusConfig, HeightMode, RegionAreas,
};
use discroot::exec::Exec;
use discroot::quartic::{generic_quartic, ramified_factor, QuarticError};
use discroot::real::{solve_cubic as solve, RealError, RealGeneralCubic, SolveMethod};
use discroot::rings::Q;
use discroot::series::{char2_congruence_first_failure, verify_identity, Identity, RingChoice};

use crate::output::{csv_table, f64_json, f64_text, scalar, text_lines, to_json, Failure, Format, Outcome, REFUSAL, USAGE, VERIFICATION};
use crate::{
    CensusArgs, CensusKind, EngineArg, ExpandArgs, FactorArgs, FormArg, MethodArg, ModeArg, SolveArgs, VerifyArgs,
};

type Run = Result<Outcome, Failure>;

fn real_failure(e: RealError, format: Format) -> Failure {
    let (code, kind) = match &e {
        RealError::NotFinite(_) => (USAGE, "usage"),
        RealError::Refused { .. } => (REFUSAL, "refused"),
        RealError::NonConvergence(_) => (REFUSAL, "non_convergence"),
        RealError::Domain(_) => (REFUSAL, "domain"),
        RealError::Precondition(_) => (REFUSAL, "precondition"),
        RealError::Ambiguous(..) => (REFUSAL, "ambiguous"),
    };
    let extra = match &e {
        RealError::Refused { series, verdict, ratio } => {
            Some(json!({ "series": series.to_string(), "verdict": verdict.to_string(), "ratio": f64_json(*ratio) }))
        }
        _ => None,
    };
    Failure::with_body(code, kind, e.to_string(), format, extra)
}

pub fn solve_cubic(a: SolveArgs) -> Run {
    let g = match (a.p, a.q, a.c1, a.c2, a.c3) {
        (Some(p), Some(q), None, None, None) => RealGeneralCubic::new(0.0, p, q),
        (None, None, Some(c1), Some(c2), Some(c3)) => RealGeneralCubic::new(c1, c2, c3),
        _ => return Err(Failure::usage("give --p and --q, or --c1, --c2 and --c3")),
    }
    .map_err(Failure::usage)?;
    // written so that a NaN tolerance is rejected too
    let tol_ok = a.tol > 0.0;
    if !tol_ok || a.max_terms == 0 {
        return Err(Failure::usage("--tol must be positive and --max-terms at least 1"));
    }
    let method = match a.method {
        MethodArg::Discriminant => SolveMethod::Discriminant,
        MethodArg::Trinomial => SolveMethod::Trinomial,
        MethodArg::Trig => SolveMethod::Trig,
        MethodArg::Oracle => SolveMethod::Oracle,
        MethodArg::Auto => SolveMethod::Auto,
    };
    let report = solve(&g, method, a.tol, a.max_terms).map_err(|e| real_failure(e, a.format))?;
    let json = report.to_json();
    let roots = json["roots"].as_array().cloned().unwrap_or_default();
    let value_parts = |r: &Value| match &r["value"] {
        Value::Object(z) => (scalar(&z["re"]), scalar(&z["im"])),
        v => (scalar(v), "0".into()),
    };
    Ok(Outcome::ok(match a.format {
        Format::Json => to_json(&json),
        Format::Csv => csv_table(
            &["method", "re", "im", "sign", "residual", "terms_used"],
            roots.iter().map(|r| {
                let (re, im) = value_parts(r);
                vec![scalar(&r["method"]), re, im, scalar(&r["sign"]), scalar(&r["residual"]), scalar(&r["terms_used"])]
            }),
        ),
        Format::Text => {
            let mut out = format!("depressed: p = {}, q = {}\n", f64_text(report.depressed.p), f64_text(report.depressed.q));
            if let Some(s) = report.chosen {
                out.push_str(&format!("auto chose the {s} series\n"));
            }
            for v in &report.convergence {
                out.push_str(&format!("{} series {} (ratio {})\n", v.series, v.verdict, f64_text(v.ratio)));
            }
            for r in &roots {
                let (re, im) = value_parts(r);
                let value = match im.strip_prefix('-') {
                    _ if im == "0" => re,
                    Some(abs) => format!("{re} - {abs} i"),
                    None => format!("{re} + {im} i"),
                };
                out.push_str(&format!(
                    "{}: {} (sign {}, residual {}, terms {})\n",
                    scalar(&r["method"]),
                    value,
                    scalar(&r["sign"]),
                    scalar(&r["residual"]),
                    scalar(&r["terms_used"])
                ));
            }
            out
        }
    }))
}

fn adic_failure(e: AdicError, format: Format) -> Failure {
    match e {
        AdicError::Char3Depressed => {
            let extra = char3_negative_control().ok().map(|c| json!({ "certificate": c }));
            Failure::with_body(REFUSAL, "no_root", e.to_string(), format, extra)
        }
        AdicError::InvalidOrder | AdicError::WrongCharacteristic { .. } | AdicError::CharacteristicMismatch { .. } => {
            Failure::with_body(USAGE, "usage", e.to_string(), format, None)
        }
        other => Failure::with_body(VERIFICATION, "verification", other.to_string(), format, None),
    }
}

pub fn expand_generic(a: ExpandArgs) -> Run {
    let form = match a.form {
        FormArg::Depressed => CubicForm::Depressed,
        FormArg::General => CubicForm::General,
    };
    let engine = match a.engine {
        EngineArg::Series => Engine::Series,
        EngineArg::Hensel => Engine::Hensel,
        EngineArg::Both => Engine::Both,
    };
    let e = expand_generic_in(a.characteristic, form, a.order, engine).map_err(|e| adic_failure(e, a.format))?;
    let passed = e.verified && e.all_match();
    let stdout = match a.format {
        Format::Json => to_json(&serde_json::to_value(&e).expect("expansions serialize")),
        Format::Csv => csv_table(
            &["index", "digit", "series", "hensel", "matches"],
            e.digits.iter().enumerate().map(|(i, d)| {
                let v = e.verdicts.get(i);
                vec![
                    i.to_string(),
                    d.clone(),
                    v.map_or(String::new(), |v| v.series.clone()),
                    v.map_or(String::new(), |v| v.hensel.clone()),
                    v.map_or(String::new(), |v| v.matches.to_string()),
                ]
            }),
        ),
        Format::Text => {
            let mut out = format!("prime: {}\nresidue root: {}\nroot: {}\nv(f(root)): {}\n", e.pi, e.seed, e.rendered, e.root_valuation);
            for v in &e.verdicts {
                out.push_str(&format!("digit {}: {}\n", v.index, if v.matches { "match" } else { "MISMATCH" }));
            }
            out
        }
    };
    Ok(Outcome::verdict(stdout, passed))
}

pub fn factor_quartic(a: FactorArgs) -> Run {
    let fail = |e: QuarticError| match e {
        QuarticError::Adic(AdicError::InvalidOrder) => Failure::with_body(USAGE, "usage", e.to_string(), a.format, None),
        other => Failure::with_body(VERIFICATION, "verification", other.to_string(), a.format, None),
    };
    let cfg = LiftConfig::for_field::<Q>(a.order).map_err(|e| fail(e.into()))?;
    let (g, pi) = generic_quartic::<Q>().map_err(fail)?;
    let r = ramified_factor(&g, &pi, &cfg).map_err(fail)?;
    let summary = r.summary(&g).map_err(fail)?;
    let holds = summary.holds();
    let body = json!({
        "quartic": "t^4 + c*t^2 + d*t + e",
        "factor": r.render(),
        "cofactor": format!("t^2 + ({}) t + ({})", r.u1.render(), r.u0.render()),
        "summary": summary,
        "holds": holds,
    });
    let stdout = match a.format {
        Format::Json => to_json(&body),
        Format::Csv => csv_table(
            &["index", "s", "const_term"],
            summary.s.iter().zip(&summary.const_term).enumerate().map(|(i, (s, k))| vec![i.to_string(), s.clone(), k.clone()]),
        ),
        Format::Text => text_lines(&body),
    };
    Ok(Outcome::verdict(stdout, holds))
}

fn areas_text(r: &RegionAreas) -> String {
    let mut out = format!(
        "rectangle: |p| <= {}, 0 <= q <= {} ({} samples, seed {}, {} excluded)\n",
        f64_text(r.p_max),
        f64_text(r.q_max),
        r.config.samples,
        r.config.rng_seed,
        r.excluded
    );
    for e in &r.regions {
        out.push_str(&format!(
            "{}: analytic {} quadrature {} monte_carlo {} +- {}{}\n",
            e.label,
            f64_text(e.analytic),
            f64_text(e.quadrature),
            f64_text(e.monte_carlo),
            f64_text(e.stderr),
            e.exact.map_or(String::new(), |x| format!(" (exact {x})"))
        ));
    }
    out.push_str(&format!(
        "trinomial series converges: analytic {} monte_carlo {} +- {}\n",
        f64_text(r.trinomial_converges.analytic),
        f64_text(r.trinomial_converges.monte_carlo),
        f64_text(r.trinomial_converges.stderr)
    ));
    out.push_str(&format!(
        "some series converges: analytic {} monte_carlo {} +- {}\n",
        f64_text(r.some_series_converges.analytic),
        f64_text(r.some_series_converges.monte_carlo),
        f64_text(r.some_series_converges.stderr)
    ));
    out
}

pub fn census(a: CensusArgs) -> Run {
    let mode = match a.mode {
        ModeArg::Max => HeightMode::MaxHeight,
        ModeArg::Naive => HeightMode::NaiveHeight,
    };
    let exec = if a.sequential { Exec::Sequential } else { Exec::default() };
    let cfg = CensusConfig::new(mode, a.h, a.samples, a.seed).map_err(Failure::usage)?.with_exec(exec);
    let stdout = match a.kind {
        CensusKind::Areas => {
            let r = region_areas(&cfg);
            match a.format {
                Format::Json => to_json(&r.to_json()),
                Format::Csv => csv_table(
                    &["label", "exact", "analytic", "quadrature", "count", "monte_carlo", "stderr"],
                    r.regions.iter().map(|e| {
                        vec![
                            e.label.to_string(),
                            e.exact.unwrap_or("").to_string(),
                            f64_text(e.analytic),
                            f64_text(e.quadrature),
                            e.count.to_string(),
                            f64_text(e.monte_carlo),
                            f64_text(e.stderr),
                        ]
                    }),
                ),
                Format::Text => areas_text(&r),
            }
        }
        CensusKind::Quilt | CensusKind::Curves => {
            let quilt = quilt_data(&cfg, a.grid).map_err(Failure::usage)?;
            match a.format {
                Format::Json => to_json(&serde_json::to_value(&quilt).expect("quilts serialize")),
                Format::Csv | Format::Text => {
                    let mut buf = Vec::new();
                    let written = if matches!(a.kind, CensusKind::Quilt) {
                        quilt.write_cells_csv(&mut buf)
                    } else {
                        quilt.write_curves_csv(&mut buf)
                    };
                    written.map_err(|e| Failure::usage(format!("cannot write CSV: {e}")))?;
                    String::from_utf8(buf).expect("CSV is UTF-8")
                }
            }
        }
        CensusKind::Trend => {
            let trend = max_height_trend(&a.hs, a.samples, a.seed, exec).map_err(Failure::usage)?;
            let rows = trend.iter().map(|r| {
                let t = r.trinomial_converges;
                vec![f64_text(r.config.h), f64_text(t.analytic), f64_text(t.monte_carlo), f64_text(t.stderr)]
            });
            match a.format {
                Format::Json => to_json(&Value::Array(trend.iter().map(RegionAreas::to_json).collect())),
                Format::Csv => csv_table(&["h", "analytic", "monte_carlo", "stderr"], rows),
                Format::Text => rows
                    .map(|r| format!("h = {}: trinomial series converges for {} (monte carlo {} +- {})\n", r[0], r[1], r[2], r[3]))
                    .collect(),
            }
        }
        CensusKind::Quartic => {
            if a.scales.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
                return Err(Failure::usage("scales must be positive"));
            }
            let census = quartic_census_sample(&cfg, &a.scales);
            let rows = census.scales.iter().map(|s| {
                vec![
                    f64_text(s.m),
                    s.positive_root.to_string(),
                    s.non_positive_root.to_string(),
                    s.diverges.to_string(),
                    s.unresolved.to_string(),
                    f64_text(s.fraction),
                ]
            });
            match a.format {
                Format::Json => to_json(&census.to_json()),
                Format::Csv => csv_table(&["m", "positive_root", "non_positive_root", "diverges", "unresolved", "fraction"], rows),
                Format::Text => {
                    let mut out = format!("excluded (d = 0): {}\n", census.excluded_d_zero);
                    for r in rows {
                        out.push_str(&format!("m = {}: positive discriminant root for {} of the samples\n", r[0], r[5]));
                    }
                    out
                }
            }
        }
    };
    Ok(Outcome::ok(stdout))
}

pub fn verify_identities(a: VerifyArgs) -> Run {
    let ring: Option<RingChoice> = a.ring.as_deref().map(str::parse).transpose().map_err(Failure::usage)?;
    let identities: Vec<Identity> = if a.all {
        Identity::standard_suite()
    } else {
        a.identity.iter().map(|s| s.parse().map_err(Failure::usage)).collect::<Result<_, _>>()?
    };
    let mut reports = Vec::new();
    for id in identities {
        let rings = ring.map_or_else(|| id.default_rings().to_vec(), |r| vec![r]);
        for r in rings {
            reports.push(verify_identity(id, a.order, r).map_err(Failure::usage)?);
        }
    }
    let congruence = if a.all {
        let first = char2_congruence_first_failure(a.order as u64).map_err(Failure::usage)?;
        Some(json!({ "nmax": a.order, "holds": first.is_none(), "first_failure": first }))
    } else {
        None
    };
    let all_hold = reports.iter().all(|r| r.holds) && congruence.as_ref().is_none_or(|c| c["holds"] == true);
    let stdout = match a.format {
        Format::Json => to_json(&json!({
            "order": a.order,
            "identities": reports,
            "char2_congruence": congruence,
            "all_hold": all_hold,
        })),
        Format::Csv => csv_table(
            &["identity", "ring", "order", "holds", "first_failure"],
            reports.iter().map(|r| {
                vec![
                    r.identity.clone(),
                    r.ring.clone(),
                    r.order.to_string(),
                    r.holds.to_string(),
                    r.first_failure.as_ref().map_or(String::new(), |m| m.index.to_string()),
                ]
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let status = if r.holds { "pass".to_string() } else { format!("FAIL at z^{}", r.first_failure.as_ref().map_or(0, |m| m.index)) };
                out.push_str(&format!("{} over {} through order {}: {}\n", r.identity, r.ring, r.order, status));
            }
            if let Some(c) = &congruence {
                let status = if c["holds"] == true { "pass".into() } else { format!("FAIL at n = {}", c["first_failure"]) };
                out.push_str(&format!("C(3n,n) = A_n(3,1) mod 2 for n <= {}: {}\n", a.order, status));
            }
            out
        }
    };
    Ok(Outcome::verdict(stdout, all_hold))
}
