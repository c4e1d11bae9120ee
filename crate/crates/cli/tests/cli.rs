//! End-to-end runs of the `discroot` binary: exit codes, golden output,
//! schema validation and byte-for-byte determinism.
//!
//! Set `DISCROOT_BLESS=1` to rewrite the golden files from the current
//! binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn discroot(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_discroot")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("UTF-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("UTF-8 stderr"),
    }
}

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str, actual: &str) {
    let path: PathBuf = manifest_dir().join("tests/golden").join(name);
    if std::env::var_os("DISCROOT_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from its golden file\n--- expected\n{expected}\n--- actual\n{actual}");
}

fn validate(schema: &str, doc: &Value) {
    let path = manifest_dir().join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{} rejects the output: {msgs:#?}", path.display());
    };
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", run.stdout))
}

fn num(v: &Value) -> f64 {
    v.to_string().parse().unwrap_or_else(|_| panic!("not a number: {v}"))
}

#[test]
fn discriminant_root_of_worked_example() {
    let run = discroot(&["solve-cubic", "--p", "-15", "--q", "-4", "--method", "discriminant", "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = json(&run);
    validate("solve_cubic.schema.json", &doc);
    assert!((num(&doc["roots"][0]["value"]) - 4.0).abs() < 1e-12);
    assert_eq!(doc["roots"][0]["sign"], "positive");
    golden("solve_discriminant.json", &run.stdout);
}

#[test]
fn trinomial_root_of_worked_example() {
    let run = discroot(&["solve-cubic", "--p", "-15", "--q", "-4", "--method", "trinomial"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let value: f64 = run
        .stdout
        .lines()
        .find_map(|l| l.strip_prefix("trinomial_series: "))
        .and_then(|l| l.split_whitespace().next())
        .expect("a trinomial root line")
        .parse()
        .unwrap();
    assert!((value - (3f64.sqrt() - 2.0)).abs() < 1e-12, "{value}");
    assert!((value + 0.267949).abs() < 1e-6);
    golden("solve_trinomial.txt", &run.stdout);

    let json_run = discroot(&["solve-cubic", "--p", "-15", "--q", "-4", "--method", "trinomial", "--format", "json"]);
    validate("solve_cubic.schema.json", &json(&json_run));
}

#[test]
fn divergent_series_is_refused() {
    let run = discroot(&["solve-cubic", "--p", "1", "--q", "10", "--method", "discriminant", "--format", "json"]);
    assert_eq!(run.code, 2);
    let doc = json(&run);
    validate("error.schema.json", &doc);
    assert_eq!(doc["error"]["kind"], "refused");
    assert_eq!(doc["error"]["verdict"], "diverges");
    // |27 q^2 / 4 p^3| = 675/4 times 4
    assert!((num(&doc["error"]["ratio"]) - 676.0).abs() < 1e-9);
    assert!(run.stderr.contains("diverges"));
    golden("solve_refusal.json", &run.stdout);
}

#[test]
fn auto_and_trig_and_oracle_methods() {
    let auto = discroot(&["solve-cubic", "--p", "-15", "--q", "-4", "--format", "json"]);
    assert_eq!(auto.code, 0);
    let doc = json(&auto);
    validate("solve_cubic.schema.json", &doc);
    assert!(doc["chosen"].is_string());

    let trig = discroot(&["solve-cubic", "--p", "-15", "--q", "-4", "--method", "trig", "--format", "csv"]);
    assert_eq!(trig.code, 0);
    golden("solve_trig.csv", &trig.stdout);

    let oracle = discroot(&["solve-cubic", "--c1", "1", "--c2", "1", "--c3", "1", "--method", "oracle", "--format", "json"]);
    assert_eq!(oracle.code, 0);
    let doc = json(&oracle);
    validate("solve_cubic.schema.json", &doc);
    assert_eq!(doc["roots"].as_array().unwrap().len(), 3);
}

#[test]
fn dual_engine_expansion_matches() {
    let run = discroot(&["expand-generic", "--char", "0", "--order", "2", "--engine", "both"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    golden("expand_char0_both.txt", &run.stdout);

    let run = discroot(&["expand-generic", "--char", "0", "--order", "2", "--engine", "both", "--format", "json"]);
    let doc = json(&run);
    validate("expand_generic.schema.json", &doc);
    let verdicts = doc["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 3);
    assert!(verdicts.iter().all(|v| v["matches"] == true));
    assert_eq!(doc["verified"], true);
}

#[test]
fn residue_digit_is_three_q_over_p() {
    let run = discroot(&["expand-generic", "--char", "0", "--order", "1", "--format", "json"]);
    assert_eq!(run.code, 0);
    let doc = json(&run);
    validate("expand_generic.schema.json", &doc);
    assert_eq!(doc["digits"][0], "3*q/p");
}

#[test]
fn small_characteristics_expand() {
    for ch in ["2", "3"] {
        let run = discroot(&["expand-generic", "--char", ch, "--order", "3", "--form", "general", "--engine", "both", "--format", "json"]);
        assert_eq!(run.code, 0, "char {ch}: {}", run.stderr);
        let doc = json(&run);
        validate("expand_generic.schema.json", &doc);
        assert!(doc["verdicts"].as_array().unwrap().iter().all(|v| v["matches"] == true));
    }
}

#[test]
fn depressed_cubic_in_characteristic_three_is_refused() {
    let run = discroot(&["expand-generic", "--char", "3", "--form", "depressed", "--format", "json"]);
    assert_eq!(run.code, 2);
    let doc = json(&run);
    validate("error.schema.json", &doc);
    assert_eq!(doc["error"]["certificate"]["rootless"], true);
    assert_eq!(doc["error"]["certificate"]["residue_cubic"], "t^3 + q");
    golden("expand_char3_depressed.json", &run.stdout);

    let text = discroot(&["expand-generic", "--char", "3", "--form", "depressed"]);
    assert_eq!(text.code, 2);
    assert!(text.stderr.contains("no root"), "{}", text.stderr);
}

#[test]
fn every_identity_holds() {
    let run = discroot(&["verify-identities", "--all", "--order", "50"]);
    assert_eq!(run.code, 0, "{}{}", run.stdout, run.stderr);
    golden("verify_all.txt", &run.stdout);

    let run = discroot(&["verify-identities", "--all", "--order", "20", "--format", "json"]);
    let doc = json(&run);
    validate("verify_identities.schema.json", &doc);
    assert_eq!(doc["all_hold"], true);
}

#[test]
fn single_identity_over_a_chosen_ring() {
    let run = discroot(&["verify-identities", "--identity", "power_law(3,-1)", "--ring", "GF2", "--order", "30", "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    validate("verify_identities.schema.json", &json(&run));
}

#[test]
fn naive_height_census() {
    let args = ["census", "--mode", "naive", "--h", "10", "--samples", "1000000", "--seed", "7", "--format", "json"];
    let run = discroot(&args);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = json(&run);
    validate("census_areas.schema.json", &doc);
    assert_eq!(doc["config"]["rng_seed"], 7);
    let regions = doc["regions"].as_array().unwrap();
    // the first two regions are exactly a fifth each; the third is the
    // part of the (negative-discriminant) box under the convergence curve
    let third = 0.3 * (1.0 - 2f64.powf(-1.0 / 3.0));
    for (r, want) in regions.iter().zip([0.2, 0.2, third]) {
        assert!((num(&r["analytic"]) - want).abs() < 1e-12);
        let (mc, se) = (num(&r["monte_carlo"]), num(&r["stderr"]));
        assert!((mc - want).abs() < 4.0 * se, "{mc} vs {want} (stderr {se})");
    }
    golden("census_naive.json", &run.stdout);

    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(discroot(&seq).stdout, run.stdout, "thread count changes the census");
}

#[test]
fn census_trend_and_quartic() {
    let run = discroot(&["census", "--kind", "trend", "--samples", "20000", "--seed", "3", "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = json(&run);
    let entries = doc.as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries {
        validate("census_areas.schema.json", e);
    }
    let fractions: Vec<f64> = entries.iter().map(|e| num(&e["trinomial_converges"]["analytic"])).collect();
    assert!(fractions.windows(2).all(|w| w[0] < w[1]), "{fractions:?}");

    let run = discroot(&["census", "--kind", "quartic", "--h", "1000", "--samples", "2000", "--seed", "1", "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = json(&run);
    validate("census_quartic.schema.json", &doc);
    let f: Vec<f64> = doc["scales"].as_array().unwrap().iter().map(|s| num(&s["fraction"])).collect();
    assert!(f.iter().all(|x| (x - f[0]).abs() < 0.01), "{f:?}");
}

#[test]
fn quilt_and_curve_csv() {
    let run = discroot(&["census", "--kind", "quilt", "--grid", "12", "--format", "csv"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.starts_with("p,q,label\n"));
    assert_eq!(run.stdout.lines().count(), 1 + 12 * 12);
    golden("quilt_naive_12.csv", &run.stdout);

    let run = discroot(&["census", "--kind", "curves", "--grid", "8", "--mode", "max", "--format", "csv"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.starts_with("curve_id,p,q\n"));
    golden("curves_max_8.csv", &run.stdout);
}

#[test]
fn quartic_factor_divides() {
    let run = discroot(&["factor-quartic", "--order", "3", "--format", "json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = json(&run);
    validate("factor_quartic.schema.json", &doc);
    assert_eq!(doc["holds"], true);
    assert_eq!(doc["summary"]["v_disc_r"], "1");
    assert_eq!(doc["summary"]["v_disc_u"], "0");
    golden("factor_quartic_3.json", &run.stdout);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["solve-cubic", "--p", "-15", "--q", "-4", "--method", "auto", "--format", "json"],
        &["expand-generic", "--char", "2", "--order", "4", "--engine", "both"],
        &["census", "--samples", "50000", "--seed", "11", "--format", "json"],
        &["census", "--kind", "quartic", "--samples", "3000", "--seed", "5"],
    ];
    for args in cases {
        let a = discroot(args);
        let b = discroot(args);
        assert_eq!((a.code, &a.stdout), (b.code, &b.stdout), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        &["solve-cubic", "--p", "-15"][..],
        &["solve-cubic", "--p", "1", "--q", "1", "--c1", "0", "--c2", "1", "--c3", "1"],
        &["solve-cubic", "--p", "1", "--q", "1", "--method", "newton"],
        &["frobnicate"],
        &["expand-generic", "--char", "5"],
        &["census", "--samples", "0"],
        &["census", "--h", "-1"],
        &["census", "--kind", "quilt", "--grid", "1"],
        &["verify-identities"],
        &["verify-identities", "--identity", "no_such_identity"],
        &[],
    ] {
        let run = discroot(args);
        assert_eq!(run.code, 1, "{args:?}: {}", run.stderr);
        assert!(!run.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(discroot(&["--help"]).code, 0);
    assert_eq!(discroot(&["--version"]).code, 0);
}
