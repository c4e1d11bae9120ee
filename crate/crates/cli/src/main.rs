//! `discroot`: command-line front end for the discroot library.
//!
//! Exit codes: 0 success, 1 usage error, 2 mathematical refusal (a series
//! that does not converge, a cubic with no root in the requested
//! completion), 3 verification failure.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "discroot", version, about = "Cubic and quartic roots as power series in the discriminant")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a root of a real cubic by series, trigonometry or an oracle.
    SolveCubic(SolveArgs),
    /// Expand the root of the generic cubic as a power series in the discriminant.
    ExpandGeneric(ExpandArgs),
    /// Build the ramified quadratic factor of the generic depressed quartic.
    FactorQuartic(FactorArgs),
    /// Measure how much of coefficient space each series covers.
    Census(CensusArgs),
    /// Check the coefficient identities behind the series.
    VerifyIdentities(VerifyArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Coefficient of t in t^3 + p t + q.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["c1", "c2", "c3"], requires = "q")]
    p: Option<f64>,
    /// Constant term in t^3 + p t + q.
    #[arg(long, allow_negative_numbers = true, requires = "p")]
    q: Option<f64>,
    /// Coefficients of t^3 + c1 t^2 + c2 t + c3.
    #[arg(long, allow_negative_numbers = true, requires_all = ["c2", "c3"])]
    c1: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["c1", "c3"])]
    c2: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["c1", "c2"])]
    c3: Option<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Relative tolerance of the series stopping rule.
    #[arg(long, default_value_t = discroot::real::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = discroot::real::DEFAULT_MAX_TERMS)]
    max_terms: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Discriminant,
    Trinomial,
    Trig,
    Oracle,
    Auto,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Characteristic of the coefficient field: 0, 2 or 3.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Truncation order N: the expansion is correct modulo the (N+1)-st power of the prime.
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long, value_enum, default_value_t = FormArg::Depressed)]
    form: FormArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Series)]
    engine: EngineArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormArg {
    Depressed,
    General,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EngineArg {
    Series,
    Hensel,
    Both,
}

#[derive(Args, Debug)]
struct FactorArgs {
    /// Truncation order N.
    #[arg(long, default_value_t = 3)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// What to compute.
    #[arg(long, value_enum, default_value_t = CensusKind::Areas)]
    kind: CensusKind,
    /// How cubics are ordered: by max(|p|, |q|) or by max(4|p|^3, 27q^2).
    #[arg(long, value_enum, default_value_t = ModeArg::Naive)]
    mode: ModeArg,
    /// Height bound.
    #[arg(long, default_value_t = 10.0)]
    h: f64,
    /// Heights for `--kind trend` (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = [10.0, 100.0, 1000.0])]
    hs: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Grid size for `--kind quilt` and `--kind curves`.
    #[arg(long, default_value_t = 100)]
    grid: usize,
    /// Scales m for `--kind quartic` (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = discroot::census::QUARTIC_SCALES)]
    scales: Vec<f64>,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CensusKind {
    /// Region fractions: closed form, quadrature and Monte Carlo.
    Areas,
    /// Labeled grid over the counting rectangle.
    Quilt,
    /// Boundary curves sampled for plotting.
    Curves,
    /// Trinomial-convergence fraction under the max height for each of --hs.
    Trend,
    /// Sampled quartics whose resolvent has a convergent positive discriminant root.
    Quartic,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Max,
    Naive,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run every identity over its default rings, plus the parity congruence.
    #[arg(long, conflicts_with = "identity")]
    all: bool,
    /// An identity such as `disc_cubic_identity`, `trinomial_shift(3)` or `power_law(3,-1)`.
    #[arg(long, required_unless_present = "all")]
    identity: Vec<String>,
    /// Coefficient ring (ZZ, QQ, GF2, GF3); defaults to each identity's own rings.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, default_value_t = 50)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::SolveCubic(a) => commands::solve_cubic(a),
        Command::ExpandGeneric(a) => commands::expand_generic(a),
        Command::FactorQuartic(a) => commands::factor_quartic(a),
        Command::Census(a) => commands::census(a),
        Command::VerifyIdentities(a) => commands::verify_identities(a),
    };
    match outcome {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(fail) => {
            if let Some(body) = &fail.stdout {
                print!("{body}");
            }
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
