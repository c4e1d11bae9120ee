use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::report::{Method, RootReport, Sign};
use super::{convergence_check, ConvergenceVerdict, RealDepressedCubic, RealError, RealGeneralCubic, SeriesId};
use super::{BOUNDARY_MARGIN, SIGN_ZERO_TOL};
use crate::series::central_trinomial_coeff;

/// Relative size below which a term no longer counts.
pub const DEFAULT_TOL: f64 = 1e-17;
pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;
/// Consecutive negligible terms required before stopping.
const QUIET_TERMS: u32 = 3;

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sums `1 + sum_{n >= 1} t_n` where `t_{n+1} = t_n * ratio(n)`, stopping
/// once `QUIET_TERMS` consecutive terms are below `tol` times the partial
/// sum. Returns the sum and the number of terms used.
fn sum_by_ratio(ratio: impl Fn(u64) -> f64, tol: f64, max_terms: u64) -> Result<(f64, u64), RealError> {
    let mut acc = CompensatedSum::new();
    acc.add(1.0);
    let mut term = 1.0;
    let mut quiet = 0;
    for n in 0..max_terms {
        term *= ratio(n);
        acc.add(term);
        if term.abs() < tol * acc.value().abs() {
            quiet += 1;
            if quiet == QUIET_TERMS {
                return Ok((acc.value(), n + 2));
            }
        } else {
            quiet = 0;
        }
    }
    Err(RealError::NonConvergence(max_terms))
}

/// `t_{n+1}/t_n` for `C(3n, n) z^n`.
fn central_ratio(z: f64) -> impl Fn(u64) -> f64 {
    move |n| {
        let n = n as f64;
        3.0 * (3.0 * n + 2.0) * (3.0 * n + 1.0) / (2.0 * (2.0 * n + 1.0) * (n + 1.0)) * z
    }
}

/// `A_{m+1}(n,1) / A_m(n,1)` times `z`, for the coefficients of `B_n`.
fn fuss_catalan_ratio(n: u32, z: f64) -> impl Fn(u64) -> f64 {
    move |m| {
        let (nf, mf) = (n as f64, m as f64);
        let num: f64 = (1..=n).map(|j| nf * mf + j as f64).product();
        let den: f64 = (mf + 1.0) * (2..=n).map(|j| (nf - 1.0) * mf + j as f64).product::<f64>();
        num / den * z
    }
}

fn refuse(v: ConvergenceVerdict) -> Result<(), RealError> {
    if v.converges() {
        Ok(())
    } else {
        Err(RealError::Refused { series: v.series, verdict: v.verdict, ratio: v.ratio })
    }
}

/// `(3q/p) sum_n C(3n, n) (-Delta / 27 p^3)^n`: the root of largest
/// absolute value, when the series converges.
///
/// For `q = 0` the ratio is exactly 1, but the factor `3q/p` vanishes and
/// the root is 0 without evaluating the series.
pub fn discriminant_root(f: &RealDepressedCubic, tol: f64, max_terms: u64) -> Result<RootReport, RealError> {
    if f.p != 0.0 && f.q == 0.0 {
        return Ok(RootReport::real(0.0, Method::DiscriminantSeries, 0, Sign::Zero, 0.0));
    }
    refuse(convergence_check(f, SeriesId::Discriminant, BOUNDARY_MARGIN)?)?;
    let z = -f.discriminant() / (27.0 * f.p.powi(3));
    let (lambda, terms) = sum_by_ratio(central_ratio(z), tol, max_terms)?;
    let alpha = 3.0 * f.q / f.p * lambda;
    Ok(RootReport::real(alpha, Method::DiscriminantSeries, terms, f.sign_of(alpha), f.eval(alpha).abs()))
}

/// The partial sums `sum_{n < k} C(3n, n) z^n`, `k = 1..=count`, of the
/// discriminant series, with `z = -Delta / 27 p^3`.
pub fn discriminant_partial_sums(f: &RealDepressedCubic, count: usize) -> Result<Vec<f64>, RealError> {
    if f.p == 0.0 {
        return Err(RealError::Precondition("p = 0".into()));
    }
    let z = -f.discriminant() / (27.0 * f.p.powi(3));
    let ratio = central_ratio(z);
    let mut out = Vec::with_capacity(count);
    let (mut acc, mut term) = (CompensatedSum::new(), 1.0);
    for n in 0..count {
        if n > 0 {
            term *= ratio(n as u64 - 1);
        }
        acc.add(term);
        out.push(acc.value());
    }
    Ok(out)
}

/// The same partial sums computed exactly from rational `p, q`.
pub fn discriminant_partial_sums_exact(
    p: &BigRational,
    q: &BigRational,
    count: usize,
) -> Result<Vec<BigRational>, RealError> {
    if p.is_zero() {
        return Err(RealError::Precondition("p = 0".into()));
    }
    let p3 = p * p * p;
    let disc = -BigRational::from_integer(4.into()) * &p3 - BigRational::from_integer(27.into()) * q * q;
    let z = -disc / (BigRational::from_integer(27.into()) * p3);
    let mut out = Vec::with_capacity(count);
    let (mut acc, mut zn) = (BigRational::zero(), BigRational::one());
    for n in 0..count {
        acc += BigRational::from_integer(central_trinomial_coeff(n as u64)) * &zn;
        out.push(acc.clone());
        zn *= &z;
    }
    Ok(out)
}

/// `a lambda / b` with `lambda = B_n(a^{n-1} c / b^n)`: a root of
/// `a - b t + c t^n`, when `B_n` converges there.
pub fn trinomial_root(a: f64, b: f64, c: f64, n: u32, tol: f64, max_terms: u64) -> Result<RootReport, RealError> {
    if ![a, b, c].iter().all(|x| x.is_finite()) {
        return Err(RealError::NotFinite(format!("a = {a}, b = {b}, c = {c}")));
    }
    if n < 2 {
        return Err(RealError::Precondition("the exponent n must be at least 2".into()));
    }
    if b == 0.0 {
        return Err(RealError::Precondition("b = 0: the solutions are the n-th roots of -a/c".into()));
    }
    let z = a.powi(n as i32 - 1) * c / b.powi(n as i32);
    let nf = n as f64;
    let radius = (nf - 1.0).powi(n as i32 - 1) / nf.powi(n as i32);
    refuse(ConvergenceVerdict::from_ratio(SeriesId::Trinomial, z.abs() / radius, BOUNDARY_MARGIN))?;
    let (lambda, terms) = sum_by_ratio(fuss_catalan_ratio(n, z), tol, max_terms)?;
    let alpha = a * lambda / b;
    let residual = (a - b * alpha + c * alpha.powi(n as i32)).abs();
    let scale = 1f64.max((a / b).abs());
    Ok(RootReport::real(alpha, Method::TrinomialSeries, terms, Sign::of(alpha, SIGN_ZERO_TOL * scale), residual))
}

/// The trinomial root of `t^3 + p t + q`, i.e. `(a, b, c, n) = (q, -p, 1, 3)`.
pub fn trinomial_cubic_root(f: &RealDepressedCubic, tol: f64, max_terms: u64) -> Result<RootReport, RealError> {
    refuse(convergence_check(f, SeriesId::Trinomial, BOUNDARY_MARGIN)?)?;
    let mut r = trinomial_root(f.q, -f.p, 1.0, 3, tol, max_terms)?;
    if let Some(alpha) = r.real_value() {
        r.sign = Some(f.sign_of(alpha));
    }
    Ok(r)
}

/// Which series to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesMethod {
    Discriminant,
    Trinomial,
}

/// Depresses `t^3 + c1 t^2 + c2 t + c3`, evaluates the chosen series and
/// shifts back by `-c1/3`.
pub fn general_cubic_root(
    g: &RealGeneralCubic,
    method: SeriesMethod,
    tol: f64,
    max_terms: u64,
) -> Result<RootReport, RealError> {
    let (f, shift) = g.depressed();
    let mut r = match method {
        SeriesMethod::Discriminant => discriminant_root(&f, tol, max_terms)?,
        SeriesMethod::Trinomial => trinomial_cubic_root(&f, tol, max_terms)?,
    };
    let alpha = r.real_value().expect("series roots are real") + shift;
    let scale = f.scale().max(shift.abs());
    r.value = Some(super::RootValue::Real(alpha));
    r.sign = Some(Sign::of(alpha, SIGN_ZERO_TOL * scale));
    r.residual = Some(g.eval(alpha).abs());
    Ok(r)
}

#[cfg(test)]
/// `C(3n, n)` as a float, for tests of the term recurrence.
pub(crate) fn central_coefficient_f64(n: u64) -> f64 {
    use num_traits::ToPrimitive;
    central_trinomial_coeff(n).to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_beats_naive() {
        let mut c = CompensatedSum::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            c.add(x);
        }
        assert_eq!(c.value(), 2.0);
    }

    #[test]
    fn recurrence_matches_binomials() {
        let r = central_ratio(1.0);
        let mut t: f64 = 1.0;
        for n in 0..60u64 {
            let exact = central_coefficient_f64(n);
            assert!((t - exact).abs() <= 1e-13 * exact, "n = {n}");
            t *= r(n);
        }
        // Fuss-Catalan A_m(3,1) = 1, 1, 3, 12, 55, 273, ...
        let r = fuss_catalan_ratio(3, 1.0);
        let mut t: f64 = 1.0;
        let mut seen = vec![];
        for m in 0..6 {
            seen.push(t.round() as i64);
            t *= r(m);
        }
        assert_eq!(seen, [1, 1, 3, 12, 55, 273]);
        let r = fuss_catalan_ratio(2, 1.0);
        let mut t: f64 = 1.0;
        let mut seen = vec![];
        for m in 0..6 {
            seen.push(t.round() as i64);
            t *= r(m);
        }
        assert_eq!(seen, [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn worked_example() {
        let f = RealDepressedCubic::new(-15.0, -4.0).unwrap();
        let d = discriminant_root(&f, DEFAULT_TOL, DEFAULT_MAX_TERMS).unwrap();
        assert!((d.real_value().unwrap() - 4.0).abs() < 1e-9);
        assert_eq!(d.sign, Some(Sign::Positive));
        let t = trinomial_cubic_root(&f, DEFAULT_TOL, DEFAULT_MAX_TERMS).unwrap();
        assert!((t.real_value().unwrap() - (3f64.sqrt() - 2.0)).abs() < 1e-9);
        assert_eq!(t.sign, Some(Sign::Negative));
    }

    #[test]
    fn trivial_cases() {
        let f = RealDepressedCubic::new(-1.0, 0.0).unwrap();
        let d = discriminant_root(&f, DEFAULT_TOL, DEFAULT_MAX_TERMS).unwrap();
        assert_eq!(d.real_value(), Some(0.0));
        assert_eq!(d.sign, Some(Sign::Zero));
        let c0 = trinomial_root(3.0, 4.0, 0.0, 5, DEFAULT_TOL, DEFAULT_MAX_TERMS).unwrap();
        assert_eq!(c0.real_value(), Some(0.75));
        let a0 = trinomial_root(0.0, 4.0, 2.0, 5, DEFAULT_TOL, DEFAULT_MAX_TERMS).unwrap();
        assert_eq!(a0.real_value(), Some(0.0));
        assert!(matches!(trinomial_root(1.0, 0.0, 1.0, 3, 1e-17, 10), Err(RealError::Precondition(_))));
    }

    #[test]
    fn refusals() {
        let f = RealDepressedCubic::new(1.0, 10.0).unwrap();
        assert!(matches!(
            discriminant_root(&f, DEFAULT_TOL, DEFAULT_MAX_TERMS),
            Err(RealError::Refused { series: SeriesId::Discriminant, .. })
        ));
        // 27 q^2 = 4 |p|^3 exactly: the trinomial boundary
        let g = RealDepressedCubic::new(-3.0, 2.0).unwrap();
        assert!(matches!(
            trinomial_cubic_root(&g, DEFAULT_TOL, DEFAULT_MAX_TERMS),
            Err(RealError::Refused { .. })
        ));
        // slow convergence hits the term cap
        let h = RealDepressedCubic::new(-3.0, 1.99).unwrap();
        assert!(matches!(trinomial_cubic_root(&h, DEFAULT_TOL, 20), Err(RealError::NonConvergence(20))));
    }

    #[test]
    fn general_form() {
        let g = RealGeneralCubic::from_roots([1.0, 0.5, 1.0 / 6.0]).unwrap();
        let roots = [1.0, 0.5, 1.0 / 6.0];
        for m in [SeriesMethod::Discriminant, SeriesMethod::Trinomial] {
            let r = general_cubic_root(&g, m, DEFAULT_TOL, DEFAULT_MAX_TERMS).unwrap();
            let a = r.real_value().unwrap();
            assert!(roots.iter().any(|x| (x - a).abs() < 1e-9), "{m:?}: {a}");
            assert!(r.residual.unwrap() < 1e-12);
        }
        let f = RealDepressedCubic::new(-15.0, -4.0).unwrap();
        let same = general_cubic_root(&RealGeneralCubic::new(0.0, -15.0, -4.0).unwrap(), SeriesMethod::Discriminant, DEFAULT_TOL, DEFAULT_MAX_TERMS)
            .unwrap();
        assert_eq!(same, discriminant_root(&f, DEFAULT_TOL, DEFAULT_MAX_TERMS).unwrap());
    }

    #[test]
    fn exact_partial_sums_are_scale_free() {
        let p = BigRational::from_integer((-15).into());
        let q = BigRational::from_integer((-4).into());
        let base = discriminant_partial_sums_exact(&p, &q, 20).unwrap();
        for m in [BigRational::from_integer(2.into()), BigRational::from_integer(10.into()), BigRational::new(1.into(), 2.into())] {
            let pm = &p / (&m * &m);
            let qm = &q / (&m * &m * &m);
            assert_eq!(discriminant_partial_sums_exact(&pm, &qm, 20).unwrap(), base);
        }
    }
}
