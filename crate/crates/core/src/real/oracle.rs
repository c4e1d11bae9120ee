use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::report::{Method, RootReport};
use super::{RealDepressedCubic, RealError};

const POLISH_STEPS: usize = 30;

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap_or(Ordering::Equal)
            .then(a.arg().partial_cmp(&b.arg()).unwrap_or(Ordering::Equal))
    });
}

/// Newton steps on a monic polynomial (coefficients from the top, leading
/// 1 omitted), kept only while they reduce `|f|`.
fn polish(coeffs: &[Complex64], mut x: Complex64) -> Complex64 {
    let eval = |x: Complex64| {
        let (mut f, mut df) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        for c in coeffs {
            df = df * x + f;
            f = f * x + c;
        }
        (f, df)
    };
    let (mut fx, mut dfx) = eval(x);
    for _ in 0..POLISH_STEPS {
        if fx.norm() == 0.0 || dfx.norm() == 0.0 {
            break;
        }
        let next = x - fx / dfx;
        let (fn_, dfn) = eval(next);
        // stop unless strictly better, which also stops on NaN
        let improved = fn_.norm() < fx.norm();
        if !improved {
            break;
        }
        (x, fx, dfx) = (next, fn_, dfn);
    }
    x
}

fn polish_real(f: &RealDepressedCubic, mut x: f64) -> f64 {
    let mut fx = f.eval(x);
    for _ in 0..POLISH_STEPS {
        let d = 3.0 * x * x + f.p;
        if fx == 0.0 || d == 0.0 {
            break;
        }
        let next = x - fx / d;
        let fn_ = f.eval(next);
        let improved = fn_.abs() < fx.abs();
        if !improved {
            break;
        }
        (x, fx) = (next, fn_);
    }
    x
}

/// Cardano's formula for `t^3 + p t + q` over the complex numbers, taking
/// the larger of `-q/2 +- sqrt(D)` to avoid cancellation.
fn cardano(p: Complex64, q: Complex64) -> [Complex64; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let d = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let s = d.sqrt();
    let (w1, w2) = (-q / 2.0 + s, -q / 2.0 - s);
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    if w.norm() == 0.0 {
        return [zero; 3];
    }
    let u = w.powf(1.0 / 3.0);
    let v = -p / (3.0 * u);
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let omega2 = omega.conj();
    [u + v, u * omega + v * omega2, u * omega2 + v * omega]
}

/// All three roots of `t^3 + c1 t^2 + c2 t + c3` with complex coefficients,
/// polished by Newton's method and sorted by absolute value, then
/// argument. Repeated roots appear with multiplicity.
pub fn oracle_roots_complex(c1: Complex64, c2: Complex64, c3: Complex64) -> [Complex64; 3] {
    let shift = -c1 / 3.0;
    let p = c2 - c1 * c1 / 3.0;
    let q = 2.0 * c1 * c1 * c1 / 27.0 - c1 * c2 / 3.0 + c3;
    let mut roots = cardano(p, q).map(|r| polish(&[c1, c2, c3], r + shift));
    sort_roots(&mut roots);
    roots
}

/// The three roots of a real depressed cubic. Real roots are returned
/// with zero imaginary part: three of them when `Delta >= 0`, otherwise
/// one real root and a conjugate pair.
pub fn oracle_roots(f: &RealDepressedCubic) -> [Complex64; 3] {
    let raw = cardano(Complex64::new(f.p, 0.0), Complex64::new(f.q, 0.0));
    let mut roots = if f.discriminant() >= 0.0 {
        raw.map(|r| Complex64::new(polish_real(f, r.re), 0.0))
    } else {
        let i = (0..3)
            .min_by(|&a, &b| raw[a].im.abs().partial_cmp(&raw[b].im.abs()).unwrap_or(Ordering::Equal))
            .unwrap_or(0);
        let real = polish_real(f, raw[i].re);
        let other = raw[(i + 1) % 3];
        let pair = polish(&[Complex64::new(0.0, 0.0), Complex64::new(f.p, 0.0), Complex64::new(f.q, 0.0)], other);
        let pair = if pair.im == 0.0 { other } else { pair };
        [Complex64::new(real, 0.0), pair, pair.conj()]
    };
    sort_roots(&mut roots);
    roots
}

/// Roots of the monic polynomial `t^n + a_1 t^{n-1} + ... + a_n` by the
/// Durand-Kerner iteration, each polished by Newton's method.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let eval = |x: Complex64| coeffs.iter().fold(Complex64::new(1.0, 0.0), |acc, c| acc * x + c);
    let bound = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (bound / 2.0).max(1.0)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    let mut out: Vec<Complex64> = z.into_iter().map(|r| polish(coeffs, r)).collect();
    sort_roots(&mut out);
    out
}

/// `t_k = 2 sqrt(-p/3) cos(arccos((3q/2p) sqrt(-3/p)) / 3 - 2 pi k / 3)`,
/// valid when all three roots are real.
pub fn trig_roots(f: &RealDepressedCubic) -> Result<[RootReport; 3], RealError> {
    if f.p >= 0.0 {
        return Err(RealError::Domain(format!("p = {} is not negative", f.p)));
    }
    let arg = 3.0 * f.q / (2.0 * f.p) * (-3.0 / f.p).sqrt();
    if arg.abs() > 1.0 {
        return Err(RealError::Domain(format!("|arccos argument| = {} exceeds 1", arg.abs())));
    }
    let amp = 2.0 * (-f.p / 3.0).sqrt();
    let theta = arg.acos() / 3.0;
    Ok([0u8, 1, 2].map(|k| {
        let t = amp * (theta - 2.0 * PI * k as f64 / 3.0).cos();
        RootReport::real(t, Method::Trig(k), 0, f.sign_of(t), f.eval(t).abs())
    }))
}
