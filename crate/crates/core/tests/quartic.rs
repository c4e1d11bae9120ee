use std::time::Instant;

use discroot::adic::{verify_root, Cubic, LiftConfig};
use discroot::quartic::{generic_quartic, ramified_factor, resolvent_roots, resolvents, rho_seed, QuarticError};
use discroot::real::durand_kerner;
use discroot::rings::{DepressedQuartic, RationalFunction, Ring, Valuation, F3, Q};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn f(x: &Q) -> f64 {
    x.0.to_f64().unwrap()
}

/// Depressed quartic with the given roots (they must sum to zero).
fn from_roots(r: [Q; 4]) -> DepressedQuartic<Q> {
    let [a, b, c, d] = r;
    let e2 = a.mul(&b).add(&a.mul(&c)).add(&a.mul(&d)).add(&b.mul(&c)).add(&b.mul(&d)).add(&c.mul(&d));
    let e3 = a.mul(&b).mul(&c).add(&a.mul(&b).mul(&d)).add(&a.mul(&c).mul(&d)).add(&b.mul(&c).mul(&d));
    let e4 = a.mul(&b).mul(&c).mul(&d);
    DepressedQuartic::new(e2, e3.neg(), e4)
}

#[test]
fn resolvents_share_the_discriminant() {
    let (g, _) = generic_quartic::<Q>().unwrap();
    let pair = resolvents(&g);
    assert!(pair.discriminants_match(&g));
    // R4(t) = R3(t - c): the roots of R3 are those of R4 shifted by -c
    let v = g.c.vars().clone();
    let c = RationalFunction::var(&v, 0);
    let t = RationalFunction::from_i64_like(&c, 7);
    assert_eq!(pair.r4.eval(&t), pair.r3.eval(&t.sub(&c)));
    assert_eq!(pair.r3.c1.to_string(), "2*c");
    assert_eq!(pair.r4.c3.to_string(), "4*c*e - d^2");
}

#[test]
fn numeric_discriminant_oracle() {
    // t^4 + t^2 + t + 1
    let g = DepressedQuartic::new(q(1, 1), q(1, 1), q(1, 1));
    assert_eq!(g.discriminant(), q(257, 1));
    assert!(resolvents(&g).discriminants_match(&g));
    let roots = durand_kerner(&[0.0, 1.0, 1.0, 1.0].map(|x| Complex64::new(x, 0.0)));
    let mut prod = Complex64::new(1.0, 0.0);
    for i in 0..4 {
        for j in i + 1..4 {
            prod *= (roots[i] - roots[j]) * (roots[i] - roots[j]);
        }
    }
    assert!((prod.re - 257.0).abs() < 1e-9 && prod.im.abs() < 1e-9, "{prod}");
}

#[test]
fn symbolic_factor_at_order_three() {
    let (g, pi) = generic_quartic::<Q>().unwrap();
    let t = Instant::now();
    let cfg = LiftConfig::for_field::<Q>(3).unwrap();
    let r = ramified_factor(&g, &pi, &cfg).unwrap();
    eprintln!("order 3 factor: {:?}", t.elapsed());
    let seed = rho_seed(&g).unwrap();
    assert_eq!(seed.to_string(), "(-c^3 + 4*c*e - 9/2*d^2)/(c^2 + 12*e)");
    // the residue digit of rho is the seed, read modulo the discriminant
    let rho0 = r.rho.rho.digit(0);
    assert_eq!(rho0, r.rho.rho.ring().embed(&seed).unwrap().digit(0));
    let gap = seed.sub(&r.rho.rho.digits()[0]);
    assert!(discroot::rings::pi_adic_valuation(&gap, &pi).unwrap().exceeds(0));
    let s = r.summary(&g).unwrap();
    assert!(s.holds(), "{s:?}");
    assert_eq!(s.v_disc_u, Valuation::Finite(0));
    assert!(s.v_disc_r.exceeds(0));
    // alpha4 = alpha3 + c
    let c = r.alpha4.ring().embed(&g.c).unwrap();
    assert_eq!(r.alpha4, r.alpha3.add(&c));
}

#[test]
fn remainder_vanishes_for_low_orders() {
    let (g, pi) = generic_quartic::<Q>().unwrap();
    for n in 1..=2 {
        let r = ramified_factor(&g, &pi, &LiftConfig::for_field::<Q>(n).unwrap()).unwrap();
        let res = r.residual(&g).unwrap();
        assert!(res.iter().all(|x| x.valuation().exceeds(n as i64)));
        let pair = resolvents(&g);
        assert!(verify_root(&Cubic::General(pair.r3.clone()), &r.alpha3).unwrap().exceeds(n as i64));
    }
}

/// At a rational point with an exact double root `a`, the residues are the
/// symmetric functions of the colliding pair: s = 2a, k = a^2,
/// alpha3 = (2a)^2 and rho = a^2 - u1 u2.
#[test]
fn double_root_specializations() {
    let (g, pi) = generic_quartic::<Q>().unwrap();
    let r = ramified_factor(&g, &pi, &LiftConfig::for_field::<Q>(2).unwrap()).unwrap();
    let mut rng = discroot::exec::job_rng(5, 0);
    let mut checked = 0;
    while checked < 50 {
        let a = q(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let b = q(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let c = a.scale_int(2).add(&b).neg();
        if a == b || a == c || b == c {
            continue;
        }
        let h = from_roots([a.clone(), a.clone(), b.clone(), c.clone()]);
        assert!(h.discriminant().is_zero());
        let point = [h.c.clone(), h.d.clone(), h.e.clone()];
        let Some((s, k)) = r.specialize(&point) else { continue };
        assert_eq!(s, a.scale_int(2), "s at {point:?}");
        assert_eq!(k, a.mul(&a));
        let a3 = r.alpha3.to_rational_function().eval(&point).unwrap();
        assert_eq!(a3, a.scale_int(2).mul(&a.scale_int(2)));
        let rho = r.rho.rho.to_rational_function().eval(&point).unwrap();
        assert_eq!(rho, a.mul(&a).sub(&b.mul(&c)));
        checked += 1;
    }
}

/// Near a double root the factor's roots are the two colliding roots.
#[test]
fn near_double_root_specializations() {
    let (g, pi) = generic_quartic::<Q>().unwrap();
    let r = ramified_factor(&g, &pi, &LiftConfig::for_field::<Q>(2).unwrap()).unwrap();
    let mut rng = discroot::exec::job_rng(6, 0);
    let mut checked = 0;
    while checked < 50 {
        let a = q(rng.gen_range(-9..=9), rng.gen_range(1..=3));
        let b = q(rng.gen_range(-9..=9), rng.gen_range(1..=3));
        let eps = q(rng.gen_range(1..=9), 10_000);
        let a2 = a.add(&eps);
        let c = a.add(&a2).add(&b).neg();
        let gaps = [a.sub(&b), a.sub(&c), b.sub(&c), a2.sub(&b), a2.sub(&c)];
        if gaps.iter().any(|x| f(x).abs() < 0.5) {
            continue;
        }
        let h = from_roots([a.clone(), a2.clone(), b.clone(), c.clone()]);
        let point = [h.c.clone(), h.d.clone(), h.e.clone()];
        let Some((s, k)) = r.specialize(&point) else { continue };
        let (s, k) = (f(&s), f(&k));
        let disc = (s * s - 4.0 * k).max(0.0).sqrt();
        let mut got = [(s - disc) / 2.0, (s + disc) / 2.0];
        got.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let want = [f(&a), f(&a2)];
        for i in 0..2 {
            assert!((got[i] - want[i]).abs() < 1e-5, "{got:?} vs {want:?}");
        }
        // rho = r(0) - u(0) to first order
        let rho = f(&r.rho.rho.to_rational_function().eval(&point).unwrap());
        let exact = f(&a.mul(&a2)) - f(&b.mul(&c));
        assert!((rho - exact).abs() < 1e-5 * exact.abs().max(1.0));
        checked += 1;
    }
}

#[test]
fn degenerate_inputs_are_rejected() {
    assert!(matches!(generic_quartic::<F3>(), Err(QuarticError::Characteristic(3))));
    let (g, pi) = generic_quartic::<Q>().unwrap();
    let v = g.c.vars().clone();
    let no_d = DepressedQuartic::new(g.c.clone(), RationalFunction::zero(&v), g.e.clone());
    let cfg = LiftConfig::for_field::<Q>(1).unwrap();
    assert!(matches!(ramified_factor(&no_d, &pi, &cfg), Err(QuarticError::Degenerate(_))));
    let singular = DepressedQuartic::new(q(0, 1), q(1, 1), q(0, 1));
    assert!(matches!(rho_seed(&singular), Err(QuarticError::SingularSeed(_))));
    let pair = resolvents(&g);
    assert!(resolvent_roots(&pair, &pi, &LiftConfig::new(1, 5).unwrap()).is_err());
}
