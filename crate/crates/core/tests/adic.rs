use std::time::Instant;

use discroot::adic::{
    char2_root_series, char3_negative_control, char3_root_series, discriminant_root_series, hensel_lift_cubic,
    root_series, verify_root, verify_root_exact, AdicError, Cubic, CubicForm, LiftConfig, LocalRing,
};
use discroot::rings::{DepressedCubic, Field, RationalFunction, Ring, Valuation, F2, F3, Q};
use discroot::series::{central_trinomial_coeff, fuss_catalan};

fn cfg<F: discroot::rings::BaseField>(n: usize) -> LiftConfig {
    LiftConfig::for_field::<F>(n).unwrap()
}

#[test]
fn char0_series_matches_newton_lift() {
    let (f, pi) = Cubic::<Q>::generic(CubicForm::Depressed).unwrap();
    let seed = f.residue_seed().unwrap();
    assert_eq!(seed.to_string(), "3*q/p");
    for n in 1..=6 {
        let t = Instant::now();
        let s = discriminant_root_series(&f, &pi, &cfg::<Q>(n)).unwrap();
        let h = hensel_lift_cubic(&f, &seed, &pi, &cfg::<Q>(n)).unwrap();
        assert_eq!(s, h, "order {n}");
        assert_eq!(s.digits(), h.digits());
        assert!(verify_root(&f, &s).unwrap().exceeds(n as i64));
        eprintln!("order {n}: {:?}", t.elapsed());
    }
}

#[test]
fn leading_digit_is_three_q_over_p() {
    let (f, pi) = Cubic::<Q>::generic(CubicForm::Depressed).unwrap();
    let s = discriminant_root_series(&f, &pi, &cfg::<Q>(2)).unwrap();
    assert_eq!(s.digits()[0].to_string(), "3*q/p");
    assert!(s.render().ends_with("[π = -4*p^3 - 27*q^2]"), "{}", s.render());
}

#[test]
fn zero_q_gives_zero_root() {
    let (_, pi) = Cubic::<Q>::generic(CubicForm::Depressed).unwrap();
    let v = pi.vars().clone();
    let g = Cubic::Depressed(DepressedCubic::new(RationalFunction::var(&v, 0), RationalFunction::zero(&v)));
    let s = discriminant_root_series(&g, &pi, &cfg::<Q>(3)).unwrap();
    assert!(s.is_zero());
    assert_eq!(s.render(), "0 [π = -4*p^3 - 27*q^2]");
}

#[test]
fn exact_root_and_perturbation() {
    let (f, pi) = Cubic::<Q>::generic(CubicForm::Depressed).unwrap();
    let v = pi.vars().clone();
    // (t-1)(t-2)(t-3) shifted by t -> t + 2 is t^3 - t, with the root 1
    let split = Cubic::Depressed(DepressedCubic::new(RationalFunction::int(&v, -1), RationalFunction::zero(&v)));
    let ring = LocalRing::new(&pi, 5);
    let one = ring.embed(&RationalFunction::int(&v, 1)).unwrap();
    assert_eq!(verify_root_exact(&split, &one).unwrap(), Valuation::Infinite);

    let alpha = discriminant_root_series(&f, &pi, &cfg::<Q>(5)).unwrap();
    assert!(verify_root(&f, &alpha).unwrap().exceeds(5));
    assert!(verify_root_exact(&f, &alpha).unwrap().exceeds(5));
    let bumped = alpha.add(&alpha.ring().pi_power(3));
    assert_eq!(verify_root(&f, &bumped).unwrap(), Valuation::Finite(3));
    assert_eq!(verify_root_exact(&f, &bumped).unwrap(), Valuation::Finite(3));
}

#[test]
fn normal_form_is_idempotent() {
    let (f, pi) = Cubic::<Q>::generic(CubicForm::Depressed).unwrap();
    let alpha = discriminant_root_series(&f, &pi, &cfg::<Q>(3)).unwrap();
    assert_eq!(alpha.renormalize().unwrap(), alpha);
    // digits carrying pi-multiples are folded upwards
    let v = pi.vars().clone();
    let ring = alpha.ring().clone();
    let delta = RationalFunction::from_poly(pi.poly().clone());
    let raw = [delta.clone(), RationalFunction::var(&v, 0)];
    let e = ring.from_digits(&raw).unwrap();
    let d = e.digits();
    assert!(d[0].is_zero());
    assert_eq!(d[1], RationalFunction::one(&v).add(&RationalFunction::var(&v, 0)));
    assert_eq!(e.renormalize().unwrap(), e);
}

#[test]
fn general_form_char0_series_matches_lift() {
    let (f, pi) = Cubic::<Q>::generic(CubicForm::General).unwrap();
    let seed = f.residue_seed().unwrap();
    for n in 1..=3 {
        let s = discriminant_root_series(&f, &pi, &cfg::<Q>(n)).unwrap();
        let h = hensel_lift_cubic(&f, &seed, &pi, &cfg::<Q>(n)).unwrap();
        assert_eq!(s, h, "order {n}");
        assert!(verify_root(&f, &s).unwrap().exceeds(n as i64));
    }
}

#[test]
fn char3_series_matches_lift() {
    let (f, pi) = Cubic::<F3>::generic(CubicForm::General).unwrap();
    let seed = f.residue_seed().unwrap();
    assert_eq!(seed.to_string(), "(2*c1^2 + c2)/c1");
    for n in 1..=4 {
        let s = char3_root_series(&f, &pi, &cfg::<F3>(n)).unwrap();
        let h = hensel_lift_cubic(&f, &seed, &pi, &cfg::<F3>(n)).unwrap();
        assert_eq!(s, h, "order {n}");
        assert!(verify_root(&f, &s).unwrap().exceeds(n as i64));
        // residue is c2/c1 - c1
        assert_eq!(s.digit(0), s.ring().embed(&seed).unwrap());
    }
}

#[test]
fn char3_depressed_is_refused_and_certified_rootless() {
    assert!(matches!(Cubic::<F3>::generic(CubicForm::Depressed), Err(AdicError::Char3Depressed)));
    let cert = char3_negative_control().unwrap();
    assert!(cert.rootless);
    assert_eq!(cert.residue_cubic, "t^3 + q");
    assert_eq!(cert.witness_exponent, 1);
    assert!(cert.derivative_vanishes_mod_pi);
}

#[test]
fn char2_series_matches_lift() {
    for form in [CubicForm::Depressed, CubicForm::General] {
        let (f, pi) = Cubic::<F2>::generic(form).unwrap();
        let seed = f.residue_seed().unwrap();
        let n = if form == CubicForm::Depressed { 6 } else { 3 };
        let s = char2_root_series(&f, &pi, &cfg::<F2>(n)).unwrap();
        let h = hensel_lift_cubic(&f, &seed, &pi, &cfg::<F2>(n)).unwrap();
        assert_eq!(s, h, "{form:?}");
        assert!(verify_root(&f, &s).unwrap().exceeds(n as i64));
    }
}

#[test]
fn char2_residues() {
    let (f, pi) = Cubic::<F2>::generic(CubicForm::Depressed).unwrap();
    let s = char2_root_series(&f, &pi, &cfg::<F2>(4)).unwrap();
    let v = pi.vars().clone();
    let p = RationalFunction::<F2>::var(&v, 0);
    let q = RationalFunction::<F2>::var(&v, 1);
    let d = s.digits();
    assert!(d[0].is_zero());
    assert_eq!(d[1], p.inv().unwrap());
    // modulo q^2 the root is q/p
    assert_eq!(s.truncate(1).to_rational_function(), q.div(&p).unwrap());
}

#[test]
fn char2_series_is_the_reduced_discriminant_series() {
    // (3q/p) sum C(3n,n) (-Delta/27p^3)^n read in characteristic 2 is
    // (q/p) sum C(3n,n) (q^2/p^3)^n; it must equal (q/p) B_3(q^2/p^3)
    let (f, pi) = Cubic::<F2>::generic(CubicForm::Depressed).unwrap();
    let n = 6;
    let ring = LocalRing::new(&pi, n);
    let v = pi.vars().clone();
    let p = RationalFunction::<F2>::var(&v, 0);
    let q = RationalFunction::<F2>::var(&v, 1);
    let z = ring.embed(&q.mul(&q).div(&p.pow(3)).unwrap()).unwrap();
    let sum = (0..=n as u64).rev().fold(ring.zero(), |acc, k| acc.mul(&z).add(&z.from_bigint_like(&central_trinomial_coeff(k))));
    let disc_form = ring.embed(&q.div(&p).unwrap()).unwrap().mul(&sum);
    assert_eq!(disc_form, char2_root_series(&f, &pi, &cfg::<F2>(n)).unwrap());
    for k in 0..=200u64 {
        assert_eq!(central_trinomial_coeff(k) % 2, fuss_catalan(3, 1, k).unwrap() % 2);
    }
}

#[test]
fn dispatch_and_errors() {
    let (f, pi) = Cubic::<Q>::generic(CubicForm::Depressed).unwrap();
    assert_eq!(root_series(&f, &pi, &cfg::<Q>(2)).unwrap(), discriminant_root_series(&f, &pi, &cfg::<Q>(2)).unwrap());
    assert!(matches!(LiftConfig::new(0, 0), Err(AdicError::InvalidOrder)));
    assert!(matches!(
        discriminant_root_series(&f, &pi, &LiftConfig::new(2, 3).unwrap()),
        Err(AdicError::CharacteristicMismatch { .. })
    ));
    let v = pi.vars().clone();
    let no_p = Cubic::Depressed(DepressedCubic::new(RationalFunction::zero(&v), RationalFunction::var(&v, 1)));
    assert!(matches!(discriminant_root_series(&no_p, &pi, &cfg::<Q>(2)), Err(AdicError::ZeroCoefficient("p"))));
    // a seed that is not a residue root
    let bad = RationalFunction::var(&v, 1);
    assert!(matches!(hensel_lift_cubic(&f, &bad, &pi, &cfg::<Q>(2)), Err(AdicError::HenselPrecondition { .. })));
}

#[test]
fn dual_engine_expansion() {
    use discroot::adic::{expand_generic_in, Engine};
    let e = expand_generic_in(0, CubicForm::Depressed, 2, Engine::Both).unwrap();
    assert_eq!(e.verdicts.len(), 3);
    assert!(e.all_match() && e.verified);
    assert_eq!(e.digits[0], "3*q/p");
    let h = expand_generic_in(2, CubicForm::General, 2, Engine::Hensel).unwrap();
    assert!(h.verdicts.is_empty() && h.verified);
    assert!(matches!(expand_generic_in(3, CubicForm::Depressed, 2, Engine::Both), Err(AdicError::Char3Depressed)));
    assert!(matches!(expand_generic_in(5, CubicForm::Depressed, 2, Engine::Both), Err(AdicError::WrongCharacteristic { .. })));
}
