use super::{Field, Ring, RingError};

/// `t^3 + c1 t^2 + c2 t + c3`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralCubic<R: Ring> {
    pub c1: R,
    pub c2: R,
    pub c3: R,
}

/// `t^3 + p t + q`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepressedCubic<R: Ring> {
    pub p: R,
    pub q: R,
}

/// `t^4 + c t^2 + d t + e`.
#[derive(Clone, Debug, PartialEq)]
pub struct DepressedQuartic<R: Ring> {
    pub c: R,
    pub d: R,
    pub e: R,
}

impl<R: Ring> GeneralCubic<R> {
    pub fn new(c1: R, c2: R, c3: R) -> Self {
        GeneralCubic { c1, c2, c3 }
    }

    /// `c1^2 c2^2 - 4 c2^3 - 4 c1^3 c3 + 18 c1 c2 c3 - 27 c3^2`, one formula
    /// for every characteristic.
    pub fn discriminant(&self) -> R {
        let (c1, c2, c3) = (&self.c1, &self.c2, &self.c3);
        let c1sq = c1.mul(c1);
        let c2sq = c2.mul(c2);
        c1sq.mul(&c2sq)
            .sub(&c2sq.mul(c2).scale_int(4))
            .sub(&c1sq.mul(c1).mul(c3).scale_int(4))
            .add(&c1.mul(c2).mul(c3).scale_int(18))
            .sub(&c3.mul(c3).scale_int(27))
    }

    pub fn eval(&self, t: &R) -> R {
        t.add(&self.c1).mul(t).add(&self.c2).mul(t).add(&self.c3)
    }

    pub fn eval_derivative(&self, t: &R) -> R {
        t.mul(t).scale_int(3).add(&self.c1.mul(t).scale_int(2)).add(&self.c2)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> GeneralCubic<S> {
        GeneralCubic { c1: f(&self.c1), c2: f(&self.c2), c3: f(&self.c3) }
    }
}

impl<R: Ring> DepressedCubic<R> {
    pub fn new(p: R, q: R) -> Self {
        DepressedCubic { p, q }
    }

    /// `-4 p^3 - 27 q^2`.
    pub fn discriminant(&self) -> R {
        self.p.pow(3).scale_int(-4).sub(&self.q.mul(&self.q).scale_int(27))
    }

    pub fn eval(&self, t: &R) -> R {
        t.mul(t).add(&self.p).mul(t).add(&self.q)
    }

    pub fn eval_derivative(&self, t: &R) -> R {
        t.mul(t).scale_int(3).add(&self.p)
    }

    pub fn to_general(&self) -> GeneralCubic<R> {
        GeneralCubic { c1: self.p.zero_like(), c2: self.p.clone(), c3: self.q.clone() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> DepressedCubic<S> {
        DepressedCubic { p: f(&self.p), q: f(&self.q) }
    }
}

impl<R: Ring> DepressedQuartic<R> {
    pub fn new(c: R, d: R, e: R) -> Self {
        DepressedQuartic { c, d, e }
    }

    /// `256e^3 - 128c^2e^2 + 144cd^2e - 27d^4 + 16c^4e - 4c^3d^2`.
    pub fn discriminant(&self) -> R {
        let (c, d, e) = (&self.c, &self.d, &self.e);
        let c2 = c.mul(c);
        let d2 = d.mul(d);
        let e2 = e.mul(e);
        e2.mul(e)
            .scale_int(256)
            .sub(&c2.mul(&e2).scale_int(128))
            .add(&c.mul(&d2).mul(e).scale_int(144))
            .sub(&d2.mul(&d2).scale_int(27))
            .add(&c2.mul(&c2).mul(e).scale_int(16))
            .sub(&c2.mul(c).mul(&d2).scale_int(4))
    }

    pub fn eval(&self, t: &R) -> R {
        let t2 = t.mul(t);
        t2.mul(&t2).add(&self.c.mul(&t2)).add(&self.d.mul(t)).add(&self.e)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> DepressedQuartic<S> {
        DepressedQuartic { c: f(&self.c), d: f(&self.d), e: f(&self.e) }
    }
}

/// Substitutes `t -> t - c1/3`; returns the depressed cubic and the shift
/// `-c1/3` so that roots of `f` are roots of the result plus the shift.
pub fn depress_cubic<R: Field>(f: &GeneralCubic<R>) -> Result<(DepressedCubic<R>, R), RingError> {
    if f.c1.characteristic() == 3 {
        return Err(RingError::WrongCharacteristic { expected: "not 3".into(), found: 3 });
    }
    let three = f.c1.from_i64_like(3);
    let third = three.inv().ok_or(RingError::DivisionByZero)?;
    let c1 = &f.c1;
    let c1sq = c1.mul(c1);
    let p = f.c2.sub(&c1sq.mul(&third));
    let q = c1sq.mul(c1).scale_int(2).mul(&third.pow(3)).sub(&c1.mul(&f.c2).mul(&third)).add(&f.c3);
    let shift = c1.mul(&third).neg();
    Ok((DepressedCubic { p, q }, shift))
}

/// The square root `c1 c2 + c3` of the discriminant in characteristic 2.
pub fn char2_delta<R: Ring>(f: &GeneralCubic<R>) -> Result<R, RingError> {
    let ch = f.c1.characteristic();
    if ch != 2 {
        return Err(RingError::WrongCharacteristic { expected: "2".into(), found: ch });
    }
    Ok(f.c1.mul(&f.c2).add(&f.c3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{MultiPoly, RationalFunction, Vars, F2, F3, Q};

    #[test]
    fn depressed_discriminant_matches_general_formula() {
        let f = GeneralCubic::new(Q::int(0), Q::int(-15), Q::int(-4));
        assert_eq!(f.discriminant(), Q::int(13068));
        assert_eq!(DepressedCubic::new(Q::int(-15), Q::int(-4)).discriminant(), Q::int(13068));
    }

    #[test]
    fn discriminant_from_root_differences() {
        // roots 4, -2 +- sqrt(3): squared differences multiply to 13068
        let s3 = 3f64.sqrt();
        let r = [4.0, -2.0 + s3, -2.0 - s3];
        let prod: f64 = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| (r[i] - r[j]) * (r[i] - r[j])).product();
        assert!((prod - 13068.0).abs() < 1e-9);
    }

    #[test]
    fn depress_example() {
        let (g, shift) = depress_cubic(&GeneralCubic::new(Q::int(3), Q::int(0), Q::int(0))).unwrap();
        assert_eq!(g, DepressedCubic::new(Q::int(-3), Q::int(2)));
        assert_eq!(shift, Q::int(-1));
        let (g0, s0) = depress_cubic(&GeneralCubic::new(Q::int(0), Q::int(5), Q::int(7))).unwrap();
        assert_eq!(g0, DepressedCubic::new(Q::int(5), Q::int(7)));
        assert_eq!(s0, Q::int(0));
    }

    #[test]
    fn depression_preserves_discriminant_symbolically() {
        let v = Vars::new(&["c1", "c2", "c3"]);
        let f = GeneralCubic::new(
            RationalFunction::<Q>::var(&v, 0),
            RationalFunction::var(&v, 1),
            RationalFunction::var(&v, 2),
        );
        let (g, _) = depress_cubic(&f).unwrap();
        assert_eq!(g.discriminant(), f.discriminant());
    }

    #[test]
    fn char3_discriminant_reduces() {
        let v = Vars::new(&["c1", "c2", "c3"]);
        let c = |i| MultiPoly::<F3>::var(&v, i);
        let f = GeneralCubic::new(c(0), c(1), c(2));
        let expected = c(0).pow(2).mul(&c(1).pow(2)).sub(&c(0).pow(3).mul(&c(2))).sub(&c(1).pow(3));
        assert_eq!(f.discriminant(), expected);
        let f1 = GeneralCubic::new(F3::new(1), F3::new(0), F3::new(0));
        assert!(f1.discriminant().is_zero());
        assert!(depress_cubic(&f1).is_err());
    }

    #[test]
    fn char2_delta_squares_to_discriminant() {
        let v = Vars::new(&["c1", "c2", "c3"]);
        let c = |i| MultiPoly::<F2>::var(&v, i);
        let f = GeneralCubic::new(c(0), c(1), c(2));
        let delta = char2_delta(&f).unwrap();
        assert_eq!(delta.to_string(), "c1*c2 + c3");
        assert_eq!(delta.mul(&delta), f.discriminant());
        let ones = GeneralCubic::new(F2::new(1), F2::new(1), F2::new(1));
        assert!(char2_delta(&ones).unwrap().is_zero());
        assert!(char2_delta(&GeneralCubic::new(Q::int(1), Q::int(1), Q::int(1))).is_err());
    }
}
