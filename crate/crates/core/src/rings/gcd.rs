//! Multivariate polynomial gcd by recursive content extraction and
//! primitive pseudo-remainder sequences.

use super::{BaseField, MultiPoly};

/// Greatest common divisor, normalized with
/// [`MultiPoly::primitive_scalar`]. `gcd(0, 0) = 0`.
pub fn gcd<F: BaseField>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    if a.is_zero() {
        return b.primitive_scalar();
    }
    if b.is_zero() {
        return a.primitive_scalar();
    }
    let one = MultiPoly::one(a.vars());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let mut mg = ma.clone();
    for i in 0..mg.0.len() {
        mg.0[i] = ma.0[i].min(mb.0[i]);
    }
    let a1 = a.div_monomial(&ma).expect("min exponent divides");
    let b1 = b.div_monomial(&mb).expect("min exponent divides");
    let g = gcd_shifted(&a1, &b1);
    g.mul_monomial(&mg, &F::one()).primitive_scalar()
}

/// gcd of inputs with no monomial factor.
fn gcd_shifted<F: BaseField>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    let one = MultiPoly::one(a.vars());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    if a == b {
        return a.primitive_scalar();
    }
    if a.num_terms() >= b.num_terms() {
        if a.exact_div(b).is_some() {
            return b.primitive_scalar();
        }
    } else if b.exact_div(a).is_some() {
        return a.primitive_scalar();
    }
    let n = a.nvars();
    // a variable only one side involves can be eliminated through content
    for v in 0..n {
        match (a.involves(v), b.involves(v)) {
            (true, false) => return gcd(&content_in(a, v), b),
            (false, true) => return gcd(a, &content_in(b, v)),
            _ => {}
        }
    }
    let var = (0..n)
        .filter(|&v| a.involves(v))
        .min_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), std::cmp::Reverse(v)))
        .expect("non-constant polynomial involves a variable");
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let gc = gcd(&ca, &cb);
    let gp = primitive_prs(pa, pb, var);
    gc.mul(&gp).primitive_scalar()
}

/// gcd of the coefficients of `a` viewed as a polynomial in `var`.
pub fn content_in<F: BaseField>(a: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let mut coeffs: Vec<MultiPoly<F>> = a.coeffs_in(var).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| (c.total_degree(), c.num_terms()));
    let mut g = MultiPoly::zero(a.vars());
    for c in coeffs {
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(a.vars());
        }
    }
    g
}

fn primitive_part<F: BaseField>(a: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let c = content_in(a, var);
    a.exact_div(&c).expect("content divides").primitive_scalar()
}

fn primitive_prs<F: BaseField>(a: MultiPoly<F>, b: MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let (mut r0, mut r1) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_rem(&r0, &r1, var);
        if r.is_zero() {
            return r1.primitive_scalar();
        }
        if !r.involves(var) {
            return MultiPoly::one(r.vars());
        }
        r0 = r1;
        r1 = primitive_part(&r, var);
    }
}

/// Sparse pseudo-remainder of `a` by `b` with respect to `var`.
pub fn pseudo_rem<F: BaseField>(a: &MultiPoly<F>, b: &MultiPoly<F>, var: usize) -> MultiPoly<F> {
    let bc = b.coeffs_in(var);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut ac = a.coeffs_in(var);
    while ac.len() > db && !ac.is_empty() {
        let la = ac.last().cloned().expect("nonempty");
        if la.is_zero() {
            ac.pop();
            continue;
        }
        let shift = ac.len() - 1 - db;
        for c in ac.iter_mut() {
            *c = c.mul(&lb);
        }
        for (j, bj) in bc.iter().enumerate() {
            ac[shift + j] = ac[shift + j].sub(&la.mul(bj));
        }
        ac.pop();
        while ac.last().is_some_and(|c| c.is_zero()) {
            ac.pop();
        }
    }
    MultiPoly::from_coeffs_in(a.vars(), var, &ac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Vars, F3, Q};

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let v = Vars::new(&["x", "y", "z"]);
        let x = MultiPoly::<Q>::var(&v, 0);
        let y = MultiPoly::<Q>::var(&v, 1);
        let z = MultiPoly::<Q>::var(&v, 2);
        let common = x.mul(&y).sub(&z.pow(2)).add(&MultiPoly::int(&v, 3));
        let a = common.mul(&x.add(&y)).mul(&x);
        let b = common.mul(&z.sub(&y).pow(2)).scale(&Q::new(7, 3));
        assert_eq!(gcd(&a, &b), common.primitive_scalar());
    }

    #[test]
    fn coprime_inputs_have_unit_gcd() {
        let v = Vars::new(&["p", "q"]);
        let p = MultiPoly::<Q>::var(&v, 0);
        let q = MultiPoly::<Q>::var(&v, 1);
        let disc = p.pow(3).scale(&Q::int(-4)).sub(&q.pow(2).scale(&Q::int(27)));
        assert!(gcd(&disc, &p).is_one());
        assert!(gcd(&disc.add(&p), &q).is_one());
    }

    #[test]
    fn gcd_over_f3() {
        let v = Vars::new(&["a", "b"]);
        let a = MultiPoly::<F3>::var(&v, 0);
        let b = MultiPoly::<F3>::var(&v, 1);
        let f = a.add(&b).pow(3); // = a^3 + b^3 in characteristic 3
        assert_eq!(f, a.pow(3).add(&b.pow(3)));
        let g = gcd(&f, &a.add(&b).mul(&a.sub(&b)));
        assert_eq!(g, a.add(&b).monic());
    }

    #[test]
    fn monomial_factors() {
        let v = Vars::new(&["x", "y"]);
        let x = MultiPoly::<Q>::var(&v, 0);
        let y = MultiPoly::<Q>::var(&v, 1);
        let a = x.pow(3).mul(&y).add(&x.pow(2).mul(&y).scale(&Q::int(2)));
        let b = x.pow(5).mul(&y.pow(4));
        assert_eq!(gcd(&a, &b), x.pow(2).mul(&y));
    }
}
