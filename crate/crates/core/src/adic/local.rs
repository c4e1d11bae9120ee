use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::AdicError;
use crate::rings::{
    gcd, BaseField, DiscPrime, MultiPoly, RationalFunction, Ring, RingTag, Valuation, Vars,
};

/// A polynomial in the non-main variables.
type Sub<F> = MultiPoly<F>;

/// `A / pi^{N+1}` for a discriminant prime `pi`.
///
/// With `x` the prime's main variable and `K` the field of rational
/// functions in the remaining variables, `A / pi^{N+1}` is `K[x]` modulo
/// `pi^{N+1}`. Elements are stored fraction-free: a numerator polynomial
/// in `x` of degree below `deg_x pi^{N+1}` whose coefficients are
/// polynomials in the other variables, over one common denominator that
/// does not involve `x`. The reduced numerator over a given denominator
/// is unique, so equality is decided by cross-multiplication, and the
/// pi-adic digits (each of `x`-degree below `deg_x pi`) are computed from
/// it on demand.
#[derive(Debug)]
pub struct LocalRing<F: BaseField> {
    pi: DiscPrime<F>,
    main: usize,
    sub_vars: Arc<Vars>,
    /// Coefficients of `pi` in `x`, lowest first.
    pi_coeffs: Vec<Sub<F>>,
    /// Coefficients of `pi^{N+1}` in `x`, lowest first.
    modulus: Vec<Sub<F>>,
    order: usize,
}

fn trim<F: BaseField>(v: &mut Vec<Sub<F>>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn vec_mul<F: BaseField>(a: &[Sub<F>], b: &[Sub<F>], zero: &Sub<F>) -> Vec<Sub<F>> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    trim(&mut out);
    out
}

fn vec_scale<F: BaseField>(a: &[Sub<F>], s: &Sub<F>) -> Vec<Sub<F>> {
    let mut out: Vec<Sub<F>> = a.iter().map(|c| c.mul(s)).collect();
    trim(&mut out);
    out
}

fn vec_add<F: BaseField>(a: &[Sub<F>], b: &[Sub<F>]) -> Vec<Sub<F>> {
    let n = a.len().max(b.len());
    let mut out: Vec<Sub<F>> = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

/// Determinant by expansion along the first row (the matrices here are at
/// most 3 by 3).
fn determinant<F: BaseField>(m: &[Vec<Sub<F>>]) -> Sub<F> {
    match m.len() {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        n => {
            let mut acc = m[0][0].zero_like();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Sub<F>>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = m[0][j].mul(&determinant(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// `(q, r, s)` with `s u = q m + r`, `deg r < deg m` and `s` a power of the
/// leading coefficient of `m` (1 when that coefficient is a constant).
fn pseudo_divrem<F: BaseField>(u: &[Sub<F>], m: &[Sub<F>]) -> (Vec<Sub<F>>, Vec<Sub<F>>, Sub<F>) {
    let d = m.len() - 1;
    let lead = &m[d];
    let one = lead.one_like();
    let mut r = u.to_vec();
    if r.len() <= d {
        return (vec![], r, one);
    }
    let zero = lead.zero_like();
    let mut q = vec![zero.clone(); r.len() - d];
    let mut s = one;
    let inv_const = lead.constant_value().map(|c| c.inv().expect("nonzero leading coefficient"));
    for k in (d..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let f = match &inv_const {
            Some(ic) => r[k].scale(ic),
            None => {
                for c in r[..k].iter_mut() {
                    *c = c.mul(lead);
                }
                for c in q.iter_mut() {
                    *c = c.mul(lead);
                }
                s = s.mul(lead);
                r[k].clone()
            }
        };
        for (i, mi) in m.iter().enumerate().take(d) {
            if !mi.is_zero() {
                r[k - d + i] = r[k - d + i].sub(&f.mul(mi));
            }
        }
        r[k] = zero.clone();
        q[k - d] = q[k - d].add(&f);
    }
    trim(&mut r);
    trim(&mut q);
    (q, r, s)
}

impl<F: BaseField> LocalRing<F> {
    /// Ring of pi-adic elements known through `pi^order`.
    pub fn new(pi: &DiscPrime<F>, order: usize) -> Arc<Self> {
        let main = pi.main_var();
        let sub_vars = pi.vars().without(main);
        let pi_coeffs: Vec<Sub<F>> = pi
            .poly()
            .coeffs_in(main)
            .iter()
            .map(|c| c.reindex(&sub_vars).expect("coefficient avoids the main variable"))
            .collect();
        let zero = Sub::zero(&sub_vars);
        let mut modulus = vec![Sub::one(&sub_vars)];
        for _ in 0..=order {
            modulus = vec_mul(&modulus, &pi_coeffs, &zero);
        }
        Arc::new(LocalRing { pi: pi.clone(), main, sub_vars, pi_coeffs, modulus, order })
    }

    pub fn pi(&self) -> &DiscPrime<F> {
        &self.pi
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn main_var(&self) -> usize {
        self.main
    }

    /// Name of the variable residues are written in.
    pub fn main_var_name(&self) -> &str {
        &self.pi.vars().names()[self.main]
    }

    fn szero(&self) -> Sub<F> {
        Sub::zero(&self.sub_vars)
    }

    fn sone(&self) -> Sub<F> {
        Sub::one(&self.sub_vars)
    }

    /// Builds the canonical element `num / den`: reduces the numerator and
    /// makes the denominator monic (1 when it is a constant).
    fn make(self: &Arc<Self>, num: Vec<Sub<F>>, den: Sub<F>) -> DiscAdicElement<F> {
        let (_, mut r, s) = pseudo_divrem(&num, &self.modulus);
        let mut den = den.mul(&s);
        trim(&mut r);
        if r.is_empty() {
            return DiscAdicElement { ctx: self.clone(), num: r, den: self.sone() };
        }
        // cancel the common content of numerator and denominator so that
        // neither grows without bound under repeated arithmetic
        if !den.is_constant() {
            let mut g = den.clone();
            for c in &r {
                g = gcd(&g, c);
                if g.is_constant() {
                    break;
                }
            }
            if !g.is_constant() {
                den = den.exact_div(&g).expect("gcd divides");
                r = r.iter().map(|c| c.exact_div(&g).expect("gcd divides")).collect();
            }
        }
        let lc = den.leading_coeff();
        let lc_inv = lc.inv().expect("nonzero denominator");
        if den.is_constant() {
            den = self.sone();
        } else {
            den = den.scale(&lc_inv);
        }
        let r = if lc.is_one() { r } else { r.iter().map(|c| c.scale(&lc_inv)).collect() };
        DiscAdicElement { ctx: self.clone(), num: r, den }
    }

    fn split(&self, p: &MultiPoly<F>) -> Vec<Sub<F>> {
        let mut v: Vec<Sub<F>> = p
            .coeffs_in(self.main)
            .iter()
            .map(|c| c.reindex(&self.sub_vars).expect("coefficient avoids the main variable"))
            .collect();
        trim(&mut v);
        v
    }

    fn join(&self, v: &[Sub<F>]) -> MultiPoly<F> {
        let vars = self.pi.vars();
        let coeffs: Vec<MultiPoly<F>> = v.iter().map(|c| c.reindex(vars).expect("sub-variables embed")).collect();
        MultiPoly::from_coeffs_in(vars, self.main, &coeffs)
    }

    pub fn zero(self: &Arc<Self>) -> DiscAdicElement<F> {
        DiscAdicElement { ctx: self.clone(), num: vec![], den: self.sone() }
    }

    pub fn one(self: &Arc<Self>) -> DiscAdicElement<F> {
        self.make(vec![self.sone()], self.sone())
    }

    pub fn int(self: &Arc<Self>, n: i64) -> DiscAdicElement<F> {
        self.make(vec![Sub::int(&self.sub_vars, n)], self.sone())
    }

    /// `pi^k` (zero once `k` exceeds the order).
    pub fn pi_power(self: &Arc<Self>, k: usize) -> DiscAdicElement<F> {
        if k > self.order {
            return self.zero();
        }
        let mut v = vec![self.sone()];
        for _ in 0..k {
            v = vec_mul(&v, &self.pi_coeffs, &self.szero());
        }
        self.make(v, self.sone())
    }

    /// Image of a polynomial.
    pub fn embed_poly(self: &Arc<Self>, p: &MultiPoly<F>) -> Result<DiscAdicElement<F>, AdicError> {
        let p = self.to_own_vars(p)?;
        Ok(self.make(self.split(&p), self.sone()))
    }

    /// Image of a rational function with non-negative valuation.
    pub fn embed(self: &Arc<Self>, x: &RationalFunction<F>) -> Result<DiscAdicElement<F>, AdicError> {
        let num = self.embed_poly(x.numer())?;
        if x.is_polynomial() {
            return Ok(num);
        }
        let den = self.to_own_vars(x.denom())?;
        if !den.involves(self.main) {
            let d = den.reindex(&self.sub_vars).expect("denominator avoids the main variable");
            return Ok(self.make(num.num.clone(), d));
        }
        let inv = self.embed_poly(&den)?.inv().map_err(|_| AdicError::NegativeValuation(x.to_string()))?;
        Ok(num.mul(&inv))
    }

    fn to_own_vars(&self, p: &MultiPoly<F>) -> Result<MultiPoly<F>, AdicError> {
        if p.vars().names() == self.pi.vars().names() {
            return Ok(p.clone());
        }
        p.reindex(self.pi.vars())
            .ok_or_else(|| AdicError::Ring(crate::rings::RingError::Mismatch(p.ring_tag(), self.pi.poly().ring_tag())))
    }

    /// Rebuilds an element from arbitrary digits of non-negative valuation,
    /// carrying any pi-multiples into higher digits.
    pub fn from_digits(self: &Arc<Self>, digits: &[RationalFunction<F>]) -> Result<DiscAdicElement<F>, AdicError> {
        let mut acc = self.zero();
        for (k, d) in digits.iter().enumerate().take(self.order + 1) {
            acc = acc.add(&self.embed(d)?.mul(&self.pi_power(k)));
        }
        Ok(acc)
    }
}

/// An element of the pi-adic completion known modulo `pi^{N+1}`.
#[derive(Clone, Debug)]
pub struct DiscAdicElement<F: BaseField> {
    ctx: Arc<LocalRing<F>>,
    /// Reduced numerator, coefficients in the main variable, lowest first.
    num: Vec<Sub<F>>,
    /// Monic common denominator free of the main variable.
    den: Sub<F>,
}

impl<F: BaseField> PartialEq for DiscAdicElement<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx.order != other.ctx.order || self.ctx.pi != other.ctx.pi {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        vec_scale(&self.num, &other.den) == vec_scale(&other.num, &self.den)
    }
}

impl<F: BaseField> DiscAdicElement<F> {
    pub fn ring(&self) -> &Arc<LocalRing<F>> {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn pi(&self) -> &DiscPrime<F> {
        &self.ctx.pi
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || (self.ctx.order == other.ctx.order && self.ctx.pi == other.ctx.pi),
            "pi-adic elements from different rings"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        self.same_ring(other);
        let other_num: Vec<Sub<F>> =
            if sign < 0 { other.num.iter().map(|c| c.neg()).collect() } else { other.num.clone() };
        if self.den == other.den {
            return self.ctx.make(vec_add(&self.num, &other_num), self.den.clone());
        }
        // the denominators are usually powers of a few polynomials, so one
        // often divides the other; otherwise use their product
        let (a, b) = if let Some(q) = other.den.exact_div(&self.den) {
            (q, self.ctx.sone())
        } else if let Some(q) = self.den.exact_div(&other.den) {
            (self.ctx.sone(), q)
        } else {
            (other.den.clone(), self.den.clone())
        };
        // self.num * a / (self.den * a) + other.num * b / (other.den * b)
        let num = vec_add(&vec_scale(&self.num, &a), &vec_scale(&other_num, &b));
        self.ctx.make(num, self.den.mul(&a))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        DiscAdicElement { ctx: self.ctx.clone(), num: self.num.iter().map(|c| c.neg()).collect(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        if self.is_zero() || other.is_zero() {
            return self.ctx.zero();
        }
        let num = vec_mul(&self.num, &other.num, &self.ctx.szero());
        self.ctx.make(num, self.den.mul(&other.den))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&F::from_i64(n))
    }

    /// Multiplies by a scalar of the base field.
    pub fn scale(&self, c: &F) -> Self {
        let mut num: Vec<Sub<F>> = self.num.iter().map(|x| x.scale(c)).collect();
        trim(&mut num);
        if num.is_empty() {
            return self.ctx.zero();
        }
        DiscAdicElement { ctx: self.ctx.clone(), num, den: self.den.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse of a unit: the residue inverse by Cramer's rule on the
    /// matrix of multiplication modulo `pi`, then Newton's iteration
    /// `y <- y (2 - a y)`, doubling the precision each step, and finally
    /// multiplication by the denominator.
    pub fn inv(&self) -> Result<Self, AdicError> {
        let ctx = &self.ctx;
        let n = ctx.pi_coeffs.len() - 1;
        // column j: (num x^j mod pi) = col_j / s_j
        let mut cols = Vec::with_capacity(n);
        let mut scales = Vec::with_capacity(n);
        let mut xj = vec![ctx.sone()];
        for _ in 0..n {
            let prod = vec_mul(&self.num, &xj, &ctx.szero());
            let (_, r, s) = pseudo_divrem(&prod, &ctx.pi_coeffs);
            cols.push(r);
            scales.push(s);
            xj.insert(0, ctx.szero());
        }
        // bring all columns over the common scale S = prod s_j
        let total = scales.iter().fold(ctx.sone(), |acc, s| acc.mul(s));
        let matrix: Vec<Vec<Sub<F>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = cols[j].get(i).cloned().unwrap_or_else(|| ctx.szero());
                        let others = total.exact_div(&scales[j]).expect("scale divides the product");
                        c.mul(&others)
                    })
                    .collect()
            })
            .collect();
        let det = determinant(&matrix);
        if det.is_zero() {
            return Err(AdicError::NotAUnit(self.to_string()));
        }
        // (M / S) b = e_0, so b_i = det(M with column i replaced by S e_0) / det(M)
        let b: Vec<Sub<F>> = (0..n)
            .map(|i| {
                let mut m = matrix.clone();
                for (row, r) in m.iter_mut().enumerate() {
                    r[i] = if row == 0 { total.clone() } else { ctx.szero() };
                }
                determinant(&m)
            })
            .collect();
        let mut y = ctx.make(b, det);
        let a = ctx.make(self.num.clone(), ctx.sone());
        let two = ctx.int(2);
        let mut known = 1;
        while known < ctx.order + 1 {
            y = y.mul(&two.sub(&a.mul(&y)));
            known *= 2;
        }
        Ok(ctx.make(vec_scale(&y.num, &self.den), y.den.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AdicError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Digits as numerators over accumulated denominators.
    fn raw_digits(&self, count: usize) -> Vec<(Vec<Sub<F>>, Sub<F>)> {
        let mut out = Vec::with_capacity(count);
        let mut rest = self.num.clone();
        let mut den = self.den.clone();
        for _ in 0..count {
            let (q, r, s) = pseudo_divrem(&rest, &self.ctx.pi_coeffs);
            den = den.mul(&s);
            out.push((r, den.clone()));
            rest = q;
        }
        out
    }

    /// The pi-adic digits `a_0, ..., a_N`: each zero or of valuation zero.
    pub fn digits(&self) -> Vec<RationalFunction<F>> {
        let vars = self.ctx.pi.vars();
        self.raw_digits(self.ctx.order + 1)
            .into_iter()
            .map(|(r, d)| {
                let den = d.reindex(vars).expect("sub-variables embed");
                RationalFunction::new(self.ctx.join(&r), den).expect("nonzero denominator")
            })
            .collect()
    }

    /// Digit `k` as an element of the local ring, for computations modulo pi.
    pub fn digit(&self, k: usize) -> Self {
        let (r, d) = self.raw_digits(k + 1).pop().expect("at least one digit");
        self.ctx.make(r, d)
    }

    /// `v_pi`, exact when a nonzero digit exists, otherwise a lower bound.
    pub fn valuation(&self) -> Valuation {
        let mut rest = self.num.clone();
        for k in 0..=self.ctx.order {
            if rest.is_empty() {
                break;
            }
            let (q, r, _) = pseudo_divrem(&rest, &self.ctx.pi_coeffs);
            if !r.is_empty() {
                return Valuation::Finite(k as i64);
            }
            rest = q;
        }
        Valuation::AtLeast(self.ctx.order as i64 + 1)
    }

    /// The truncated expansion as an honest rational function.
    pub fn to_rational_function(&self) -> RationalFunction<F> {
        let den = self.den.reindex(self.ctx.pi.vars()).expect("sub-variables embed");
        RationalFunction::new(self.ctx.join(&self.num), den).expect("nonzero denominator")
    }

    /// Re-expands the digits; the identity on normalized elements.
    pub fn renormalize(&self) -> Result<Self, AdicError> {
        self.ctx.from_digits(&self.digits())
    }

    /// Same element known to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.ctx.order {
            return self.clone();
        }
        self.in_ring(&LocalRing::new(&self.ctx.pi, order))
    }

    /// Moves the element into another ring over the same prime (lower or
    /// equal order, or padding a known-exact element with zeros).
    pub fn in_ring(&self, ring: &Arc<LocalRing<F>>) -> Self {
        assert_eq!(self.ctx.pi, ring.pi, "pi-adic elements from different rings");
        ring.make(self.num.clone(), self.den.clone())
    }

    /// Canonical rendering `a0 + a1·π + ... + aN·π^N [π = <poly>]`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, d) in self.digits().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let s = d.to_string();
            let body = if needs_parens(&s) { format!("({s})") } else { s };
            parts.push(match k {
                0 => body,
                1 => format!("{body}·π"),
                _ => format!("{body}·π^{k}"),
            });
        }
        let series = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("{series} [π = {}]", self.ctx.pi.poly())
    }
}

fn needs_parens(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.contains(" + ") || body.contains(" - ") || body.contains('/')
}

impl<F: BaseField> fmt::Display for DiscAdicElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: BaseField> Ring for DiscAdicElement<F> {
    fn ring_tag(&self) -> RingTag {
        RingTag::Completion {
            base: Box::new(RationalFunction::<F>::zero(self.ctx.pi.vars()).ring_tag()),
            pi: self.ctx.pi.poly().to_string(),
            order: self.ctx.order,
        }
    }
    fn characteristic(&self) -> u64 {
        F::CHARACTERISTIC
    }
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        self.ctx.make(vec![Sub::constant(&self.ctx.sub_vars, F::from_bigint(n))], self.ctx.sone())
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        DiscAdicElement::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        DiscAdicElement::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        DiscAdicElement::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        DiscAdicElement::neg(self)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn pow(&self, k: u32) -> Self {
        DiscAdicElement::pow(self, k)
    }
    fn scale_int(&self, n: i64) -> Self {
        DiscAdicElement::scale_int(self, n)
    }
}
