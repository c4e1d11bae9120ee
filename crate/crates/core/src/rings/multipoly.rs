use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use smallvec::SmallVec;

use super::{BaseField, Ring, RingTag};

/// An ordered list of indeterminate names. The first name is the largest
/// variable in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        Arc::new(Vars { names: names.iter().map(|s| s.as_ref().to_string()).collect() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The same list with one variable removed.
    pub fn without(&self, idx: usize) -> Arc<Self> {
        let mut names = self.names.clone();
        names.remove(idx);
        Arc::new(Vars { names })
    }
}

pub(crate) fn same_vars(a: &Arc<Vars>, b: &Arc<Vars>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a base field.
#[derive(Clone, Debug)]
pub struct MultiPoly<F: BaseField> {
    vars: Arc<Vars>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: BaseField> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<F: BaseField> MultiPoly<F> {
    pub fn zero(vars: &Arc<Vars>) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<Vars>, c: F) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Arc<Vars>) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn int(vars: &Arc<Vars>, n: i64) -> Self {
        Self::constant(vars, F::from_i64(n))
    }

    /// The `idx`-th indeterminate.
    pub fn var(vars: &Arc<Vars>, idx: usize) -> Self {
        let mut m = Monomial::one(vars.len());
        m.0[idx] = 1;
        Self::monomial(vars, m, F::one())
    }

    pub fn var_named(vars: &Arc<Vars>, name: &str) -> Option<Self> {
        vars.index_of(name).map(|i| Self::var(vars, i))
    }

    pub fn monomial(vars: &Arc<Vars>, m: Monomial, c: F) -> Self {
        assert_eq!(m.0.len(), vars.len(), "monomial arity");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms(vars: &Arc<Vars>, terms: &[(i64, &[u32])]) -> Self {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            p.add_term(Monomial(SmallVec::from_slice(e)), F::from_i64(*c));
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.is_zero() {
            Some(F::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> F {
        self.leading_term().map_or_else(F::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) {
        debug_assert!(same_vars(&self.vars, &other.vars), "polynomials over different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let (mut big, small) =
            if self.terms.len() >= other.terms.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let mut acc: std::collections::HashMap<Monomial, F> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = o.get().add(&c);
                        *o.get_mut() = s;
                    }
                }
            }
        }
        MultiPoly { vars: self.vars.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.mul(c))).filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
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

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.check(divisor);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.vars));
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.inv()?));
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            if m.degree() < lm.degree() {
                return None;
            }
            let qm = m.checked_div(&lm)?;
            let qc = c.mul(&lc_inv);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), dc.mul(&qc).neg());
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to one variable, lowest degree first. The
    /// coefficient polynomials live in the same ring but do not involve `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[k].terms.insert(m2, c.clone());
        }
        out
    }

    /// Inverse of [`Self::coeffs_in`].
    pub fn from_coeffs_in(vars: &Arc<Vars>, var: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut m2 = m.clone();
                m2.0[var] += k as u32;
                out.add_term(m2, v.clone());
            }
        }
        out
    }

    /// Component-wise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Monomial {
        let n = self.nvars();
        let mut out = Monomial(SmallVec::from_elem(u32::MAX, n));
        for m in self.terms.keys() {
            for i in 0..n {
                out.0[i] = out.0[i].min(m.0[i]);
            }
        }
        if self.is_zero() {
            return Monomial::one(n);
        }
        out
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut out = Self::zero(&self.vars);
        for (k, c) in &self.terms {
            out.terms.insert(k.checked_div(m)?, c.clone());
        }
        Some(out)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                out.add_term(m2, c.mul(&F::from_i64(e as i64)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars(), "evaluation point arity");
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars(), "evaluation point arity");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(c.to_f64(), |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Substitutes polynomials (over `target` variables) for every variable.
    pub fn compose(&self, target: &Arc<Vars>, images: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Moves the polynomial into another variable list in which every
    /// variable it involves also appears (matched by name).
    pub fn reindex(&self, target: &Arc<Vars>) -> Option<MultiPoly<F>> {
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index_of(n)).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    m2.0[map[i]?] += e;
                }
            }
            out.add_term(m2, c.clone());
        }
        Some(out)
    }

    /// Scalar multiple with the canonical normalization of the base field
    /// (integral primitive over QQ, leading coefficient one otherwise).
    pub fn primitive_scalar(&self) -> Self {
        let coeffs: Vec<&F> = self.terms.values().collect();
        let mut s = F::primitive_scale(&coeffs);
        // keep the grlex-leading coefficient positive over QQ
        if let Some((_, lc)) = self.leading_term() {
            if lc.mul(&s).is_negative() {
                s = s.neg();
            }
        }
        self.scale(&s)
    }

    /// Scalar multiple with leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.vars.names()[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl<F: BaseField> fmt::Display for MultiPoly<F> {
    /// Canonical rendering: terms in decreasing graded-lex order, explicit
    /// `+`/`-`, `^` for powers, `*` between factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl<F: BaseField> Ring for MultiPoly<F> {
    fn ring_tag(&self) -> RingTag {
        RingTag::Polynomials { base: Box::new(F::tag()), vars: self.vars.names().to_vec() }
    }
    fn characteristic(&self) -> u64 {
        F::CHARACTERISTIC
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.vars)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::constant(&self.vars, F::from_bigint(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.constant_value()?;
        c.inv().map(|i| Self::constant(&self.vars, i))
    }
}
