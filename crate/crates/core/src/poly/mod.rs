//! Sparse multivariate polynomials and rational functions.
//!
//! A [`PolyRing`] is the context (coefficient field and variable names);
//! [`SparsePoly`] values are plain term maps in graded-lex order.

mod gcd;
pub(crate) mod modgcd;
mod ratfunc;
mod squarefree;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::fields::{Field, FieldError, PrimeField, ReduceModP};

pub use ratfunc::{RatFunc, RatFuncField};
pub use squarefree::Squarefree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("operation is undefined on the zero polynomial")]
    Zero,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u32; 6]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, n),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial {
            deg: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + o.deg,
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if !o.divides(self) {
            return None;
        }
        Some(Monomial {
            deg: self.deg - o.deg,
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 6]> = self.exps.iter().zip(&o.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial {
            deg: exps.iter().sum(),
            exps,
        }
    }

    fn with_exp(&self, v: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[v] + e;
        m.exps[v] = e;
        m
    }
}

/// Polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E> SparsePoly<E> {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.deg)
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[v]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exps[v] > 0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.gcd(m)))
    }
}

/// Polynomial ring over a field with named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Arc<Vec<String>>,
}

pub type Poly<F> = SparsePoly<<F as Field>::Elem>;

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, names: &[S]) -> Self {
        PolyRing {
            field,
            names: Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Poly<F> {
        SparsePoly::zero()
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn from_i64(&self, n: i64) -> Poly<F> {
        self.constant(self.field.from_i64(n))
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        self.term(Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(&c) {
            terms.insert(m, c);
        }
        SparsePoly { terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(&self, it: I) -> Poly<F>
    where
        I: IntoIterator<Item = (Vec<u32>, F::Elem)>,
    {
        let mut p = self.zero();
        for (e, c) in it {
            assert_eq!(e.len(), self.nvars(), "exponent vector length");
            self.add_term(&mut p, Monomial::from_exps(&e), c);
        }
        p
    }

    fn add_term(&self, p: &mut Poly<F>, m: Monomial, c: F::Elem) {
        use std::collections::btree_map::Entry;
        if self.field.is_zero(&c) {
            return;
        }
        match p.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn constant_value(&self, p: &Poly<F>) -> Option<F::Elem> {
        match p.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = p.leading().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self, p: &Poly<F>) -> bool {
        p.terms.len() == 1 && {
            let (m, c) = p.leading().unwrap();
            m.is_one() && self.field.is_one(c)
        }
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            self.add_term(&mut r, m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self, a: &Poly<F>) -> Poly<F> {
        SparsePoly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let mut r = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut r, m.clone(), self.field.neg(c));
        }
        r
    }

    pub fn scale(&self, a: &Poly<F>, s: &F::Elem) -> Poly<F> {
        if self.field.is_zero(s) {
            return self.zero();
        }
        if self.field.is_one(s) {
            return a.clone();
        }
        SparsePoly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.mul(c, s))).collect(),
        }
    }

    pub fn mul_monomial(&self, a: &Poly<F>, m: &Monomial, s: &F::Elem) -> Poly<F> {
        if self.field.is_zero(s) {
            return self.zero();
        }
        SparsePoly {
            terms: a
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), self.field.mul(c, s)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.len() == 1 {
            let (m, c) = a.leading().unwrap();
            return self.mul_monomial(b, m, c);
        }
        if b.len() == 1 {
            let (m, c) = b.leading().unwrap();
            return self.mul_monomial(a, m, c);
        }
        let mut acc: std::collections::HashMap<Monomial, F::Elem> =
            std::collections::HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = self.field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = self.field.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        SparsePoly {
            terms: acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect(),
        }
    }

    pub fn pow(&self, a: &Poly<F>, mut e: u32) -> Poly<F> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Quotient and remainder of multivariate division by leading terms.
    /// The remainder is zero exactly when `b` divides `a`.
    pub fn divrem(&self, a: &Poly<F>, b: &Poly<F>) -> Result<(Poly<F>, Poly<F>), PolyError> {
        let (lm, lc) = b.leading().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = self.field.inv(lc)?;
        let mut q = self.zero();
        let mut r = a.clone();
        let mut rem = self.zero();
        while let Some((m, c)) = r.terms.iter().next_back() {
            let (m, c) = (m.clone(), c.clone());
            match m.div(lm) {
                Some(qm) => {
                    let qc = self.field.mul(&c, &lc_inv);
                    let t = self.mul_monomial(b, &qm, &self.field.neg(&qc));
                    r = self.add(&r, &t);
                    self.add_term(&mut q, qm, qc);
                }
                None => {
                    r.terms.remove(&m);
                    rem.terms.insert(m, c);
                }
            }
        }
        Ok((q, rem))
    }

    /// Exact quotient `a / b`.
    pub fn div_exact(&self, a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>, PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if let Some(c) = self.constant_value(b) {
            return Ok(self.scale(a, &self.field.inv(&c)?));
        }
        let (lm, lc) = b.leading().unwrap();
        let lc_inv = self.field.inv(lc)?;
        let mut q = self.zero();
        let mut r = a.clone();
        while let Some((m, c)) = r.terms.iter().next_back() {
            let qm = m.div(lm).ok_or(PolyError::InexactDivision)?;
            let qc = self.field.mul(c, &lc_inv);
            let m = m.clone();
            let t = self.mul_monomial(b, &qm, &self.field.neg(&qc));
            r = self.add(&r, &t);
            debug_assert!(!r.terms.contains_key(&m));
            self.add_term(&mut q, qm, qc);
        }
        Ok(q)
    }

    pub fn divides(&self, b: &Poly<F>, a: &Poly<F>) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        if let (Some(lb), Some(la)) = (b.leading(), a.leading()) {
            if !lb.0.divides(la.0) {
                return false;
            }
        }
        self.div_exact(a, b).is_ok()
    }

    /// Divides by the monomial `m`, which must divide every term.
    pub fn div_monomial(&self, a: &Poly<F>, m: &Monomial) -> Poly<F> {
        SparsePoly {
            terms: a
                .terms
                .iter()
                .map(|(n, c)| (n.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self, a: &Poly<F>) -> Poly<F> {
        match a.leading() {
            None => a.clone(),
            Some((_, c)) if self.field.is_one(c) => a.clone(),
            Some((_, c)) => self.scale(a, &self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// Total degree, with 0 for the zero polynomial.
    pub fn degree_of(&self, a: &Poly<F>) -> u32 {
        a.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self, a: &Poly<F>) -> F::Elem {
        a.leading().map(|(_, c)| c.clone()).unwrap_or_else(|| self.field.zero())
    }

    pub fn derivative(&self, a: &Poly<F>, v: usize) -> Poly<F> {
        let mut r = self.zero();
        for (m, c) in &a.terms {
            let e = m.exps[v];
            if e > 0 {
                let c = self.field.mul(c, &self.field.from_i64(e as i64));
                self.add_term(&mut r, m.with_exp(v, e - 1), c);
            }
        }
        r
    }

    pub fn eval(&self, a: &Poly<F>, pt: &[F::Elem]) -> Result<F::Elem, PolyError> {
        self.check_arity(pt.len())?;
        let f = &self.field;
        let mut powers: Vec<Vec<F::Elem>> = vec![vec![f.one()]; pt.len()];
        let mut acc = f.zero();
        for (m, c) in &a.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let ps = &mut powers[i];
                while ps.len() <= e as usize {
                    let next = f.mul(ps.last().unwrap(), &pt[i]);
                    ps.push(next);
                }
                t = f.mul(&t, &ps[e as usize]);
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Value of `a` after reducing coefficients into `fp`; `None` when a
    /// coefficient does not reduce.
    pub fn eval_mod_p(&self, a: &Poly<F>, fp: &PrimeField, pt: &[u64]) -> Option<u64>
    where
        F: ReduceModP,
    {
        let mut acc = 0u64;
        for (m, c) in &a.terms {
            let mut t = self.field.reduce(c, fp)?;
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = fp.mul(&t, &fp.pow(&pt[i], e as u64));
                }
            }
            acc = fp.add(&acc, &t);
        }
        Some(acc)
    }

    /// Coefficientwise image in `F_p[vars]`.
    pub fn reduce_mod_p(&self, a: &Poly<F>, target: &PolyRing<PrimeField>) -> Option<Poly<PrimeField>>
    where
        F: ReduceModP,
    {
        let fp = *target.field();
        self.map_coeffs(a, target, |c| self.field.reduce(c, &fp))
    }

    /// Substitutes `val` for variable `v`, keeping the arity.
    pub fn eval_var(&self, a: &Poly<F>, v: usize, val: &F::Elem) -> Poly<F> {
        let f = &self.field;
        let mut r = self.zero();
        for (m, c) in &a.terms {
            let e = m.exps[v];
            let c = if e == 0 { c.clone() } else { f.mul(c, &f.pow(val, e as u64)) };
            self.add_term(&mut r, m.with_exp(v, 0), c);
        }
        r
    }

    /// Substitutes polynomials of `target` for every variable.
    pub fn compose(
        &self,
        a: &Poly<F>,
        target: &PolyRing<F>,
        subs: &[Poly<F>],
    ) -> Result<Poly<F>, PolyError> {
        self.check_arity(subs.len())?;
        let mut powers: Vec<Vec<Poly<F>>> = vec![vec![target.one()]; subs.len()];
        let mut acc = target.zero();
        for (m, c) in &a.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let ps = &mut powers[i];
                while ps.len() <= e as usize {
                    let next = target.mul(ps.last().unwrap(), &subs[i]);
                    ps.push(next);
                }
                t = target.mul(&t, &ps[e as usize]);
            }
            acc = target.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Maps coefficients into another ring of the same arity; terms whose
    /// image is zero drop out. Fails if any coefficient fails to map.
    pub fn map_coeffs<G: Field, Fn_>(&self, a: &Poly<F>, target: &PolyRing<G>, f: Fn_) -> Option<Poly<G>>
    where
        Fn_: Fn(&F::Elem) -> Option<G::Elem>,
    {
        let mut r = target.zero();
        for (m, c) in &a.terms {
            target.add_term(&mut r, m.clone(), f(c)?);
        }
        Some(r)
    }

    /// Coefficients of `a` as a polynomial in variable `v`, lowest first.
    pub fn coeffs_in(&self, a: &Poly<F>, v: usize) -> Vec<Poly<F>> {
        let d = a.degree_in(v) as usize;
        let mut out = vec![self.zero(); d + 1];
        for (m, c) in &a.terms {
            let e = m.exps[v] as usize;
            out[e].terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(&self, cs: &[Poly<F>], v: usize) -> Poly<F> {
        let mut r = self.zero();
        for (e, c) in cs.iter().enumerate() {
            for (m, x) in &c.terms {
                r.terms.insert(m.with_exp(v, e as u32), x.clone());
            }
        }
        r
    }

    /// Re-embeds `a` into a ring with more variables; variable `i` of
    /// `self` becomes variable `map[i]` of `target`.
    pub fn embed(&self, a: &Poly<F>, target: &PolyRing<F>, map: &[usize]) -> Poly<F> {
        let n = target.nvars();
        let mut r = target.zero();
        for (m, c) in &a.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exps.iter().enumerate() {
                e[map[i]] += x;
            }
            target.add_term(&mut r, Monomial::from_exps(&e), c.clone());
        }
        r
    }

    fn check_arity(&self, got: usize) -> Result<(), PolyError> {
        if got == self.nvars() {
            Ok(())
        } else {
            Err(PolyError::Arity {
                expected: self.nvars(),
                got,
            })
        }
    }

    /// Determinant of the Jacobian matrix of `maps` (square system).
    pub fn jacobian_det(&self, maps: &[Poly<F>]) -> Result<Poly<F>, PolyError> {
        self.check_arity(maps.len())?;
        let m: Vec<Vec<Poly<F>>> = maps
            .iter()
            .map(|p| (0..self.nvars()).map(|v| self.derivative(p, v)).collect())
            .collect();
        Ok(self.determinant(&m))
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant(&self, m: &[Vec<Poly<F>>]) -> Poly<F> {
        let n = m.len();
        match n {
            0 => self.one(),
            1 => m[0][0].clone(),
            2 => self.sub(&self.mul(&m[0][0], &m[1][1]), &self.mul(&m[0][1], &m[1][0])),
            _ => {
                let mut acc = self.zero();
                for j in 0..n {
                    if m[0][j].is_zero() {
                        continue;
                    }
                    let minor: Vec<Vec<Poly<F>>> = m[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|(k, _)| *k != j)
                                .map(|(_, x)| x.clone())
                                .collect()
                        })
                        .collect();
                    let t = self.mul(&m[0][j], &self.determinant(&minor));
                    acc = if j % 2 == 0 { self.add(&acc, &t) } else { self.sub(&acc, &t) };
                }
                acc
            }
        }
    }

    pub fn display<'a>(&'a self, p: &'a Poly<F>) -> PolyDisplay<'a, F> {
        PolyDisplay { ring: self, poly: p }
    }
}

pub struct PolyDisplay<'a, F: Field> {
    ring: &'a PolyRing<F>,
    poly: &'a Poly<F>,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let d = self.ring.field.coeff_display(c);
            match (k == 0, d.negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            let mono = monomial_string(m, &self.ring.names);
            if mono.is_empty() {
                if d.atomic {
                    write!(f, "{}", d.magnitude)?;
                } else {
                    write!(f, "({})", d.magnitude)?;
                }
            } else if d.magnitude == "1" {
                write!(f, "{mono}")?;
            } else if d.atomic {
                write!(f, "{}*{mono}", d.magnitude)?;
            } else {
                write!(f, "({})*{mono}", d.magnitude)?;
            }
        }
        Ok(())
    }
}

fn monomial_string(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{e}", names[i])),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{fp_with_omega, CycloField, PrimeField};

    fn ring() -> PolyRing<CycloField> {
        PolyRing::new(CycloField, &["s3", "s4"])
    }

    #[test]
    fn product_and_division() {
        let r = ring();
        let (s3, s4) = (r.var(0), r.var(1));
        let p = r.mul(&r.sub(&s3, &s4), &r.add(&s3, &s4));
        let expect = r.sub(&r.pow(&s3, 2), &r.pow(&s4, 2));
        assert_eq!(p, expect);

        let num = r.sub(&r.pow(&s3, 3), &r.one());
        let q = r.div_exact(&num, &r.sub(&s3, &r.one())).unwrap();
        assert_eq!(q, r.add(&r.add(&r.pow(&s3, 2), &s3), &r.one()));
        assert_eq!(r.div_exact(&num, &s4), Err(PolyError::InexactDivision));
    }

    #[test]
    fn evaluation() {
        let r = ring();
        let (s3, s4) = (r.var(0), r.var(1));
        let a = r.mul(&r.mul(&r.sub(&s3, &s4), &s3), &s4);
        let one = r.field().one();
        assert!(r.eval(&a, &[one.clone(), one]).unwrap().is_zero());
        assert_eq!(r.degree_of(&a), 3);
    }

    #[test]
    fn jacobian_of_simple_maps() {
        let r = PolyRing::new(CycloField, &["u2", "u3", "u4"]);
        let id: Vec<_> = (0..3).map(|i| r.var(i)).collect();
        assert!(r.is_one(&r.jacobian_det(&id).unwrap()));
        let sq = vec![r.pow(&r.var(0), 2), r.var(1), r.var(2)];
        assert_eq!(r.jacobian_det(&sq).unwrap(), r.scale(&r.var(0), &r.field().from_i64(2)));
    }

    #[test]
    fn display_is_readable() {
        let r = ring();
        let p = r.sub(&r.scale(&r.pow(&r.var(0), 2), &r.field().from_i64(3)), &r.var(1));
        assert_eq!(r.display(&p).to_string(), "3*s3^2 - s4");
        let fp: PrimeField = fp_with_omega(7).unwrap();
        let rp = PolyRing::new(fp, &["x"]);
        assert_eq!(rp.display(&rp.add(&rp.var(0), &rp.from_i64(6))).to_string(), "x + 6");
    }
}
