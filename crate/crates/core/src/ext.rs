//! Multi-radical extensions `F[y_1..y_n] / (y_i^d - c_i)`.
//!
//! Elements are stored on the monomial basis with every exponent below
//! `d`. The quotient is a field exactly when each `T^d - c_i` stays
//! irreducible over the previous levels; otherwise inversion reports
//! [`FieldError::ZeroDivisor`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::fields::{CoeffDisplay, Field, FieldError};

pub type ExtExps = SmallVec<[u8; 6]>;

#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem<E> {
    terms: BTreeMap<ExtExps, E>,
}

impl<E> ExtElem<E> {
    pub fn terms(&self) -> impl Iterator<Item = (&ExtExps, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u8]) -> Option<&E> {
        self.terms.get(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinomialExt<F: Field> {
    base: F,
    degree: u8,
    radicands: Arc<Vec<F::Elem>>,
    /// Product of the radicands selected by each bitmask, so a product of
    /// basis monomials reduces with one multiplication.
    carry: Arc<Vec<F::Elem>>,
    names: Arc<Vec<String>>,
    /// Powers of a primitive `d`-th root of unity, when the base has one.
    zeta: Option<Arc<Vec<F::Elem>>>,
}

impl<F: Field> BinomialExt<F> {
    pub fn new<S: AsRef<str>>(base: F, degree: u8, radicands: Vec<F::Elem>, names: &[S]) -> Self {
        assert!(degree >= 2, "extension degree must be at least 2");
        assert_eq!(radicands.len(), names.len());
        assert!(radicands.len() <= 16, "too many generators");
        let n = radicands.len();
        let mut carry = Vec::with_capacity(1 << n);
        for mask in 0..(1usize << n) {
            let mut c = base.one();
            for (i, r) in radicands.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    c = base.mul(&c, r);
                }
            }
            carry.push(c);
        }
        let zeta = root_of_unity(&base, degree).map(|z| {
            Arc::new((0..degree as u64).map(|j| base.pow(&z, j)).collect())
        });
        BinomialExt {
            zeta,
            base,
            degree,
            radicands: Arc::new(radicands),
            carry: Arc::new(carry),
            names: Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()),
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn ngens(&self) -> usize {
        self.radicands.len()
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn radicand(&self, i: usize) -> &F::Elem {
        &self.radicands[i]
    }

    fn one_exps(&self) -> ExtExps {
        SmallVec::from_elem(0, self.ngens())
    }

    pub fn embed(&self, c: F::Elem) -> ExtElem<F::Elem> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(self.one_exps(), c);
        }
        ExtElem { terms }
    }

    pub fn gen(&self, i: usize) -> ExtElem<F::Elem> {
        self.monomial(&single(self.ngens(), i, 1), self.base.one())
    }

    /// `c * y^e` for exponents that may exceed `d - 1`.
    pub fn monomial(&self, e: &[u32], c: F::Elem) -> ExtElem<F::Elem> {
        let d = self.degree as u32;
        let mut exps = self.one_exps();
        let mut c = c;
        for (i, &x) in e.iter().enumerate() {
            exps[i] = (x % d) as u8;
            let wraps = x / d;
            if wraps > 0 {
                c = self.base.mul(&c, &self.base.pow(&self.radicands[i], wraps as u64));
            }
        }
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(exps, c);
        }
        ExtElem { terms }
    }

    /// The base-field value if `a` has no generator terms.
    pub fn as_base(&self, a: &ExtElem<F::Elem>) -> Option<F::Elem> {
        match a.terms.len() {
            0 => Some(self.base.zero()),
            1 => a.terms.get(&self.one_exps()).cloned(),
            _ => None,
        }
    }

    fn insert(&self, terms: &mut BTreeMap<ExtExps, F::Elem>, e: ExtExps, c: F::Elem) {
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.base.add(o.get(), &c);
                if self.base.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, a: &ExtElem<F::Elem>, s: &F::Elem) -> ExtElem<F::Elem> {
        if self.base.is_zero(s) {
            return self.zero();
        }
        ExtElem {
            terms: a.terms.iter().map(|(e, c)| (e.clone(), self.base.mul(c, s))).collect(),
        }
    }

    /// Multiplies each term by a weight depending on its exponents.
    pub fn map_terms<W>(&self, a: &ExtElem<F::Elem>, w: W) -> ExtElem<F::Elem>
    where
        W: Fn(&[u8]) -> F::Elem,
    {
        let mut terms = BTreeMap::new();
        for (e, c) in &a.terms {
            let c = self.base.mul(c, &w(e));
            if !self.base.is_zero(&c) {
                terms.insert(e.clone(), c);
            }
        }
        ExtElem { terms }
    }

    /// Highest generator index occurring, plus one.
    fn level_of(&self, a: &ExtElem<F::Elem>) -> usize {
        a.terms
            .keys()
            .map(|e| e.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    /// Splits `a` into coefficients of powers of generator `v`.
    fn split(&self, a: &ExtElem<F::Elem>, v: usize) -> Vec<ExtElem<F::Elem>> {
        let mut out = vec![self.zero(); self.degree as usize];
        for (e, c) in &a.terms {
            let k = e[v] as usize;
            let mut e = e.clone();
            e[v] = 0;
            out[k].terms.insert(e, c.clone());
        }
        trim_ext(&mut out);
        out
    }

    fn join(&self, cs: &[ExtElem<F::Elem>], v: usize) -> ExtElem<F::Elem> {
        let mut terms = BTreeMap::new();
        for (k, c) in cs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e = e.clone();
                e[v] = k as u8;
                terms.insert(e, x.clone());
            }
        }
        ExtElem { terms }
    }

    /// Inverse of an element involving only generators below `level`.
    fn inv_level(&self, a: &ExtElem<F::Elem>, level: usize) -> Result<ExtElem<F::Elem>, FieldError> {
        if a.terms.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        let level = level.min(self.level_of(a));
        if level == 0 {
            let c = a.terms.get(&self.one_exps()).expect("constant term");
            return Ok(self.embed(self.base.inv(c)?));
        }
        if a.terms.len() == 1 {
            return self.inv_monomial(a);
        }
        let v = level - 1;
        if let Some(zeta) = &self.zeta {
            return self.inv_by_norm(a, v, zeta);
        }
        let d = self.degree as usize;
        // extended Euclid of A(T) against T^d - c_v over the lower levels
        let mut r0 = vec![self.zero(); d + 1];
        r0[0] = self.embed(self.base.neg(&self.radicands[v]));
        r0[d] = self.one();
        let mut r1 = self.split(a, v);
        let mut s0: Vec<ExtElem<F::Elem>> = Vec::new();
        let mut s1 = vec![self.one()];
        while r1.len() > 1 {
            let lc_inv = self.inv_level(r1.last().unwrap(), v)?;
            let (q, r) = self.poly_divrem(&r0, &r1, &lc_inv);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r1.is_empty() {
            return Err(FieldError::ZeroDivisor);
        }
        let g_inv = self.inv_level(&r1[0], v)?;
        let s: Vec<ExtElem<F::Elem>> = s1.iter().map(|c| self.mul(c, &g_inv)).collect();
        Ok(self.join(&s, v))
    }

    /// `A^-1 = prod_{j>0} s^j(A) / N(A)` with `s: y_v -> zeta y_v`; the norm
    /// lies one level down. Avoids the coefficient growth of Euclid over
    /// function fields.
    fn inv_by_norm(
        &self,
        a: &ExtElem<F::Elem>,
        v: usize,
        zeta: &[F::Elem],
    ) -> Result<ExtElem<F::Elem>, FieldError> {
        let d = self.degree as usize;
        // when every exponent of y_v is a multiple of m, `a` lies in the
        // subextension generated by y_v^m and d/m - 1 conjugates suffice
        let m = a.terms.keys().fold(d, |g, e| gcd(g, e[v] as usize));
        let conj = |j: usize| self.map_terms(a, |e| zeta[j * e[v] as usize % d].clone());
        let mut adj = conj(1);
        for j in 2..d / m {
            adj = self.mul(&adj, &conj(j));
        }
        let norm = self.mul(a, &adj);
        if norm.terms.is_empty() {
            return Err(FieldError::ZeroDivisor);
        }
        debug_assert!(norm.terms.keys().all(|e| e[v] == 0));
        let n_inv = self.inv_level(&norm, v)?;
        Ok(self.mul(&adj, &n_inv))
    }

    fn inv_monomial(&self, a: &ExtElem<F::Elem>) -> Result<ExtElem<F::Elem>, FieldError> {
        // (c y^e)^(-1) = c^(-1) prod(c_i)^(-1) y^(d - e) over the nonzero e_i
        let (e, c) = a.terms.iter().next().unwrap();
        let d = self.degree;
        let mut mask = 0usize;
        let mut exps = self.one_exps();
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                mask |= 1 << i;
                exps[i] = d - x;
            }
        }
        let denom = self.base.mul(c, &self.carry[mask]);
        let mut terms = BTreeMap::new();
        terms.insert(exps, self.base.inv(&denom)?);
        Ok(ExtElem { terms })
    }

    fn poly_mul(&self, a: &[ExtElem<F::Elem>], b: &[ExtElem<F::Elem>]) -> Vec<ExtElem<F::Elem>> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.terms.is_empty() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.terms.is_empty() {
                    out[i + j] = self.add(&out[i + j], &self.mul(x, y));
                }
            }
        }
        trim_ext(&mut out);
        out
    }

    fn poly_sub(&self, a: &[ExtElem<F::Elem>], b: &[ExtElem<F::Elem>]) -> Vec<ExtElem<F::Elem>> {
        let n = a.len().max(b.len());
        let zero = self.zero();
        let mut out: Vec<_> = (0..n)
            .map(|i| self.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        trim_ext(&mut out);
        out
    }

    fn poly_divrem(
        &self,
        a: &[ExtElem<F::Elem>],
        b: &[ExtElem<F::Elem>],
        lc_inv: &ExtElem<F::Elem>,
    ) -> (Vec<ExtElem<F::Elem>>, Vec<ExtElem<F::Elem>>) {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let lead = &r[k + db];
            if lead.terms.is_empty() {
                continue;
            }
            let c = self.mul(lead, lc_inv);
            for (j, bj) in b.iter().enumerate() {
                if !bj.terms.is_empty() {
                    r[k + j] = self.sub(&r[k + j], &self.mul(&c, bj));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        trim_ext(&mut r);
        trim_ext(&mut q);
        (q, r)
    }
}

/// A primitive `d`-th root of unity built from `omega`, for `d` in {2, 3, 6}.
fn root_of_unity<F: Field>(base: &F, d: u8) -> Option<F::Elem> {
    match d {
        2 => Some(base.from_i64(-1)),
        3 if base.has_omega() => Some(base.omega()),
        6 if base.has_omega() => Some(base.neg(&base.omega())),
        _ => None,
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn single(n: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = e;
    v
}

fn trim_ext<E>(v: &mut Vec<ExtElem<E>>) {
    while v.last().is_some_and(|c| c.terms.is_empty()) {
        v.pop();
    }
}

impl<F: Field> Field for BinomialExt<F> {
    type Elem = ExtElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        ExtElem {
            terms: BTreeMap::new(),
        }
    }

    fn one(&self) -> Self::Elem {
        self.embed(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.terms.is_empty()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (big, small) = if a.terms.len() >= b.terms.len() { (a, b) } else { (b, a) };
        let mut terms = big.terms.clone();
        for (e, c) in &small.terms {
            self.insert(&mut terms, e.clone(), c.clone());
        }
        ExtElem { terms }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        ExtElem {
            terms: a.terms.iter().map(|(e, c)| (e.clone(), self.base.neg(c))).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.degree;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let mut mask = 0usize;
                let e: ExtExps = ea
                    .iter()
                    .zip(eb.iter())
                    .enumerate()
                    .map(|(i, (x, y))| {
                        let s = x + y;
                        if s >= d {
                            mask |= 1 << i;
                            s - d
                        } else {
                            s
                        }
                    })
                    .collect();
                let mut c = self.base.mul(ca, cb);
                if mask != 0 {
                    c = self.base.mul(&c, &self.carry[mask]);
                }
                self.insert(&mut terms, e, c);
            }
        }
        ExtElem { terms }
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError> {
        self.inv_level(a, self.ngens())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(self.base.from_i64(n))
    }

    fn has_omega(&self) -> bool {
        self.base.has_omega()
    }

    fn omega(&self) -> Self::Elem {
        self.embed(self.base.omega())
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if a.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in a.terms.iter().enumerate() {
            let d = self.base.coeff_display(c);
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{x}", self.names[i])
                    }
                })
                .collect();
            let mono = mono.join("*");
            match (k == 0, d.negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            let coeff = if d.atomic { d.magnitude } else { format!("({})", d.magnitude) };
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff}*{mono}")?;
            }
        }
        Ok(())
    }

    fn coeff_display(&self, a: &Self::Elem) -> CoeffDisplay {
        match self.as_base(a) {
            Some(c) => self.base.coeff_display(&c),
            None => CoeffDisplay {
                negative: false,
                magnitude: self.display(a).to_string(),
                atomic: false,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{fp_with_omega, CycloField};

    #[test]
    fn cube_root_of_two_over_q_omega() {
        let k = BinomialExt::new(CycloField, 3, vec![CycloField.from_i64(2)], &["r"]);
        let r = k.gen(0);
        assert_eq!(k.pow(&r, 3), k.from_i64(2));
        let a = k.add(&k.add(&k.one(), &r), &k.mul(&r, &r));
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
    }

    #[test]
    fn two_level_inverse() {
        let q = CycloField;
        let k = BinomialExt::new(q.clone(), 3, vec![q.from_i64(2), q.from_i64(3)], &["a", "b"]);
        let (a, b) = (k.gen(0), k.gen(1));
        let x = k.add(&k.add(&a, &b), &k.mul(&a, &b));
        let x = k.add(&x, &k.from_i64(5));
        let inv = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &inv), k.one());
    }

    #[test]
    fn cube_classes_collapse_over_fp() {
        // F_p^* modulo cubes is cyclic of order 3, so a second cube root of
        // a non-cube is already in the first level
        let fp = fp_with_omega(7).unwrap();
        let k = BinomialExt::new(fp, 3, vec![2, 3], &["a", "b"]);
        let ab = k.mul(&k.gen(0), &k.gen(1));
        // (ab)^3 = 6 = -1, so ab + 1 divides zero
        assert_eq!(k.inv(&k.add(&ab, &k.one())), Err(FieldError::ZeroDivisor));
    }

    #[test]
    fn euclid_path_without_roots_of_unity() {
        // F_11 has no cube root of unity; 7^3 = 2 there
        let fp = crate::fields::prime_field(11).unwrap();
        let k = BinomialExt::new(fp, 3, vec![2], &["r"]);
        let r = k.gen(0);
        assert_eq!(k.inv(&k.sub(&r, &k.from_i64(7))), Err(FieldError::ZeroDivisor));
        let x = k.add(&k.mul(&r, &r), &k.from_i64(3));
        let inv = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &inv), k.one());
    }

    #[test]
    fn reducible_radicand_is_detected() {
        let k = BinomialExt::new(CycloField, 3, vec![CycloField.from_i64(8)], &["r"]);
        // r - 2 divides r^3 - 8
        let x = k.sub(&k.gen(0), &k.from_i64(2));
        assert_eq!(k.inv(&x), Err(FieldError::ZeroDivisor));
    }
}
