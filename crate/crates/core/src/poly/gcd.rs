//! Multivariate gcd by recursive primitive remainder sequences.

use super::{Poly, PolyRing};
use crate::fields::Field;

/// Term-count product above which the field's own gcd is tried first.
const SPECIAL_GCD_SIZE: usize = 64;

impl<F: Field> PolyRing<F> {
    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_zero() {
            return self.monic(b);
        }
        if b.is_zero() {
            return self.monic(a);
        }
        if a.is_constant() || b.is_constant() {
            return self.one();
        }
        let ma = a.monomial_content().unwrap();
        let mb = b.monomial_content().unwrap();
        let m = ma.gcd(&mb);
        let a = self.div_monomial(a, &ma);
        let b = self.div_monomial(b, &mb);
        let g = self.gcd_no_monomial(&a, &b);
        if m.is_one() {
            g
        } else {
            self.mul_monomial(&g, &m, &self.field.one())
        }
    }

    pub fn lcm(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let g = self.gcd(a, b);
        let q = self.div_exact(a, &g).expect("gcd divides");
        self.monic(&self.mul(&q, b))
    }

    fn gcd_no_monomial(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_constant() || b.is_constant() {
            return self.one();
        }
        if a == b {
            return self.monic(a);
        }
        let n = self.nvars();
        // A variable occurring in only one input cannot occur in the gcd.
        for v in 0..n {
            let (ia, ib) = (a.contains_var(v), b.contains_var(v));
            if ia && !ib {
                return self.gcd_with_coeffs(b, &self.coeffs_in(a, v));
            }
            if ib && !ia {
                return self.gcd_with_coeffs(a, &self.coeffs_in(b, v));
            }
        }
        if a.len() * b.len() > SPECIAL_GCD_SIZE {
            // every variable occurs in both; degree 0 images in each one
            // rule out any common factor
            if self.field.characteristic() != 0
                && (0..n).all(|v| !a.contains_var(v) || self.image_gcd_degree(a, b, v) == Some(0)) {
                return self.one();
            }
            if let Some(g) = F::special_gcd(self, a, b) {
                return g;
            }
        }
        let vars: Vec<usize> = (0..n).filter(|&v| a.contains_var(v)).collect();
        if vars.len() == 1 {
            return self.euclid(a, b, vars[0]);
        }
        // main variable: smallest combined degree keeps the sequence short
        let v = *vars
            .iter()
            .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
            .unwrap();
        let (ca, pa) = self.content_and_primitive(a, v);
        let (cb, pb) = self.content_and_primitive(b, v);
        let c = self.gcd(&ca, &cb);
        let g = self.primitive_gcd(&pa, &pb, v);
        self.monic(&self.mul(&c, &g))
    }

    /// gcd of `b` with all of `coeffs`, stopping early at 1.
    fn gcd_with_coeffs(&self, b: &Poly<F>, coeffs: &[Poly<F>]) -> Poly<F> {
        let mut g = self.monic(b);
        let mut cs: Vec<&Poly<F>> = coeffs.iter().filter(|c| !c.is_zero()).collect();
        cs.sort_by_key(|c| c.len());
        for c in cs {
            g = self.gcd(&g, c);
            if g.is_constant() {
                return self.one();
            }
        }
        g
    }

    /// Content with respect to `v` (monic gcd of the coefficients) and the
    /// corresponding primitive part.
    pub fn content_and_primitive(&self, a: &Poly<F>, v: usize) -> (Poly<F>, Poly<F>) {
        let cs = self.coeffs_in(a, v);
        let mut nz: Vec<&Poly<F>> = cs.iter().filter(|c| !c.is_zero()).collect();
        nz.sort_by_key(|c| c.len());
        let mut g = self.monic(nz[0]);
        for c in &nz[1..] {
            if g.is_constant() {
                break;
            }
            g = self.gcd(&g, c);
        }
        if g.is_constant() {
            return (self.one(), a.clone());
        }
        let p = self.div_exact(a, &g).expect("content divides");
        (g, p)
    }

    /// gcd of two polynomials primitive in `v` and both involving `v`.
    fn primitive_gcd(&self, a: &Poly<F>, b: &Poly<F>, v: usize) -> Poly<F> {
        let (a, b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
        match self.image_gcd_degree(a, b, v) {
            Some(0) => return self.one(),
            Some(d) if d == b.degree_in(v) => {
                if self.divides(b, a) {
                    return self.monic(b);
                }
            }
            _ => {}
        }
        let mut a = a.clone();
        let mut b = b.clone();
        loop {
            let r = self.pseudo_rem(&a, &b, v);
            if r.is_zero() {
                return self.monic(&b);
            }
            if !r.contains_var(v) {
                return self.one();
            }
            let (_, pr) = self.content_and_primitive(&r, v);
            a = b;
            b = self.monic(&pr);
        }
    }

    /// Degree in `v` of the gcd of images under substituting small
    /// integers for the other variables, where leading coefficients
    /// survive. An upper bound for the true gcd degree.
    fn image_gcd_degree(&self, a: &Poly<F>, b: &Poly<F>, v: usize) -> Option<u32> {
        let f = &self.field;
        let n = self.nvars();
        let ca = self.coeffs_in(a, v);
        let cb = self.coeffs_in(b, v);
        let (la, lb) = (ca.last().unwrap(), cb.last().unwrap());
        for attempt in 0..3i64 {
            let pt: Vec<F::Elem> = (0..n).map(|i| f.from_i64(2 + 3 * i as i64 + 7 * attempt)).collect();
            let (ea, eb) = (self.eval(la, &pt).ok()?, self.eval(lb, &pt).ok()?);
            if f.is_zero(&ea) || f.is_zero(&eb) {
                continue;
            }
            let ua: Vec<F::Elem> = ca.iter().map(|c| self.eval(c, &pt).unwrap()).collect();
            let ub: Vec<F::Elem> = cb.iter().map(|c| self.eval(c, &pt).unwrap()).collect();
            return Some(univariate_gcd_degree(f, ua, ub));
        }
        None
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b` in variable `v`.
    fn pseudo_rem(&self, a: &Poly<F>, b: &Poly<F>, v: usize) -> Poly<F> {
        let db = b.degree_in(v) as usize;
        let bc = self.coeffs_in(b, v);
        let lb = bc[db].clone();
        let mut r = self.coeffs_in(a, v);
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            let shift = k - db;
            for c in r.iter_mut() {
                *c = self.mul(c, &lb);
            }
            for (j, bj) in bc.iter().enumerate() {
                if !bj.is_zero() {
                    r[shift + j] = self.sub(&r[shift + j], &self.mul(&lr, bj));
                }
            }
            debug_assert!(r[k].is_zero());
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        self.from_coeffs_in(&r, v)
    }

    /// Euclid for polynomials in the single variable `v`.
    fn euclid(&self, a: &Poly<F>, b: &Poly<F>, v: usize) -> Poly<F> {
        let f = &self.field;
        let to_dense = |p: &Poly<F>| -> Vec<F::Elem> {
            let mut out = vec![f.zero(); p.degree_in(v) as usize + 1];
            for (m, c) in p.terms() {
                out[m.exps()[v] as usize] = c.clone();
            }
            out
        };
        let g = univariate_gcd(f, to_dense(a), to_dense(b));
        let n = self.nvars();
        self.from_terms(g.into_iter().enumerate().map(|(e, c)| {
            let mut exps = vec![0u32; n];
            exps[v] = e as u32;
            (exps, c)
        }))
    }
}

fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

fn dense_rem<F: Field>(f: &F, a: &mut Vec<F::Elem>, b: &[F::Elem]) {
    let db = b.len() - 1;
    let inv = f.inv(&b[db]).expect("trimmed divisor");
    while a.len() > db {
        let k = a.len() - 1;
        let q = f.mul(&a[k], &inv);
        if !f.is_zero(&q) {
            for (j, bj) in b.iter().enumerate() {
                a[k - db + j] = f.sub(&a[k - db + j], &f.mul(&q, bj));
            }
        }
        a.pop();
        trim(f, a);
    }
}

/// Monic gcd of dense univariate polynomials (constant term first).
pub(crate) fn univariate_gcd<F: Field>(f: &F, mut a: Vec<F::Elem>, mut b: Vec<F::Elem>) -> Vec<F::Elem> {
    trim(f, &mut a);
    trim(f, &mut b);
    while !b.is_empty() {
        dense_rem(f, &mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(l) = a.last() {
        let inv = f.inv(l).expect("nonzero");
        for c in a.iter_mut() {
            *c = f.mul(c, &inv);
        }
    }
    a
}

fn univariate_gcd_degree<F: Field>(f: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> u32 {
    (univariate_gcd(f, a, b).len().max(1) - 1) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{fp_with_omega, CycloField};

    fn abc(r: &PolyRing<CycloField>) -> [Poly<CycloField>; 3] {
        let (s3, s4, one) = (r.var(0), r.var(1), r.one());
        let a = r.mul(&r.mul(&r.sub(&s3, &s4), &s3), &s4);
        let b = r.neg(&r.mul(&r.sub(&s3, &one), &s3));
        let c = r.mul(&r.sub(&s4, &one), &s4);
        [a, b, c]
    }

    #[test]
    fn monomial_gcd() {
        let r = PolyRing::new(CycloField, &["s3", "s4"]);
        let (s3, s4) = (r.var(0), r.var(1));
        let p = r.mul(&r.pow(&s3, 2), &s4);
        let q = r.mul(&s3, &r.pow(&s4, 2));
        assert_eq!(r.gcd(&p, &q), r.mul(&s3, &s4));
    }

    #[test]
    fn gcd_of_coefficient_products() {
        let r = PolyRing::new(CycloField, &["s3", "s4"]);
        let [a, b, c] = abc(&r);
        let g = r.gcd(&r.mul(&a, &b), &r.mul(&a, &c));
        // b and c share no factor, so the gcd is a up to its leading coefficient
        assert_eq!(g, r.monic(&a));
        assert!(r.divides(&g, &r.mul(&a, &b)));
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let r = PolyRing::new(CycloField, &["s3", "s4"]);
        let [_, b, _] = abc(&r);
        assert_eq!(r.gcd(&b, &r.zero()), r.monic(&b));
    }

    #[test]
    fn three_variable_gcd_over_fp() {
        let fp = fp_with_omega(10009).unwrap();
        let r = PolyRing::new(fp, &["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let g = r.add(&r.mul(&x, &y), &r.add(&z, &r.one()));
        let p = r.mul(&g, &r.add(&r.pow(&x, 2), &r.mul(&y, &z)));
        let q = r.mul(&g, &r.sub(&r.pow(&z, 3), &x));
        assert_eq!(r.gcd(&p, &q), r.monic(&g));
        let l = r.lcm(&p, &q);
        assert_eq!(r.monic(&r.mul(&l, &r.gcd(&p, &q))), r.monic(&r.mul(&p, &q)));
    }
}
