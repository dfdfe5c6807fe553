//! Dense univariate polynomials over F_p, used for root finding.

use super::{Field, PrimeField};

/// Dense polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= field.p();
        }
        let mut p = FpPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: PrimeField) -> Self {
        FpPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn x(field: PrimeField) -> Self {
        FpPoly::new(field, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let f = &self.field;
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&0),
                    o.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        FpPoly::new(self.field, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let f = &self.field;
        let c = (0..n)
            .map(|i| {
                f.sub(
                    self.coeffs.get(i).unwrap_or(&0),
                    o.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        FpPoly::new(self.field, c)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        let f = &self.field;
        FpPoly::new(self.field, self.coeffs.iter().map(|c| f.mul(c, &s)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.field);
        }
        let p = self.field.p() as u128;
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + *a as u128 * *b as u128) % p;
            }
        }
        FpPoly::new(self.field, acc.into_iter().map(|v| v as u64).collect())
    }

    pub fn derivative(&self) -> FpPoly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.elem(i as i64)))
            .collect();
        FpPoly::new(self.field, c)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let f = &self.field;
        let lead_inv = f.inv(&d.coeffs[dd]).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(self.field), self.clone());
        }
        let mut q = vec![0; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &lead_inv);
            q[k] = c;
            if c != 0 {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(&r[k + j], &f.mul(&c, dj));
                }
            }
        }
        r.truncate(dd);
        (FpPoly::new(self.field, q), FpPoly::new(self.field, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l).expect("nonzero")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn powmod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::new(self.field, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Number of distinct roots over the algebraic closure (p > degree).
    pub fn distinct_root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => d - self.gcd(&self.derivative()).degree().unwrap_or(0),
        }
    }

    /// The distinct roots in F_p, sorted.
    pub fn roots(&self) -> Vec<u64> {
        let d = match self.degree() {
            None => panic!("roots of the zero polynomial"),
            Some(0) => return Vec::new(),
            Some(d) => d,
        };
        let f = self.monic();
        let split = if d == 1 {
            f
        } else {
            let x = FpPoly::x(self.field);
            let xp = x.powmod(self.field.p(), &f);
            f.gcd(&xp.sub(&x))
        };
        let mut out = Vec::new();
        split_linear(&split, &mut out);
        out.sort_unstable();
        out
    }
}

/// Splits a monic product of distinct linear factors.
fn split_linear(g: &FpPoly, out: &mut Vec<u64>) {
    let field = g.field;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(&g.coeffs[0])),
        Some(_) => {
            let p = field.p();
            for delta in 0..p {
                let shift = FpPoly::new(field, vec![delta, 1]);
                let h = shift.powmod((p - 1) / 2, g).sub(&FpPoly::new(field, vec![1]));
                let k = g.gcd(&h);
                let kd = k.degree().unwrap_or(0);
                if kd > 0 && kd < g.degree().unwrap() {
                    split_linear(&k, out);
                    split_linear(&g.divrem(&k).0, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting failed for every shift");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::fp_with_omega;

    #[test]
    fn roots_match_brute_force() {
        let f = fp_with_omega(61).unwrap();
        let polys: Vec<Vec<u64>> = vec![
            vec![1, 0, 0, 1],
            vec![60, 0, 0, 0, 0, 0, 1],
            vec![5, 7, 0, 11, 1],
            vec![0, 0, 3],
            vec![2, 1],
        ];
        for c in polys {
            let p = FpPoly::new(f, c);
            let brute: Vec<u64> = (0..61).filter(|&x| p.eval(x) == 0).collect();
            assert_eq!(p.roots(), brute);
        }
    }

    #[test]
    fn gcd_and_division() {
        let f = fp_with_omega(13).unwrap();
        let a = FpPoly::new(f, vec![12, 0, 1]); // x^2 - 1
        let b = FpPoly::new(f, vec![1, 1]); // x + 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, FpPoly::new(f, vec![12, 1]));
        assert!(r.is_zero());
        assert_eq!(a.distinct_root_count(), 2);
        assert_eq!(a.mul(&b).distinct_root_count(), 2);
    }
}
