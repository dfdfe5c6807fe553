//! Squarefree decomposition (Yun) for multivariate polynomials.

use super::{Poly, PolyError, PolyRing};
use crate::fields::Field;

/// `content * prod(f_i ^ m_i)` with monic, squarefree, pairwise coprime
/// factors sorted by multiplicity and then by term order.
#[derive(Clone, Debug, PartialEq)]
pub struct Squarefree<E> {
    pub content: E,
    pub factors: Vec<(super::SparsePoly<E>, u32)>,
}

impl<F: Field> PolyRing<F> {
    /// Requires characteristic zero or larger than every degree involved.
    pub fn squarefree(&self, a: &Poly<F>) -> Result<Squarefree<F::Elem>, PolyError> {
        if a.is_zero() {
            return Err(PolyError::Zero);
        }
        let content = self.leading_coeff(a);
        let mut factors: Vec<(Poly<F>, u32)> = Vec::new();
        self.squarefree_rec(&self.monic(a), 1, &mut factors);
        Ok(Squarefree {
            content,
            factors: self.merge_factors(factors),
        })
    }

    /// Collects the squarefree parts of the monic `a` (raised to `mult`).
    fn squarefree_rec(&self, a: &Poly<F>, mult: u32, out: &mut Vec<(Poly<F>, u32)>) {
        if a.is_constant() {
            return;
        }
        let Some(v) = (0..self.nvars()).find(|&v| a.contains_var(v)) else {
            return;
        };
        let (c, p) = self.content_and_primitive(a, v);
        self.squarefree_rec(&c, mult, out);
        for (f, m) in self.yun(&self.monic(&p), v) {
            out.push((f, m * mult));
        }
    }

    /// Yun's algorithm in variable `v` for `a` primitive in `v`.
    fn yun(&self, a: &Poly<F>, v: usize) -> Vec<(Poly<F>, u32)> {
        let mut out = Vec::new();
        let da = self.derivative(a, v);
        let g = self.gcd(a, &da);
        let mut b = self.div_exact(a, &g).expect("gcd divides");
        let mut c = self.div_exact(&da, &g).expect("gcd divides");
        let mut d = self.sub(&c, &self.derivative(&b, v));
        let mut i = 1;
        while !b.is_constant() {
            let ai = self.gcd(&b, &d);
            b = self.div_exact(&b, &ai).expect("gcd divides");
            c = self.div_exact(&d, &ai).expect("gcd divides");
            d = self.sub(&c, &self.derivative(&b, v));
            if !ai.is_constant() {
                out.push((self.monic(&ai), i));
            }
            i += 1;
        }
        out
    }

    /// Orders factors by multiplicity, then by term order.
    fn merge_factors(&self, fs: Vec<(Poly<F>, u32)>) -> Vec<(Poly<F>, u32)> {
        let mut by_mult: std::collections::BTreeMap<u32, Vec<Poly<F>>> = Default::default();
        for (f, m) in fs {
            by_mult.entry(m).or_default().push(f);
        }
        let mut out = Vec::new();
        for (m, mut fs) in by_mult {
            fs.sort_by(|a, b| a.terms.iter().rev().map(|t| t.0).cmp(b.terms.iter().rev().map(|t| t.0)));
            out.extend(fs.into_iter().map(|f| (f, m)));
        }
        out
    }

    /// Splits factors by repeated trial division with the given candidates
    /// (typically linear forms), adjusting multiplicities.
    pub fn refine_with_candidates(
        &self,
        sf: &Squarefree<F::Elem>,
        candidates: &[Poly<F>],
    ) -> Squarefree<F::Elem> {
        let mut out: Vec<(Poly<F>, u32)> = Vec::new();
        for (f, m) in &sf.factors {
            let mut rest = f.clone();
            for cand in candidates {
                let cand = self.monic(cand);
                if cand.is_constant() {
                    continue;
                }
                while !rest.is_constant() {
                    match self.div_exact(&rest, &cand) {
                        Ok(q) => {
                            out.push((cand.clone(), *m));
                            rest = q;
                        }
                        Err(_) => break,
                    }
                }
            }
            if !rest.is_constant() {
                out.push((self.monic(&rest), *m));
            }
        }
        // the same candidate may come out of factors of different
        // multiplicity; combine those
        let mut combined: Vec<(Poly<F>, u32)> = Vec::new();
        for (f, m) in out {
            match combined.iter_mut().find(|(g, _)| *g == f) {
                Some(e) => e.1 += m,
                None => combined.push((f, m)),
            }
        }
        combined.sort_by(|a, b| {
            b.0.terms
                .iter()
                .rev()
                .map(|t| t.0)
                .cmp(a.0.terms.iter().rev().map(|t| t.0))
                .then(a.1.cmp(&b.1))
        });
        Squarefree {
            content: sf.content.clone(),
            factors: combined,
        }
    }

    /// Multiplies a decomposition back out.
    pub fn expand(&self, sf: &Squarefree<F::Elem>) -> Poly<F> {
        sf.factors
            .iter()
            .fold(self.constant(sf.content.clone()), |acc, (f, m)| self.mul(&acc, &self.pow(f, *m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::CycloField;

    #[test]
    fn repeated_linear_factor() {
        let r = PolyRing::new(CycloField, &["s3", "s4"]);
        let (s3, s4) = (r.var(0), r.var(1));
        let p = r.mul(&r.pow(&r.sub(&s3, &r.one()), 3), &s4);
        let sf = r.squarefree(&p).unwrap();
        assert_eq!(sf.factors, vec![(s4.clone(), 1), (r.sub(&s3, &r.one()), 3)]);
        assert_eq!(r.expand(&sf), p);
    }

    #[test]
    fn paper_coefficients_split_into_linear_factors() {
        let r = PolyRing::new(CycloField, &["s3", "s4"]);
        let (s3, s4, one) = (r.var(0), r.var(1), r.one());
        let a = r.mul(&r.mul(&r.sub(&s3, &s4), &s3), &s4);
        let b = r.neg(&r.mul(&r.sub(&s3, &one), &s3));
        let c = r.mul(&r.sub(&s4, &one), &s4);
        let p = r.mul(&r.mul(&a, &b), &c);
        let sf = r.squarefree(&p).unwrap();
        assert_eq!(r.expand(&sf), p);
        let cands = vec![
            r.sub(&s3, &s4),
            s3.clone(),
            s4.clone(),
            r.sub(&s3, &one),
            r.sub(&s4, &one),
        ];
        let refined = r.refine_with_candidates(&sf, &cands);
        let mut got: Vec<(String, u32)> = refined
            .factors
            .iter()
            .map(|(f, m)| (r.display(f).to_string(), *m))
            .collect();
        got.sort();
        let mut want = vec![
            ("s3 - s4".to_string(), 1),
            ("s3".to_string(), 2),
            ("s4".to_string(), 2),
            ("s3 - 1".to_string(), 1),
            ("s4 - 1".to_string(), 1),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(r.expand(&refined), p);
    }

    #[test]
    fn constant_has_no_factors() {
        let r = PolyRing::new(CycloField, &["s3"]);
        let sf = r.squarefree(&r.from_i64(6)).unwrap();
        assert!(sf.factors.is_empty());
        assert_eq!(sf.content, CycloField.from_i64(6));
        assert_eq!(r.squarefree(&r.zero()), Err(PolyError::Zero));
    }
}
